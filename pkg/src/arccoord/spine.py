"""
Spinal arc systems and widths (the map W) and its numerical inverse.

Flips are computed geometrically: both hexagons next to an arc are laid out
in the upper half-plane, glued along it, and the new arc length is the
distance between the two boundary geodesics it must join.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from . import hexagon
from .errors import (FlipLimitExceeded, InvalidTarget, NoConvergence,
                     NonFlippable, NumericalClosureFailure)
from .ribbon import (RibbonStructure, classify_complement, find_isomorphism,
                     is_maximal)
from .surface import MaximalCoordinates

log = logging.getLogger(__name__)

ZERO_WIDTH_TOL = 1e-10
CLOSURE_TOL = 1e-8


# -- half-plane geometry -------------------------------------------------
# A frame is an SL(2, R) matrix g: base point g(i), unit tangent g_*(i * up).
# Moving forward by L multiplies on the right by diag(e^{L/2}, e^{-L/2});
# a left turn by theta multiplies by the rotation fixing i.

_J = np.array([[1.0, 0.0], [0.0, -1.0]])


def _advance(L):
    return np.array([[np.exp(L / 2), 0.0], [0.0, np.exp(-L / 2)]])


def _turn(theta):
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, s], [-s, c]])


_LEFT = _turn(np.pi / 2)
_BACK = _turn(np.pi)


def geodesic_matrix(frame):
    """Traceless involution-like matrix g J g^{-1} attached to the frame's geodesic."""
    inv = np.array([[frame[1, 1], -frame[0, 1]], [-frame[1, 0], frame[0, 0]]])
    return frame @ _J @ inv


def geodesic_endpoints(frame):
    """Ideal endpoints g(0), g(inf) of the geodesic through the frame."""
    (a, b), (c, d) = frame
    start = b / d if d != 0 else np.inf
    end = a / c if c != 0 else np.inf
    return start, end


def geodesic_distance(frame1, frame2) -> float:
    """Distance between two disjoint geodesics: cosh D = |tr(X Y)| / 2."""
    x = abs(0.5 * np.trace(geodesic_matrix(frame1) @ geodesic_matrix(frame2)))
    if x < 1.0 - 1e-9:
        raise NumericalClosureFailure("geodesics intersect (|tr/2| < 1)")
    return hexagon.arccosh_guarded(max(x, 1.0))


@dataclass(frozen=True)
class RealizedHexagon:
    frames: tuple[np.ndarray, ...]  # frame at the start of each side
    lengths: tuple[float, ...]      # (a_i, d_k, a_j, d_i, a_k, d_j)
    closure_error: float


def realize_hexagon(a_i, a_j, a_k, start=None, closure_tol=CLOSURE_TOL) -> RealizedHexagon:
    """Lay out a right-angled hexagon counter-clockwise from ``start``.

    Side m starts at frames[m] and runs along its geodesic; boundary side
    d_x is the one opposite arc x.
    """
    d_k = hexagon.hexagon_boundary_segment(a_k, a_i, a_j)
    d_i = hexagon.hexagon_boundary_segment(a_i, a_j, a_k)
    d_j = hexagon.hexagon_boundary_segment(a_j, a_k, a_i)
    lengths = (float(a_i), d_k, float(a_j), d_i, float(a_k), d_j)
    g = np.eye(2) if start is None else np.array(start, dtype=float)
    g0 = g
    frames = []
    for L in lengths:
        frames.append(g)
        g = g @ _advance(L) @ _LEFT
    # closure up to the sign ambiguity of PSL(2, R); roundoff grows with the
    # largest entry met along the walk, so measure the error against it
    scale = max(1.0, max(float(np.max(np.abs(f))) for f in frames))
    err = min(np.max(np.abs(g - g0)), np.max(np.abs(g + g0))) / scale
    if err > closure_tol:
        raise NumericalClosureFailure(f"hexagon does not close (error {err:.2e})")
    return RealizedHexagon(tuple(frames), lengths, float(err))


# -- flips ---------------------------------------------------------------


@dataclass(frozen=True)
class FlipMove:
    arc: int
    faces: tuple[tuple[int, ...], tuple[int, ...]]
    old_length: float
    new_length: float
    width_before: float


def flipped_ribbon(r: RibbonStructure, arc: int) -> RibbonStructure:
    """Combinatorial flip of ``arc`` inside the octagon formed by its two hexagons.

    The new arc reuses the index; its dart ``2*arc`` ends where the gap after
    ``sigma0(2*arc)`` starts. Flipping twice turns the diagonal by half a
    turn, so it restores the arc system with ``arc`` reversed.
    """
    s0 = [int(v) for v in r.sigma0]
    x, xb = 2 * arc, 2 * arc + 1
    face_x = (x, s0[x], s0[s0[x]])
    if xb in face_x:
        raise NonFlippable(f"arc {arc} borders the same hexagon on both sides")
    if len(r.faces()) * 3 != r.n_darts or s0[s0[s0[x]]] != x or s0[s0[s0[xb]]] != xb:
        raise NonFlippable("flips need trivalent hexagons on both sides")
    b, c = s0[x], s0[s0[x]]
    e, f = s0[xb], s0[s0[xb]]
    new = list(s0)
    new[c], new[e], new[x] = e, x, c
    new[f], new[b], new[xb] = b, xb, f
    inv = [0] * len(new)
    for d, t in enumerate(new):
        inv[t] = d
    sigma_inf = [inv[d ^ 1] for d in range(len(new))]
    circle = [int(v) for v in r.circle_of_dart]
    circle[x] = int(r.circle_of_dart[b])
    circle[xb] = int(r.circle_of_dart[e])
    return RibbonStructure(r.signature, sigma_inf, circle)


def flip_length(m: MaximalCoordinates, arc: int) -> float:
    """Length of the arc replacing ``arc`` after a flip."""
    r = m.ribbon
    s0 = r.sigma0
    a = m.a
    x, xb = 2 * arc, 2 * arc + 1
    b, c = int(s0[x]), int(s0[s0[x]])
    e, f = int(s0[xb]), int(s0[s0[xb]])
    hx = realize_hexagon(a[arc], a[b // 2], a[c // 2])
    # the second hexagon starts at the far end of the shared arc, pointing back
    start = hx.frames[0] @ _advance(a[arc]) @ _BACK
    hxb = realize_hexagon(a[arc], a[e // 2], a[f // 2], start=start)
    # side 3 of each walk is the boundary segment opposite the shared arc
    return geodesic_distance(hx.frames[3], hxb.frames[3])


def flip(m: MaximalCoordinates, arc: int, check=True) -> MaximalCoordinates:
    """Replace ``arc`` by the other diagonal of its octagon; same surface."""
    r2 = flipped_ribbon(m.ribbon, arc)
    a2 = np.array(m.a)
    a2[arc] = flip_length(m, arc)
    out = MaximalCoordinates(r2, a2)
    if check:
        p0, p1 = m.boundary_lengths, out.boundary_lengths
        err = np.max(np.abs(p1 - p0) / np.maximum(1.0, p0))
        if err > 1e-8:
            raise NumericalClosureFailure(f"flip changed boundary lengths by {err:.2e}")
    return out


# -- the map W -----------------------------------------------------------


@dataclass(frozen=True)
class WeightedArcSystem:
    ribbon: RibbonStructure
    weights: np.ndarray
    total_boundary: float
    maximal: MaximalCoordinates | None = None   # system the spine was read from
    support: tuple[int, ...] = ()               # arcs of ``maximal`` kept
    zero_arcs: tuple[int, ...] = ()             # arcs of ``maximal`` with |w| <= tol
    flips: tuple[FlipMove, ...] = field(default=())

    def to_json(self) -> dict:
        out = self.ribbon.to_json()
        out["weights"] = [float(w) for w in self.weights]
        out["total_boundary"] = self.total_boundary
        return out


def find_spine(m: MaximalCoordinates, max_flips=None,
               zero_tol=ZERO_WIDTH_TOL) -> WeightedArcSystem:
    """Flip negative-width arcs (most negative first) until all widths >= 0."""
    N = m.ribbon.n_arcs
    cap = 10 * N * N if max_flips is None else max_flips
    moves = []
    while True:
        w = m.arc_widths
        order = [i for i in np.argsort(w, kind="stable") if w[i] < -zero_tol]
        if not order:
            break
        if len(moves) >= cap:
            raise FlipLimitExceeded(f"no spinal system after {cap} flips")
        for arc in order:
            try:
                new = flip(m, int(arc))
            except NonFlippable:
                continue
            moves.append(FlipMove(int(arc), (), float(m.a[arc]),
                                  float(new.a[arc]), float(w[arc])))
            log.debug("flip arc %d (w=%.3e)", arc, w[arc])
            m = new
            break
        else:
            raise NonFlippable("negative widths remain but no arc can be flipped")
    w = m.arc_widths
    support = [i for i in range(N) if w[i] > zero_tol]
    zeros = tuple(i for i in range(N) if abs(w[i]) <= zero_tol)
    sub, _ = m.ribbon.restrict(support)
    return WeightedArcSystem(sub, w[support].copy(), float(m.boundary_lengths.sum()),
                             maximal=m, support=tuple(support), zero_arcs=zeros,
                             flips=tuple(moves))


def _initial_lengths(completion: RibbonStructure, target: np.ndarray) -> np.ndarray:
    """a = T(2 w) on positive arcs; zero-width arcs from s_i^2 = s_j^2 + s_k^2."""
    a = np.empty(len(target))
    pos = target > 0
    a[pos] = hexagon.t_length(2.0 * target[pos])
    if pos.all():
        return a
    fill = float(np.median(a[pos])) if pos.any() else 1.0
    a[~pos] = fill
    s0 = completion.sigma0
    for _ in range(3):
        for arc in np.flatnonzero(~pos):
            s2 = []
            for x in (2 * arc, 2 * arc + 1):
                j, k = s0[x] // 2, s0[s0[x]] // 2
                s2.append(np.cosh(a[j] / 2) ** 2 + np.cosh(a[k] / 2) ** 2)
            a[arc] = 2.0 * np.arccosh(np.sqrt(np.mean(s2)))
    return a


def solve_widths(target, completion: RibbonStructure | None = None, tol=1e-9,
                 fd_step=1e-6, max_iter=100, initial=None) -> MaximalCoordinates:
    """Invert W: a-lengths on ``completion`` whose widths equal ``target``.

    ``target`` is either a WeightedArcSystem whose ribbon is a restriction of
    ``completion`` (arcs matched through ``target.support``, or by index if the
    ribbons coincide) or a per-arc width vector on ``completion`` with zeros
    off the support. Damped Newton in log a-lengths with a central-difference
    Jacobian.
    """
    if isinstance(target, WeightedArcSystem):
        if completion is None:
            completion = target.ribbon
        w_t = np.zeros(completion.n_arcs)
        support = target.support or tuple(range(target.ribbon.n_arcs))
        w_t[list(support)] = target.weights
    else:
        w_t = np.asarray(target, dtype=float)
    if completion is None or not is_maximal(completion):
        raise InvalidTarget("completion must be a maximal arc system")
    if w_t.shape != (completion.n_arcs,) or np.any(w_t < 0) or not np.all(np.isfinite(w_t)):
        raise InvalidTarget("widths must be finite and >= 0, one per arc")
    support = np.flatnonzero(w_t > 0)
    sub, _ = completion.restrict(support)
    if not classify_complement(sub).proper:
        raise InvalidTarget("support of the target widths is not a proper arc system")

    def residual(u):
        return MaximalCoordinates(completion, np.exp(u)).arc_widths - w_t

    u = np.log(_initial_lengths(completion, w_t) if initial is None
               else np.asarray(initial, dtype=float))
    F = residual(u)
    norm = np.max(np.abs(F))
    for it in range(max_iter):
        if norm <= tol:
            break
        J = np.empty((len(u), len(u)))
        for j in range(len(u)):
            e = np.zeros_like(u)
            e[j] = fd_step
            J[:, j] = (residual(u + e) - residual(u - e)) / (2 * fd_step)
        try:
            step = np.linalg.solve(J, -F)
        except np.linalg.LinAlgError as exc:
            raise NoConvergence("singular width Jacobian", np.exp(u), norm) from exc
        t = 1.0
        for _ in range(31):
            u_new = u + t * step
            try:
                F_new = residual(u_new)
                new_norm = np.max(np.abs(F_new))
            except (ValueError, FloatingPointError):
                new_norm = np.inf
            if np.isfinite(new_norm) and new_norm < norm:
                break
            t *= 0.5
        else:
            raise NoConvergence(f"line search failed at iteration {it}", np.exp(u), norm)
        u, F, norm = u_new, F_new, new_norm
        log.debug("newton %d: residual %.3e (step %.3g)", it, norm, t)
    if norm > tol:
        raise NoConvergence(f"residual {norm:.3e} after {max_iter} iterations",
                            np.exp(u), norm)
    return MaximalCoordinates(completion, np.exp(u))


def spine_isomorphic(s1: WeightedArcSystem, s2: WeightedArcSystem, tol=1e-6) -> bool:
    return find_isomorphism(s1.ribbon, s2.ribbon, s1.weights, s2.weights, tol) is not None
