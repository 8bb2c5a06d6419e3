"""
Weil-Petersson Poisson structure in arc coordinates and its two limits.

Bivector matrices ``P`` are stored so that the bivector equals
``sum_{i<j} P[i, j] d/dx_i ^ d/dx_j``; equivalently ``P[i, j]`` is the
pairing of ``dx_i`` and ``dx_j``. Pushing forward along a coordinate change
with Jacobian ``J`` gives ``J P J^T``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotTrivalent, SingularJacobian
from .ribbon import RibbonStructure
from .surface import MaximalCoordinates, boundary_layout, t_lengths
from . import hexagon


@dataclass(frozen=True)
class Bivector:
    basis: tuple[int, ...]
    matrix: np.ndarray
    coordinates: str = "a"

    def antisymmetry_error(self) -> float:
        return float(np.max(np.abs(self.matrix + self.matrix.T), initial=0.0))


# Kept as distinct names for readability at call sites.
PoissonBivector = Bivector
KontsevichBivector = Bivector
PennerForm = Bivector


def sinh_ratio(p, d):
    """sinh(p/2 - d) / sinh(p/2) for 0 <= d <= p, overflow-safe."""
    p = np.asarray(p, dtype=float)
    d = np.asarray(d, dtype=float)
    return (np.exp(-d) - np.exp(d - p)) / (1.0 - np.exp(-p))


def _poisson_matrix(m: MaximalCoordinates, scale=None) -> np.ndarray:
    """P[i, j] = 1/2 sum over endpoint pairs (y on arc i, y' on arc j, same
    circle, y != y') of sinh(p/2 - d(y, y')) / sinh(p/2).

    The ordered pair (y', y) contributes the negated term, which is how the
    wedge antisymmetrises the 1/4 double sum into 1/2 of one ordering.
    ``scale`` divides row/column i by scale[i] (log-coordinate variant).
    """
    layout = boundary_layout(m)
    N = m.ribbon.n_arcs
    P = np.zeros((N, N))
    for circ in layout.circles:
        darts = np.array(circ.darts)
        if len(darts) < 2:
            continue
        pos = circ.positions
        d = pos[None, :] - pos[:, None]
        d = np.where(d < 0, d + circ.circumference, d)
        c = sinh_ratio(circ.circumference, d)
        np.fill_diagonal(c, 0.0)
        arcs = darts // 2
        np.add.at(P, (arcs[:, None], arcs[None, :]), 0.5 * c)
    P = 0.5 * (P - P.T)  # exact antisymmetry; entries already antisymmetric
    if scale is not None:
        P = P / np.outer(scale, scale)
    return P


def poisson_bivector(m: MaximalCoordinates) -> Bivector:
    return Bivector(tuple(range(m.ribbon.n_arcs)), _poisson_matrix(m), "a")


def _central_jacobian(f, x, steps):
    """Jacobian of f at x by central differences, column j with step steps[j]."""
    x = np.asarray(x, dtype=float)
    cols = []
    for j in range(len(x)):
        e = np.zeros_like(x)
        e[j] = steps[j]
        cols.append((np.asarray(f(x + e)) - np.asarray(f(x - e))) / (2 * steps[j]))
    return np.array(cols).T


def boundary_gradient(m: MaximalCoordinates, fd_step=1e-6) -> np.ndarray:
    """d p_k / d a_i by central differences; rows are circles."""
    steps = fd_step * np.maximum(1.0, m.a)
    return _central_jacobian(lambda a: m.with_lengths(a).boundary_lengths, m.a, steps)


def casimir_residual(m: MaximalCoordinates, k: int, fd_step=1e-6) -> float:
    """|| eta(dp_k, -) ||_inf with a finite-difference gradient of p_k."""
    grad = boundary_gradient(m, fd_step)[k]
    P = _poisson_matrix(m)
    return float(np.max(np.abs(grad @ P)))


# -- combinatorial bivectors ---------------------------------------------


def cyclic_triple_matrix(triples, n_arcs: int, coeff: float) -> np.ndarray:
    """sum over triples (r1, r2, r3) of coeff * (e12 + e23 + e31), antisymmetrised."""
    M = np.zeros((n_arcs, n_arcs))
    for r1, r2, r3 in triples:
        for i, j in ((r1, r2), (r2, r3), (r3, r1)):
            M[i, j] += coeff
            M[j, i] -= coeff
    return M


def vertex_triples(ribbon: RibbonStructure) -> list[tuple[int, int, int]]:
    """Cyclically ordered arc triples of the trivalent vertices (sigma0-orbits)."""
    triples = []
    for face in ribbon.faces():
        if len(face) != 3:
            raise NotTrivalent(f"vertex {face} has valence {len(face)}")
        triples.append(tuple(d // 2 for d in face))
    return triples


def kontsevich_bivector(ribbon: RibbonStructure) -> Bivector:
    """1/2 sum over vertices of the cyclic wedge of incident edges."""
    M = cyclic_triple_matrix(vertex_triples(ribbon), ribbon.n_arcs, 0.5)
    return Bivector(tuple(range(ribbon.n_arcs)), M, "w~")


def penner_form(decorated) -> Bivector:
    """-1/2 sum over ideal triangles of the cyclic wedge of their sides."""
    r = decorated.ribbon
    M = cyclic_triple_matrix(vertex_triples(r), r.n_arcs, -0.5)
    return Bivector(tuple(range(r.n_arcs)), M, "a~")


# -- coordinate changes --------------------------------------------------


def _log_bivector(m: MaximalCoordinates) -> np.ndarray:
    """eta in u = log a coordinates: P_u[i, j] = P[i, j] / (a_i a_j)."""
    return _poisson_matrix(m, scale=m.a)


def normalized_widths_map(ribbon):
    """u = log a  ->  w~ = w / (L/2), L the total boundary length."""
    def f(u):
        m = MaximalCoordinates(ribbon, np.exp(u))
        w = m.arc_widths
        return w / (0.5 * m.boundary_lengths.sum())
    return f


def normalized_bivector(m: MaximalCoordinates, fd_step=1e-5) -> Bivector:
    """(1 + L/2)^2 eta pushed forward to the normalized widths w~.

    Differentiates in log a-lengths so that surfaces with very short arcs
    (large boundary) stay well conditioned.
    """
    u = np.log(m.a)
    J = _central_jacobian(normalized_widths_map(m.ribbon), u,
                          np.full(len(u), fd_step))
    if not np.all(np.isfinite(J)):
        raise SingularJacobian("non-finite width Jacobian")
    L = float(m.boundary_lengths.sum())
    M = (1.0 + L / 2) ** 2 * (J @ _log_bivector(m) @ J.T)
    M = 0.5 * (M - M.T)
    return Bivector(tuple(range(m.ribbon.n_arcs)), M, "w~")


def to_t_coordinates(m: MaximalCoordinates, P: np.ndarray) -> np.ndarray:
    D = np.asarray(hexagon.t_length_derivative(m.a), dtype=float)
    return D[:, None] * P * D[None, :]


def from_t_coordinates(m: MaximalCoordinates, Pt: np.ndarray) -> np.ndarray:
    D = np.asarray(hexagon.t_length_derivative(m.a), dtype=float)
    return Pt / D[:, None] / D[None, :]


def t_bivector(m: MaximalCoordinates) -> Bivector:
    return Bivector(tuple(range(m.ribbon.n_arcs)),
                    to_t_coordinates(m, _poisson_matrix(m)), "t")


def limit_deviation(m: MaximalCoordinates, ribbon=None) -> float:
    """|| eta~ - H~ ||_inf with H~ from ``ribbon`` (default: m's own system)."""
    H = kontsevich_bivector(ribbon or m.ribbon).matrix
    return float(np.max(np.abs(normalized_bivector(m).matrix - H)))


__all__ = [
    "Bivector", "PoissonBivector", "KontsevichBivector", "PennerForm",
    "poisson_bivector", "casimir_residual", "boundary_gradient",
    "kontsevich_bivector", "penner_form", "cyclic_triple_matrix",
    "normalized_bivector", "to_t_coordinates", "from_t_coordinates",
    "t_bivector", "limit_deviation", "sinh_ratio", "t_lengths",
]
