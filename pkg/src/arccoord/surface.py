"""
Hyperbolic structures in a-length coordinates on a maximal arc system.

For a dart ``x`` with region ``(x, sigma0 x, sigma0^2 x)`` the boundary
segment that starts at the endpoint of ``x`` (the gap after ``x``) lies in
that hexagon between the arcs of ``x`` and ``sigma0 x``, opposite the arc of
``sigma0^2 x``. Oriented widths follow from the three gaps of each hexagon.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import hexagon
from .errors import (BoundaryTooLong, ConventionMismatch, DifferentCircles,
                     NonPositiveLength)
from .ribbon import RibbonStructure, is_maximal

CONVENTION_TOL = 1e-8


class MaximalCoordinates:
    """A point of Teichmüller space given by a-lengths on a maximal system."""

    def __init__(self, ribbon: RibbonStructure, a):
        a = np.array(a, dtype=float)
        if not is_maximal(ribbon):
            raise ValueError("ribbon structure is not a maximal arc system")
        if a.shape != (ribbon.n_arcs,):
            raise ValueError(f"expected {ribbon.n_arcs} a-lengths, got shape {a.shape}")
        if not np.all(np.isfinite(a)) or np.any(a <= 0):
            raise NonPositiveLength("a-lengths must be finite and > 0")
        a.setflags(write=False)
        self.ribbon = ribbon
        self.a = a

    def __repr__(self):
        return f"MaximalCoordinates({self.ribbon!r}, a={self.a.tolist()})"

    def with_lengths(self, a) -> "MaximalCoordinates":
        return MaximalCoordinates(self.ribbon, a)

    @cached_property
    def _dart_arcs(self):
        r = self.ribbon
        s0 = r.sigma0
        x = np.arange(r.n_darts)
        return x // 2, s0[x] // 2, s0[s0[x]] // 2

    @property
    def s(self):
        return np.cosh(self.a / 2)

    @cached_property
    def gaps(self) -> np.ndarray:
        """Length of the boundary segment starting at each dart's endpoint."""
        own, nxt, opp = self._dart_arcs
        a = self.a
        return hexagon.hexagon_boundary_segment(a[opp], a[own], a[nxt])

    @cached_property
    def dart_widths_from_segments(self) -> np.ndarray:
        g = self.gaps
        s0, s0i = self.ribbon.sigma0, self.ribbon.sigma0_inv
        return hexagon.oriented_width_from_segments(g, g[s0i], g[s0])

    @cached_property
    def dart_widths(self) -> np.ndarray:
        own, nxt, opp = self._dart_arcs
        a = self.a
        return hexagon.oriented_width_direct(a[own], a[nxt], a[opp])

    def check_convention(self, tol=CONVENTION_TOL):
        w1, w2 = self.dart_widths, self.dart_widths_from_segments
        err = np.abs(w1 - w2) / np.maximum(1.0, np.abs(w1))
        if err.size and err.max() > tol:
            raise ConventionMismatch(
                f"direct and segment widths disagree by {err.max():.3e}")

    @cached_property
    def arc_widths(self) -> np.ndarray:
        w = self.dart_widths
        return w[0::2] + w[1::2]

    @cached_property
    def boundary_lengths(self) -> np.ndarray:
        p = np.zeros(self.ribbon.signature.n_boundary)
        np.add.at(p, self.ribbon.circle_of_dart, self.gaps)
        return p


# -- boundary layout ------------------------------------------------------


@dataclass(frozen=True)
class CircleLayout:
    k: int
    darts: tuple[int, ...]      # positive boundary order
    gaps: tuple[float, ...]     # gaps[i]: from darts[i] to darts[i+1]
    circumference: float

    @property
    def positions(self) -> np.ndarray:
        return np.concatenate([[0.0], np.cumsum(self.gaps)[:-1]])


@dataclass(frozen=True)
class BoundaryLayout:
    circles: tuple[CircleLayout, ...]
    dart_circle: tuple[int, ...]
    dart_position: tuple[float, ...]

    @property
    def circumferences(self) -> np.ndarray:
        return np.array([c.circumference for c in self.circles])

    def circle(self, k) -> CircleLayout:
        for c in self.circles:
            if c.k == k:
                return c
        raise KeyError(k)


def boundary_layout(m: MaximalCoordinates) -> BoundaryLayout:
    m.check_convention()
    gaps = m.gaps
    n_darts = m.ribbon.n_darts
    dart_circle = [0] * n_darts
    dart_pos = [0.0] * n_darts
    circles = []
    for cyc in m.ribbon.boundary_cycles():
        k = int(m.ribbon.circle_of_dart[cyc[0]])
        g = tuple(float(gaps[d]) for d in cyc)
        pos = 0.0
        for d, gd in zip(cyc, g):
            dart_circle[d] = k
            dart_pos[d] = pos
            pos += gd
        circles.append(CircleLayout(k, cyc, g, float(sum(g))))
    return BoundaryLayout(tuple(circles), tuple(dart_circle), tuple(dart_pos))


def boundary_distance(layout: BoundaryLayout, dart_i: int, dart_j: int) -> float:
    """Length from the endpoint of dart_i to that of dart_j, positive direction."""
    k = layout.dart_circle[dart_i]
    if layout.dart_circle[dart_j] != k:
        raise DifferentCircles(f"darts {dart_i} and {dart_j} end on different circles")
    p = layout.circle(k).circumference
    d = layout.dart_position[dart_j] - layout.dart_position[dart_i]
    return d + p if d < 0 else d


@dataclass(frozen=True)
class Widths:
    dart: np.ndarray   # w(->alpha) for dart 2k, 2k+1
    arc: np.ndarray    # w(alpha)

    @property
    def forward(self):
        return self.dart[0::2]

    @property
    def backward(self):
        return self.dart[1::2]


def all_widths(m: MaximalCoordinates) -> Widths:
    m.check_convention()
    return Widths(m.dart_widths.copy(), m.arc_widths.copy())


def t_lengths(m: MaximalCoordinates) -> np.ndarray:
    return np.asarray(hexagon.t_length(m.a), dtype=float).reshape(-1)


def from_t_lengths(ribbon: RibbonStructure, t) -> MaximalCoordinates:
    return MaximalCoordinates(ribbon, np.asarray(hexagon.t_length(np.asarray(t, float)),
                                                 dtype=float).reshape(-1))


def from_s_lengths(ribbon: RibbonStructure, s) -> MaximalCoordinates:
    return MaximalCoordinates(ribbon, 2.0 * np.arccosh(np.asarray(s, dtype=float)))


# -- decorated limit ------------------------------------------------------


@dataclass(frozen=True)
class DecoratedStructure:
    ribbon: RibbonStructure
    lam: np.ndarray
    p_weights: np.ndarray

    def __post_init__(self):
        if np.any(np.asarray(self.lam) <= 0):
            raise NonPositiveLength("lambda-lengths must be > 0")
        if abs(float(np.sum(self.p_weights)) - 1.0) > 1e-12:
            raise ValueError("decoration weights must sum to 1")


def decoration_angle(total_boundary: float) -> float:
    """theta in [0, pi/2] with sin(theta) = total boundary length."""
    if total_boundary > 1.0:
        raise BoundaryTooLong(f"total boundary length {total_boundary} exceeds 1")
    return float(np.arcsin(total_boundary))


def lambda_lengths(m: MaximalCoordinates) -> DecoratedStructure:
    """lambda = tan(theta/2) (s + sqrt(s^2 - 1)) with sin(theta) = sum of p_k.

    ``s + sqrt(s^2 - 1)`` is evaluated as ``exp(a/2)``.
    """
    p = m.boundary_lengths
    total = float(p.sum())
    theta = decoration_angle(total)
    lam = np.tan(theta / 2) * np.exp(m.a / 2)
    return DecoratedStructure(m.ribbon, lam, p / total)


@dataclass(frozen=True)
class SimplicialCoordinates:
    dart: np.ndarray
    arc: np.ndarray


def simplicial_coordinates(d: DecoratedStructure) -> SimplicialCoordinates:
    """Simplicial coordinate X(->alpha) = (l_i^2 + l_j^2 - l_alpha^2) / (l_i l_j l_alpha)."""
    r = d.ribbon
    lam = np.asarray(d.lam, dtype=float)
    s0 = r.sigma0
    x = np.arange(r.n_darts)
    la, li, lj = lam[x // 2], lam[s0[x] // 2], lam[s0[s0[x]] // 2]
    X = (li * li + lj * lj - la * la) / (li * lj * la)
    return SimplicialCoordinates(X, X[0::2] + X[1::2])


def normalized_widths(m: MaximalCoordinates) -> np.ndarray:
    """Per-arc 2 w(alpha) / sin(theta), the decorated-limit companion of X."""
    total = float(m.boundary_lengths.sum())
    theta = decoration_angle(total)
    return 2.0 * m.arc_widths / np.sin(theta)
