"""
Fixed projective widths swept over total boundary length.

For projective weights ``w~`` (summing to 1) and a total boundary length
``p`` the surface is ``W^{-1}(w~ * p / 2)``. Small ``p`` approaches the
decorated cusped surface, large ``p`` the flat Jenkins-Strebel picture; the
diagnostics measure both approaches.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import hexagon, poisson, spine, surface
from .errors import ArcCoordError
from .ribbon import RibbonStructure, is_maximal

log = logging.getLogger(__name__)


@dataclass
class ScaleRecord:
    p: float
    a: np.ndarray | None = None
    t: np.ndarray | None = None
    dart_widths: np.ndarray | None = None
    widths: np.ndarray | None = None
    ratio_error: float = float("nan")        # max |2 w(->a) / t_a - 1|
    eta_deviation: float | None = None       # ||eta~ - H~||_inf
    decorated_gap: float | None = None       # max rel |2w/sin(theta) - X|
    lam: np.ndarray | None = None
    simplicial: np.ndarray | None = None
    error: str | None = None

    @property
    def ok(self):
        return self.error is None


@dataclass
class FamilyScan:
    ribbon: RibbonStructure
    weights: np.ndarray
    records: list[ScaleRecord] = field(default_factory=list)

    def column(self, name):
        return np.array([getattr(r, name) if r.ok and getattr(r, name) is not None
                         else np.nan for r in self.records], dtype=float)


def ratio_diagnostic(m: surface.MaximalCoordinates) -> float:
    t = surface.t_lengths(m)
    w = m.dart_widths
    return float(np.max(np.abs(2.0 * w / t[np.arange(len(w)) // 2] - 1.0)))


def decorated_gap(m: surface.MaximalCoordinates) -> tuple[float, np.ndarray, np.ndarray]:
    d = surface.lambda_lengths(m)
    X = surface.simplicial_coordinates(d).arc
    nw = surface.normalized_widths(m)
    return float(np.max(np.abs(nw - X) / np.abs(X))), d.lam, X


def _record(ribbon, weights, p, tol, initial, with_eta):
    rec = ScaleRecord(float(p))
    try:
        m = spine.solve_widths(weights * p / 2.0, ribbon, tol=tol, initial=initial)
    except ArcCoordError as exc:
        rec.error = f"{type(exc).__name__}: {exc}"
        return rec, None
    rec.a = np.array(m.a)
    rec.t = surface.t_lengths(m)
    rec.dart_widths = np.array(m.dart_widths)
    rec.widths = np.array(m.arc_widths)
    rec.ratio_error = ratio_diagnostic(m)
    if with_eta:
        rec.eta_deviation = poisson.limit_deviation(m)
    if m.boundary_lengths.sum() <= 1.0:
        rec.decorated_gap, rec.lam, rec.simplicial = decorated_gap(m)
    return rec, m


def _cold(args):
    return _record(*args)[0]


def family_scan(ribbon: RibbonStructure, weights, scales, warm_start=True,
                workers=None, tol=1e-9, eta=True) -> FamilyScan:
    """Solve and diagnose the family at each total boundary length in ``scales``.

    With ``warm_start`` each solve starts from the previous a-lengths, with
    t-lengths rescaled by the ratio of totals. ``workers`` > 1 runs cold
    starts in separate processes. A failed scale is recorded and skipped.
    """
    if not is_maximal(ribbon):
        raise ValueError("family scans need a maximal arc system")
    weights = np.asarray(weights, dtype=float)
    if np.any(weights < 0) or weights.sum() <= 0:
        raise ValueError("weights must be nonnegative and not all zero")
    weights = weights / weights.sum()
    scales = [float(p) for p in scales]
    if any(p <= 0 for p in scales):
        raise ValueError("total boundary lengths must be positive")
    with_eta = bool(eta and np.all(weights > 0))
    scan = FamilyScan(ribbon, weights)
    if workers and workers > 1:
        jobs = [(ribbon, weights, p, tol, None, with_eta) for p in scales]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            scan.records = list(pool.map(_cold, jobs))
        return scan
    prev = None
    for p in scales:
        initial = None
        if warm_start and prev is not None:
            prev_m, prev_p = prev
            t = surface.t_lengths(prev_m) * (p / prev_p)
            initial = np.asarray(hexagon.t_length(t), dtype=float).reshape(-1)
        rec, m = _record(ribbon, weights, p, tol, initial, with_eta)
        if m is None and initial is not None:
            log.info("warm start failed at p=%g, retrying cold", p)
            rec, m = _record(ribbon, weights, p, tol, None, with_eta)
        scan.records.append(rec)
        if m is not None:
            prev = (m, p)
    return scan


def limit_scan(ribbon: RibbonStructure, weights, scales, tol=1e-9):
    """(p, ||eta~(p) - H~||_inf) rows for a trivalent spine."""
    scan = family_scan(ribbon, weights, scales, tol=tol)
    return [(r.p, r.eta_deviation) for r in scan.records]
