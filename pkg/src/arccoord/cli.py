"""
Command-line front end.

    arccoord coords FILE            per-arc and per-circle coordinate tables
    arccoord spine FILE             spinal arc system and widths (the map W)
    arccoord solve-widths FILE      a-lengths realising given widths
    arccoord poisson FILE           Weil-Petersson bivector and Casimir check
    arccoord limit-scan FILE        distance of eta~ to the Kontsevich bivector
    arccoord interpolate FILE       family scan over total boundary length
    arccoord strebel FILE           flat tile complex (JSON) and SVG net
    arccoord random                 random maximal surface

FILE may be a directory, in which case every ``*.json`` inside is processed.
Exit codes: 0 success, 2 bad input, 3 numerical failure, 4 no convergence.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import corpus, interpolation, poisson, spine, strebel, surface
from .errors import (ArcCoordError, CircleMismatch, ImproperSystem, InvalidPermutation,
                     InvalidTarget, NoConvergence, NonPositiveLength)
from .io import csv_table, dumps, json_files, load_json, surface_from_json, surface_to_json
from .ribbon import RibbonStructure, SurfaceSignature

EXIT_OK, EXIT_PARSE, EXIT_NUMERIC, EXIT_NO_CONVERGENCE = 0, 2, 3, 4

log = logging.getLogger("arccoord")


class InputError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    newton_tol: float = 1e-9
    flip_zero_tol: float = spine.ZERO_WIDTH_TOL
    fd_step: float = 1e-6
    max_flips: int | None = None
    max_newton_iter: int = 100
    format: str = "json"
    seed: int = 0
    truncation_height: float = 1.0

    def __post_init__(self):
        for name in ("newton_tol", "flip_zero_tol", "fd_step", "truncation_height"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")
        if self.max_flips is not None and self.max_flips < 1:
            raise ValueError("max_flips must be >= 1")
        if self.max_newton_iter < 1:
            raise ValueError("max_newton_iter must be >= 1")
        if self.format not in ("json", "csv", "svg"):
            raise ValueError(f"unknown format {self.format!r}")


# -- per-file commands ---------------------------------------------------
# Each returns a dict (json) or a string (csv/svg).


def _weighted_input(data):
    if "weights" not in data:
        raise KeyError("weights")
    return RibbonStructure.from_json(data), [float(w) for w in data["weights"]]


def cmd_coords(data, cfg: RunConfig):
    m = surface_from_json(data)
    w = surface.all_widths(m)
    t = surface.t_lengths(m)
    layout = surface.boundary_layout(m)
    arcs = [(k, m.a[k], m.s[k], t[k], w.forward[k], w.backward[k], w.arc[k])
            for k in range(m.ribbon.n_arcs)]
    circles = [(c.k, c.circumference, " ".join(repr(g) for g in c.gaps))
               for c in layout.circles]
    if cfg.format == "csv":
        return (csv_table("arcs", ["arc", "a", "s", "t", "w_fwd", "w_bwd", "w"], arcs)
                + csv_table("circles", ["k", "p_k", "gaps"], circles))
    return {
        "arcs": [dict(zip(["arc", "a", "s", "t", "w_fwd", "w_bwd", "w"], row))
                 for row in arcs],
        "circles": [{"k": c.k, "p_k": c.circumference, "darts": list(c.darts),
                     "gaps": list(c.gaps)} for c in layout.circles],
    }


def cmd_spine(data, cfg: RunConfig):
    m = surface_from_json(data)
    res = spine.find_spine(m, max_flips=cfg.max_flips, zero_tol=cfg.flip_zero_tol)
    if cfg.format == "csv":
        rows = [(res.support[i], w) for i, w in enumerate(res.weights)]
        flips = [(i, f.arc, f.width_before, f.old_length, f.new_length)
                 for i, f in enumerate(res.flips)]
        return (csv_table("spine", ["arc", "weight"], rows)
                + csv_table("flips", ["step", "arc", "width_before", "old_a", "new_a"],
                            flips))
    out = res.to_json()
    out["support"] = list(res.support)
    out["zero_arcs"] = list(res.zero_arcs)
    out["completion"] = surface_to_json(res.maximal)
    out["flips"] = [{"arc": f.arc, "width_before": f.width_before,
                     "old_a": f.old_length, "new_a": f.new_length} for f in res.flips]
    return out


def cmd_solve_widths(data, cfg: RunConfig):
    ribbon, weights = _weighted_input(data)
    if "completion" in data:
        completion = RibbonStructure.from_json(data["completion"])
        support = data.get("support", list(range(ribbon.n_arcs)))
        if len(support) != len(weights):
            raise InputError("support and weights differ in length")
        target = np.zeros(completion.n_arcs)
        target[list(support)] = weights
    else:
        completion, target = ribbon, np.array(weights)
    m = spine.solve_widths(target, completion, tol=cfg.newton_tol, fd_step=cfg.fd_step,
                           max_iter=cfg.max_newton_iter)
    residual = float(np.max(np.abs(m.arc_widths - target)))
    if cfg.format == "csv":
        return csv_table("a_lengths", ["arc", "a", "w"],
                         [(k, m.a[k], m.arc_widths[k]) for k in range(m.ribbon.n_arcs)])
    out = surface_to_json(m)
    out["residual"] = residual
    return out


def cmd_poisson(data, cfg: RunConfig):
    m = surface_from_json(data)
    eta = poisson.poisson_bivector(m).matrix
    n = m.ribbon.signature.n_boundary
    cas = [poisson.casimir_residual(m, k, cfg.fd_step) for k in range(n)]
    H = poisson.kontsevich_bivector(m.ribbon).matrix
    eta_n = poisson.normalized_bivector(m).matrix
    if cfg.format == "csv":
        rows = []
        for name, M in (("eta", eta), ("eta_normalized", eta_n), ("kontsevich", H)):
            N = M.shape[0]
            rows += [(name, i, j, M[i, j]) for i in range(N) for j in range(N)]
        return (csv_table("bivectors", ["matrix", "i", "j", "value"], rows)
                + csv_table("casimir", ["circle", "residual"], list(enumerate(cas))))
    return {"arcs": m.ribbon.n_arcs, "eta": eta, "eta_normalized": eta_n,
            "kontsevich": H, "casimir_residuals": cas,
            "boundary_lengths": m.boundary_lengths}


def cmd_limit_scan(data, cfg: RunConfig, scales):
    ribbon, weights = _weighted_input(data)
    rows = interpolation.limit_scan(ribbon, weights, scales, tol=cfg.newton_tol)
    if cfg.format == "csv":
        return csv_table("limit_scan", ["p", "max_deviation"], rows)
    return {"rows": [{"p": p, "max_deviation": d} for p, d in rows]}


def cmd_interpolate(data, cfg: RunConfig, scales, workers=None):
    ribbon, weights = _weighted_input(data)
    scan = interpolation.family_scan(ribbon, weights, scales, tol=cfg.newton_tol,
                                     warm_start=not workers, workers=workers)
    rows = []
    for r in scan.records:
        if not r.ok:
            rows.append((r.p, None, None, None, None, None, None, None, r.error))
            continue
        for k in range(ribbon.n_arcs):
            rows.append((r.p, k, r.a[k], r.t[k], r.widths[k], r.ratio_error,
                         r.eta_deviation, r.decorated_gap, ""))
    columns = ["p", "arc", "a", "t", "w", "ratio_error", "eta_deviation",
               "decorated_gap", "error"]
    if cfg.format == "csv":
        return csv_table("interpolate", columns, rows)
    return {"rows": [dict(zip(columns, row)) for row in rows]}


def cmd_strebel(data, cfg: RunConfig, svg_path=None):
    ribbon, weights = _weighted_input(data)
    c = strebel.build_flat_surface(strebel.WeightedRibbonGraph(ribbon, weights))
    svg = strebel.render_svg(c, cfg.truncation_height)
    if svg_path:
        Path(svg_path).write_text(svg)
    if cfg.format == "svg":
        return svg
    lhs, rhs = strebel.degree_identity(c)
    if cfg.format == "csv":
        return csv_table("cylinders", ["circle", "circumference", "residue"],
                         [(cy.circle, float(cy.circumference), cy.residue)
                          for cy in c.cylinders])
    out = c.to_json()
    out["degree_identity"] = {"sum_zero_orders": lhs, "expected": rhs}
    out["euler_characteristic"] = c.euler_characteristic()
    return out


# -- driver --------------------------------------------------------------


def _render(result, fmt):
    if isinstance(result, str):
        return result
    return dumps(result)


def _exit_code(exc):
    if isinstance(exc, NoConvergence):
        return EXIT_NO_CONVERGENCE
    if isinstance(exc, (json.JSONDecodeError, KeyError, InputError, InvalidPermutation,
                        CircleMismatch, NonPositiveLength, InvalidTarget, ImproperSystem,
                        OSError, TypeError)):
        return EXIT_PARSE
    if isinstance(exc, ArcCoordError):
        return EXIT_NUMERIC
    if isinstance(exc, ValueError):
        return EXIT_PARSE
    raise exc


def _run_files(path, fn, cfg, jobs=1):
    files = json_files(path)
    if not files:
        raise InputError(f"no JSON files under {path}")

    def one(f):
        return fn(load_json(f), cfg)

    if len(files) == 1 and not Path(path).is_dir():
        return _render(one(files[0]), cfg.format)
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        results = list(pool.map(one, files))
    if cfg.format == "json":
        return dumps({f.name: r for f, r in zip(files, results)})
    return "".join(f"# file={f.name}\n" + _render(r, cfg.format)
                   for f, r in zip(files, results))


def build_parser():
    parser = argparse.ArgumentParser(prog="arccoord", description=__doc__.split("\n")[1])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-9, help="Newton tolerance")
    common.add_argument("--max-flips", type=int, default=None)
    common.add_argument("--max-iter", type=int, default=100, help="Newton iteration cap")
    common.add_argument("--fd-step", type=float, default=1e-6)
    common.add_argument("--format", choices=["json", "csv", "svg"], default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--truncation-height", type=float, default=1.0)
    common.add_argument("--jobs", type=int, default=1, help="files processed concurrently")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("coords", "spine", "solve-widths", "poisson", "limit-scan",
                 "interpolate", "strebel"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("path")
        if name in ("limit-scan", "interpolate"):
            p.add_argument("--p", type=float, nargs="+", dest="scales",
                           default=[10.0, 100.0, 1000.0],
                           help="total boundary lengths")
        if name == "interpolate":
            p.add_argument("--workers", type=int, default=None,
                           help="cold-started parallel scales")
        if name == "strebel":
            p.add_argument("--svg", help="also write the SVG net here")
    p = sub.add_parser("random", parents=[common])
    p.add_argument("--genus", type=int, default=1)
    p.add_argument("--boundary", type=int, default=1)
    p.add_argument("--a-min", type=float, default=0.3)
    p.add_argument("--a-max", type=float, default=3.0)
    return parser


def main(argv=None):
    logging.basicConfig(level=os.environ.get("ARCCOORD_LOG", "WARNING").upper(),
                        format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(newton_tol=args.tol, fd_step=args.fd_step, max_flips=args.max_flips,
                        max_newton_iter=args.max_iter,
                        format=args.format, seed=args.seed,
                        truncation_height=args.truncation_height)
        if args.command == "random":
            rng = np.random.default_rng(args.seed)
            SurfaceSignature(args.genus, args.boundary)
            m = corpus.random_surface(rng, a_range=(args.a_min, args.a_max),
                                      signature=(args.genus, args.boundary))
            text = dumps(surface_to_json(m))
        else:
            fn = {
                "coords": cmd_coords,
                "spine": cmd_spine,
                "solve-widths": cmd_solve_widths,
                "poisson": cmd_poisson,
                "limit-scan": lambda d, c: cmd_limit_scan(d, c, args.scales),
                "interpolate": lambda d, c: cmd_interpolate(d, c, args.scales,
                                                            args.workers),
                "strebel": lambda d, c: cmd_strebel(d, c, args.svg),
            }[args.command]
            text = _run_files(args.path, fn, cfg, args.jobs)
    except Exception as exc:  # mapped to exit codes below
        code = _exit_code(exc)
        print(f"arccoord: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        if isinstance(exc, NoConvergence):
            print(f"arccoord: residual {exc.residual:.3e}", file=sys.stderr)
        return code
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
