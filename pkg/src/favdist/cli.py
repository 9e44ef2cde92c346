"""Command-line front end.

Exit codes: 0 success/verified, 1 verification failure, 2 invalid input or I/O error.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

import numpy as np

from .bounds import f3_bounds, newman_enumerate
from .core import DEFAULT_TOL, PointSet3, build_digraph, optimal_radii
from .detect import DETECT_TOL, DegenerateSampleError, detect_suspension
from .io import PointSetFileError, read_point_set, write_point_set
from .search import SearchConfig, local_search
from .suspension import NotASuspensionError, build_extremal, build_hexagon_variant, verify_suspension_counts

EXIT_OK, EXIT_FAIL, EXIT_BAD_INPUT = 0, 1, 2

# brute-force counts in bounds-table stop here; larger n get a blank cell
DEFAULT_MAX_CONSTRUCT = 2000


class UsageError(Exception):
    pass


def _emit(doc) -> None:
    json.dump(doc, sys.stdout, indent=2, default=_jsonable)
    sys.stdout.write("\n")


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(type(obj).__name__)


def cmd_construct(args) -> int:
    if args.n < 13:
        raise UsageError(f"--n must be at least 13, got {args.n}")
    build = build_extremal if args.variant == "square" else build_hexagon_variant
    ps = build(args.n)
    meta = {k: ps.meta[k] for k in ("variant", "n", "ell", "c", "expected")}
    try:
        write_point_set(args.out, PointSet3(ps.points, ps.radii, meta))
    except OSError as exc:
        raise UsageError(f"cannot write {args.out}: {exc}") from exc
    return EXIT_OK


def _load(path, tol) -> PointSet3:
    pts, radii, meta = read_point_set(path)
    if len(pts) < 2:
        raise UsageError("need at least 2 points")
    if radii is None:
        radii, _ = optimal_radii(pts, tol)
        meta = {**meta, "radii_source": "mode"}
    return PointSet3(pts, radii, meta)


def cmd_verify(args) -> int:
    ps = _load(args.input, args.tol)
    try:
        g = build_digraph(ps, args.tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    ok = True
    report: dict = {"n": ps.n, "e_total": g.e, "radii_source": ps.meta.get("radii_source", "file")}
    if ps.n < 8:
        report["detection"] = "skipped (n < 8)"
        report["suspension"] = None
    else:
        det = detect_suspension(ps, tol=args.detect_tol, ransac_iters=args.ransac_iters, seed=args.seed)
        report["detection"] = det.as_dict()
        report["suspension"] = None
        if det.t == 0:
            try:
                counts = verify_suspension_counts(
                    ps, (det.L_indices, det.C_indices), tol=args.detect_tol, g=g
                )
            except NotASuspensionError as exc:
                report["suspension_error"] = str(exc)
            else:
                report["suspension"] = counts.as_dict()
                ok &= counts.matches
    expected = ps.meta.get("expected")
    if expected is not None:
        report["expected"] = expected
        ok &= g.e == int(expected)
    report["matches"] = bool(ok)
    _emit(report)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_bounds_table(args) -> int:
    if not 1 <= args.n_min <= args.n_max <= 10**6:
        raise UsageError("need 1 <= n_min <= n_max <= 10^6")
    try:
        fh = open(args.csv, "w", newline="")
    except OSError as exc:
        raise UsageError(f"cannot write {args.csv}: {exc}") from exc
    with fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["n", "lower", "suspension_cap", "upper", "constructed"])
        for n in range(args.n_min, args.n_max + 1):
            b = f3_bounds(n)
            built = build_digraph(build_extremal(n)).e if 13 <= n <= args.max_construct else ""
            writer.writerow([n, b.lower, b.suspension_cap, b.upper, built])
    return EXIT_OK


def cmd_search(args) -> int:
    try:
        cfg = SearchConfig(n=args.n, iterations=args.iters, restarts=args.restarts, seed=args.seed,
                           init=args.init)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.init != "random" and args.n < 13:
        raise UsageError("suspension initialisation needs --n >= 13")
    res = local_search(cfg)
    b = f3_bounds(cfg.n)
    _emit({
        "n": cfg.n,
        "seed": cfg.seed,
        "e_value": res.e_value,
        "restart": res.restart,
        "upper_bound": b.upper,
        "points": res.points.points,
        "radii": res.points.radii,
    })
    return EXIT_OK


def cmd_detect(args) -> int:
    ps = _load(args.input, DEFAULT_TOL)
    if ps.n < 8:
        raise UsageError("detection needs at least 8 points")
    try:
        det = detect_suspension(ps, tol=args.tol, ransac_iters=args.ransac_iters, seed=args.seed)
    except DegenerateSampleError as exc:
        raise UsageError(str(exc)) from exc
    _emit(det.as_dict())
    return EXIT_OK


def cmd_newman(args) -> int:
    sols = newman_enumerate(args.max_denominator, args.tol, fold_reflection=not args.no_fold)
    _emit({
        "max_denominator": args.max_denominator,
        "tol": args.tol,
        "solutions": [{"theta_over_pi": str(a), "phi_over_pi": str(b)} for a, b in sols],
    })
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="favdist", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="write the square or hexagon construction")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--variant", choices=["square", "hexagon"], default="square")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="recount a point-set file and check the bounds")
    p.add_argument("input", nargs="?")
    p.add_argument("--in", dest="input_flag")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--detect-tol", type=float, default=DETECT_TOL)
    p.add_argument("--ransac-iters", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds-table", help="CSV of the bounds and constructed counts")
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--csv", required=True)
    p.add_argument("--max-construct", type=int, default=DEFAULT_MAX_CONSTRUCT)
    p.set_defaults(func=cmd_bounds_table)

    p = sub.add_parser("search", help="simulated annealing for high counts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--iters", type=int, default=2000)
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--init", choices=["random", "suspension", "perturbed-suspension"], default="random")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("detect", help="recover circle, axis and exceptional set")
    p.add_argument("input", nargs="?")
    p.add_argument("--in", dest="input_flag")
    p.add_argument("--tol", type=float, default=DETECT_TOL)
    p.add_argument("--ransac-iters", type=int, default=200)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("newman", help="rational solutions of sin(theta) sin(phi/2) = 1/2")
    p.add_argument("--max-denominator", type=int, default=64)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--no-fold", action="store_true", help="keep both theta and pi - theta")
    p.set_defaults(func=cmd_newman)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "input_flag"):
        args.input = args.input_flag or args.input
        if args.input is None:
            parser.error("an input file is required (positional or --in)")
    try:
        return args.func(args)
    except (UsageError, PointSetFileError, ValueError) as exc:
        print(f"favdist: error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
