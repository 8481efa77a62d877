"""Command-line entry point: ``curvtopo <subcommand> SPACE.json [options]``.

Scalar results go to stdout as JSON; tables and figures go to ``--output``.
Exit status is 0 on success, 1 on a domain error (the error class name is
printed to stderr) and 2 on a usage error.
"""

import argparse
import json
import sys

import numpy as np

from . import complexes, extremal, persistence, profile, rho
from .errors import CurvtopoError
from .spaces import WitnessMode, load_space, validate_metric


def _int_list(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _positive(kind):
    def parse(text):
        value = kind(text)
        if not value > 0:
            raise argparse.ArgumentTypeError(f"expected a positive value, got {text!r}")
        return value

    return parse


def _triple(text):
    values = _int_list(text)
    if len(values) != 3:
        raise argparse.ArgumentTypeError("--triple takes exactly three indices i,j,k")
    return values


def _start(text):
    if text == "half-max":
        return ("half-max", None)
    if text.startswith("constant:"):
        try:
            return ("constant", float(text.split(":", 1)[1]))
        except ValueError:
            pass
    raise argparse.ArgumentTypeError("--start takes half-max or constant:C")


def _mode(text):
    try:
        return WitnessMode.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="space descriptor JSON file")
    common.add_argument("--output", "-o", help="file for tabular or graphic output (default: none)")
    common.add_argument(
        "--mode",
        type=_mode,
        default=None,
        help="witness mode: intrinsic or ambient (default: ambient for geometric spaces, intrinsic for finite)",
    )
    common.add_argument("--dim-cap", type=int, default=complexes.DEFAULT_DIM_CAP, help="top simplex dimension (default: %(default)s, max 5)")
    common.add_argument("--max-dim", type=int, default=None, help="top homology dimension reported (default: dim-cap - 1)")
    common.add_argument("--tol", type=_positive(float), default=1e-9, help="numerical tolerance (default: %(default)s)")
    common.add_argument("--seed", type=int, default=0, help="random seed (default: %(default)s)")
    common.add_argument("--t-max", type=_positive(float), default=None, help="largest filtration scale (default: diameter / min weight)")
    common.add_argument("--points", type=_int_list, default=None, help="comma-separated base point indices (default: all)")

    parser = argparse.ArgumentParser(prog="curvtopo", description="Curvature measures and Cech/VR persistence of metric spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", parents=[common], help="check the metric axioms (default tolerance 1e-9)")

    p = sub.add_parser("rho", parents=[common], help="inflation factor of one triple under its Gromov radii")
    p.add_argument("--triple", type=_triple, required=True, help="three point indices i,j,k (required)")

    p = sub.add_parser("profile", parents=[common], help="(r, rho) curvature profile; CSV, or SVG when --output ends in .svg")
    p.add_argument("--triples", type=_positive(int), default=1000, help="triple budget; exhaustive when all fit (default: %(default)s)")
    p.add_argument(
        "--lambda-bins",
        type=_float_list,
        default=list(profile.DEFAULT_BIN_CENTERS),
        help="lambda bin centers (default: 1.25,1.5,1.75,2)",
    )
    p.add_argument("--half-width", type=_positive(float), default=profile.DEFAULT_HALF_WIDTH, help="lambda bin half-width (default: %(default)s)")

    p = sub.add_parser("persist", parents=[common], help="barcode of a Cech or VR filtration, CSV to --output")
    p.add_argument("--flavor", choices=["cech", "vr"], default="cech", help="complex type (default: %(default)s)")
    p.add_argument("--schedule", choices=["uniform", "weighted"], default="uniform", help="radius schedule (default: %(default)s)")
    p.add_argument(
        "--weights",
        type=_float_list,
        default=None,
        help="weights for the weighted schedule (default: extremal minorant of the half-max radii)",
    )
    p.add_argument("--backend", choices=["python", "cython"], default=None, help="kernel backend (default: compiled if built)")

    p = sub.add_parser("expansion", parents=[common], help="sampled lower bound for the expansion constant")
    p.add_argument("--arity", type=int, default=3, help="largest tuple size (default: %(default)s)")
    p.add_argument("--tuples", type=_positive(int), default=200, help="tuple budget (default: %(default)s)")

    p = sub.add_parser("extremal", parents=[common], help="extremal minorant of a starting radius function")
    p.add_argument("--start", type=_start, default=("half-max", None), help="half-max or constant:C (default: half-max)")
    p.add_argument("--order", choices=["index", "random"], default="index", help="sweep order; random uses --seed (default: %(default)s)")

    p = sub.add_parser("inclusions", parents=[common], help="check vr <= cech <= mu * vr birth by birth")
    p.add_argument("--mu", type=_positive(float), default=2.0, help="inclusion factor (default: %(default)s)")
    return parser


def _emit(obj):
    print(json.dumps(obj, indent=2, sort_keys=True))


def _base_points(space, args):
    return list(range(space.point_count)) if args.points is None else args.points


def _cmd_validate(args):
    with open(args.input) as fh:
        raw = json.load(fh)
    if raw.get("type") == "finite":
        report = validate_metric(raw["matrix"], args.tol)
        _emit({"ok": report.ok, "violations": report.violations})
        if not report.ok:
            print(f"InvalidSpace: {len(report.violations)} metric violation(s)", file=sys.stderr)
            return 1
        return 0
    space = load_space(args.input)
    _emit({"ok": True, "violations": [], "type": space.kind.value, "points": space.point_count})
    return 0


def _cmd_rho(args, space):
    res = rho.rho_triple(space, *args.triple, mode=args.mode)
    _emit({"triple": args.triple, **res.to_json()})
    return 0


def _cmd_profile(args, space):
    bins = [(c, args.half_width) for c in args.lambda_bins]
    records = profile.curvature_profile(space, args.points, bins, args.triples, args.mode, args.seed)
    if args.output and records:
        if args.output.endswith(".svg"):
            profile.emit_profile_svg(records, args.output, bins)
        else:
            profile.emit_profile_csv(records, args.output)
    rhos = [rec.rho for rec in records]
    _emit(
        {
            "records": len(records),
            "degenerate": len(records.degenerate),
            "rho_min": min(rhos) if rhos else None,
            "rho_max": max(rhos) if rhos else None,
            "bins": {f"{c:g}": len(records.in_bin(i)) for i, (c, _) in enumerate(bins)},
        }
    )
    return 0


def _schedule(args, space, base):
    if args.schedule == "uniform":
        return "uniform"
    if args.weights is not None:
        return np.asarray(args.weights, dtype=float)
    start = extremal.RadiusFunction.half_max(space, sorted(base))
    return extremal.extremal_minorant(space, start)


def _filtration(args, space, flavor, base, schedule):
    if flavor == "cech":
        return complexes.cech_filtration(space, base, schedule, args.mode, args.dim_cap, args.t_max)
    return complexes.vr_filtration_of(space, base, schedule, args.dim_cap, args.t_max, getattr(args, "backend", None))


def _cmd_persist(args, space):
    base = _base_points(space, args)
    f = _filtration(args, space, args.flavor, base, _schedule(args, space, base))
    barcode = persistence.compute_persistence(f, args.max_dim, args.backend)
    if args.output:
        barcode.to_csv(args.output)
    _emit({"flavor": args.flavor, "schedule": args.schedule, "simplices": len(f), "bars": barcode.to_json()})
    return 0


def _cmd_expansion(args, space):
    est = rho.expansion_constant_estimate(space, args.points, args.arity, args.tuples, args.seed, args.mode)
    _emit(est.to_json())
    return 0


def _cmd_extremal(args, space):
    points = sorted(_base_points(space, args))
    kind, c = args.start
    if kind == "half-max":
        start = extremal.RadiusFunction.half_max(space, points)
    else:
        start = extremal.RadiusFunction.constant(space, c, points)
    order = None
    if args.order == "random":
        order = np.random.default_rng(args.seed).permutation(len(points))
    r = extremal.extremal_minorant(space, start, order)
    _emit({"points": list(r.points), "radii": r.to_json(), "extremal": extremal.is_extremal(space, r)})
    return 0


def _cmd_inclusions(args, space):
    base = _base_points(space, args)
    cech = _filtration(args, space, "cech", base, "uniform")
    vr = _filtration(args, space, "vr", base, "uniform")
    report = complexes.check_inclusions(cech, vr, args.mu, args.tol)
    _emit({"mu": args.mu, **report.to_json()})
    return 0 if report.ok else 1


COMMANDS = {
    "rho": _cmd_rho,
    "profile": _cmd_profile,
    "persist": _cmd_persist,
    "expansion": _cmd_expansion,
    "extremal": _cmd_extremal,
    "inclusions": _cmd_inclusions,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not 1 <= args.dim_cap <= complexes.MAX_DIM_CAP:
        parser.print_usage(sys.stderr)
        print(f"curvtopo: error: --dim-cap must lie in 1..{complexes.MAX_DIM_CAP}", file=sys.stderr)
        return 2
    try:
        if args.command == "validate":
            return _cmd_validate(args)
        space = load_space(args.input)
        return COMMANDS[args.command](args, space)
    except CurvtopoError as exc:
        print(f"{exc.name}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"IoError: {exc}", file=sys.stderr)
        return 1
    except (json.JSONDecodeError, KeyError) as exc:
        print(f"InvalidSpace: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
