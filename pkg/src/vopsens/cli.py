"""Command-line surface.

Subcommands: ``frontier``, ``coderivative``, ``domination``,
``validate``, ``oracle``, ``example``.  Problems are given as builtin
names or paths to JSON documents.  Exit codes: 0 success (including a
mathematically empty coderivative set), 2 schema or file problems,
3 infeasible, 4 unbounded scalarization, 5 qualification failure,
6 domination not certified.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import report as rpt
from .builtins import BUILTIN_PROBLEMS
from .coderivative import (
    frontier_coderivative,
    profile_coderivative_F,
    qualification_check,
)
from .domination import DEFAULT_SEED, check_domination
from .efficiency import frontier_sample, min_points, prmin_points, wmin_points
from .errors import (
    DominationNotCertified,
    Infeasible,
    InfeasiblePoint,
    NotEfficient,
    QualificationFailed,
    SchemaError,
    DimensionMismatch,
    UnboundedScalarization,
    VopsensError,
)
from .oracle import epi_cloud, frechet_normal_test, max_normal_quotient
from .problems import (
    check_solution_point,
    parse_problem,
    problem_base_point,
    serialize_problem,
    validate,
)
from .rationals import format_rat, rat, vec

EXIT_SCHEMA = 2
EXIT_INFEASIBLE = 3
EXIT_UNBOUNDED = 4
EXIT_QUALIFICATION = 5
EXIT_DOMINATION = 6


def _load_problem(spec: str):
    if spec in BUILTIN_PROBLEMS:
        return parse_problem(spec)
    if os.path.exists(spec):
        with open(spec, "r", encoding="utf-8") as fh:
            return parse_problem(fh.read())
    if spec.lstrip().startswith("{"):
        return parse_problem(spec)
    raise SchemaError("<problem>", f"no builtin or file named {spec!r}")


def _parse_vector(text: str):
    return vec([part for part in text.replace(";", ",").split(",") if part.strip()])


def _parse_seed(text: str) -> int:
    return int(text, 16) if text.lower().startswith("0x") else int(text, 0)


def _resolve_base(problem, args, variant="min"):
    if getattr(args, "p", None) is not None and getattr(args, "x", None) is not None:
        return check_solution_point(
            problem, _parse_vector(args.p), _parse_vector(args.x), variant=variant
        )
    return problem_base_point(problem, variant=variant)


def _emit(args, report_dict, started):
    body = rpt.emit(
        rpt.finish_report(report_dict, started),
        fmt=args.format,
        out_path=args.out,
    )
    if not args.out:
        sys.stdout.write(body)
    return 0


def cmd_frontier(args) -> int:
    started = time.perf_counter()
    problem = _load_problem(args.problem)
    p = _parse_vector(args.p)
    cloud = frontier_sample(problem, p, weight_count=args.weight_count)
    cone = problem.cone
    report = rpt.base_report(problem, "frontier")
    report["parameter"] = [format_rat(a) for a in p]
    report["cloud"] = [[format_rat(rat(c)) for c in point] for point in cloud]
    report["classification"] = {
        "min": list(min_points(cloud, cone).indices),
        "wmin": list(wmin_points(cloud, cone).indices) if cone.is_solid else None,
        "prmin": list(prmin_points(cloud, cone).indices),
    }
    return _emit(args, report, started)


def cmd_coderivative(args) -> int:
    started = time.perf_counter()
    problem = _load_problem(args.problem)
    y_star = _parse_vector(args.ystar)
    base = _resolve_base(problem, args, variant=args.variant)
    qual = qualification_check(problem, base)
    report = rpt.base_report(problem, "coderivative")
    report["base_point"] = {
        "p": [format_rat(a) for a in base.p],
        "x": [format_rat(a) for a in base.x],
        "y": [format_rat(a) for a in base.y],
    }
    report["variant"] = args.variant
    report["qualification"] = rpt.qualification_record(qual)

    certificate = None
    if args.assume_domination:
        report["domination"] = "assumed by flag"
        result = profile_coderivative_F(
            problem,
            base,
            y_star,
            order_cone=problem.cone_tilde if args.variant == "weak" else None,
            qual=qual,
        )
    else:
        certificate = check_domination(
            problem,
            base.p,
            variant=args.variant,
            radius=args.radius,
            seed=args.seed,
        )
        report["domination"] = certificate.as_dict()
        result = frontier_coderivative(
            problem,
            base,
            y_star,
            variant=args.variant,
            certificate=certificate,
            qual=qual,
        )
    record = rpt.coderivative_record(result)
    if args.method in ("oracle", "both") and not result.is_empty():
        cloud = epi_cloud(
            problem,
            base,
            delta=args.delta,
            param_grid=args.param_grid,
        )
        verdicts = []
        for point in result.extreme_points():
            v_star = tuple(point) + tuple(-a for a in y_star)
            verdicts.append(
                {
                    "candidate": [format_rat(a) for a in point],
                    "accepted": frechet_normal_test(cloud, v_star, args.eps),
                    "max_quotient": max_normal_quotient(cloud, v_star),
                }
            )
        record["oracle"] = {
            "cloud_size": len(cloud),
            "delta": args.delta,
            "eps": args.eps,
            "verdicts": verdicts,
        }
    report["coderivative"] = record
    return _emit(args, report, started)


def cmd_domination(args) -> int:
    started = time.perf_counter()
    problem = _load_problem(args.problem)
    if args.p is not None:
        p_bar = _parse_vector(args.p)
    elif problem.base_document is not None:
        p_bar = problem.base_document[0]
    else:
        p_bar = vec([0] * problem.n_p)
    certificate = check_domination(
        problem,
        p_bar,
        variant=args.variant,
        radius=args.radius,
        n_param_samples=args.samples,
        seed=args.seed,
    )
    report = rpt.base_report(problem, "domination")
    report["certificate"] = certificate.as_dict()
    code = _emit(args, report, started)
    return code if certificate.holds_empirically else EXIT_DOMINATION


def cmd_validate(args) -> int:
    started = time.perf_counter()
    problem = _load_problem(args.problem)
    report = rpt.base_report(problem, "validate")
    report["validation"] = validate(problem).as_dict()
    return _emit(args, report, started)


def cmd_oracle(args) -> int:
    started = time.perf_counter()
    problem = _load_problem(args.problem)
    y_star = _parse_vector(args.ystar)
    base = _resolve_base(problem, args)
    cloud = epi_cloud(problem, base, delta=args.delta, param_grid=args.param_grid)
    if args.candidate:
        candidates = [_parse_vector(c) for c in args.candidate]
    else:
        result = profile_coderivative_F(problem, base, y_star)
        candidates = result.extreme_points()
    report = rpt.base_report(problem, "oracle")
    report["cloud_size"] = len(cloud)
    report["delta"] = args.delta
    report["eps"] = args.eps
    verdicts = []
    for point in candidates:
        v_star = tuple(point) + tuple(-a for a in y_star)
        verdicts.append(
            {
                "candidate": [format_rat(a) for a in point],
                "accepted": frechet_normal_test(cloud, v_star, args.eps),
                "max_quotient": max_normal_quotient(cloud, v_star),
            }
        )
    report["verdicts"] = verdicts
    return _emit(args, report, started)


def cmd_example(args) -> int:
    if args.name not in BUILTIN_PROBLEMS:
        raise SchemaError("<name>", f"unknown example {args.name!r}")
    document = serialize_problem(parse_problem(args.name))
    body = json.dumps(document, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vopsens",
        description="Sensitivity analysis of efficient frontiers in "
        "parametric convex vector optimization.",
    )
    parser.add_argument("--version", action="version", version="%(prog)s 0.1.0")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", default=None, help="write the report to a file")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument(
            "--seed",
            type=_parse_seed,
            default=DEFAULT_SEED,
            help="sampling seed (hex like 0x5EED or decimal)",
        )

    sp = sub.add_parser("frontier", help="sample and classify the efficient frontier")
    sp.add_argument("problem")
    sp.add_argument("--p", required=True, help="parameter, comma separated")
    sp.add_argument("--weight-count", type=int, default=21, dest="weight_count")
    common(sp)
    sp.set_defaults(func=cmd_frontier)

    sp = sub.add_parser("coderivative", help="frontier-profile coderivative at a base point")
    sp.add_argument("problem")
    sp.add_argument("--ystar", required=True)
    sp.add_argument("--variant", choices=("min", "weak", "proper"), default="min")
    sp.add_argument("--p", default=None)
    sp.add_argument("--x", default=None)
    sp.add_argument("--method", choices=("formula", "oracle", "both"), default="both")
    sp.add_argument("--assume-domination", action="store_true")
    sp.add_argument("--radius", type=float, default=0.5)
    sp.add_argument("--delta", type=float, default=0.1)
    sp.add_argument("--eps", type=float, default=1e-3)
    sp.add_argument("--param-grid", type=int, default=9, dest="param_grid")
    common(sp)
    sp.set_defaults(func=cmd_coderivative)

    sp = sub.add_parser("domination", help="empirical domination certificate")
    sp.add_argument("problem")
    sp.add_argument("--p", default=None)
    sp.add_argument("--variant", choices=("min", "weak", "proper"), default="min")
    sp.add_argument("--radius", type=float, default=0.5)
    sp.add_argument("--samples", type=int, default=32)
    common(sp)
    sp.set_defaults(func=cmd_domination)

    sp = sub.add_parser("validate", help="convexity and structure report")
    sp.add_argument("problem")
    common(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("oracle", help="brute-force normal-cone membership test")
    sp.add_argument("problem")
    sp.add_argument("--ystar", required=True)
    sp.add_argument("--p", default=None)
    sp.add_argument("--x", default=None)
    sp.add_argument(
        "--candidate",
        action="append",
        default=None,
        help="candidate parameter-dual vector (repeatable); defaults to formula output",
    )
    sp.add_argument("--delta", type=float, default=0.1)
    sp.add_argument("--eps", type=float, default=1e-3)
    sp.add_argument("--param-grid", type=int, default=9, dest="param_grid")
    common(sp)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("example", help="write a builtin problem document")
    sp.add_argument("name")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_example)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SchemaError, DimensionMismatch, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except (Infeasible, InfeasiblePoint) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except UnboundedScalarization as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNBOUNDED
    except QualificationFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_QUALIFICATION
    except DominationNotCertified as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMINATION
    except NotEfficient as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except VopsensError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
