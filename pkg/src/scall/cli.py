"""Command line interface.

Subcommands cover the full allocation workflow without the web UI:
validate a model file, derive weights from its embedded comparison matrix,
search for an allocation, run the GA-vs-exact benchmark, and serve the HTTP
API. Exit codes are stable: 0 ok, 1 domain failure (invalid model,
inconsistent judgments, no feasible allocation), 2 input failure (unreadable
or undecodable file, search space over the enumeration cap).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .ahp import InconsistentComparisonError, TradeoffVector, consistency_ratio, derive_tradeoff, principal_eigen
from .benchgen import BenchSpec, run_benchmark
from .model import (
    ArchitectureModel,
    ModelParseError,
    ModelValidationError,
    load_model,
)
from .search import (
    GAConfig,
    NoFeasibleAllocationError,
    SearchReport,
    SpaceTooLargeError,
    alternatives,
    exhaustive_search,
    ga_search,
)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_INPUT = 2


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _read_model(path: str) -> ArchitectureModel:
    return load_model(Path(path).read_bytes())


def _print_report_issues(err: ModelValidationError) -> None:
    print(f"invalid model: {len(err.issues)} issue(s)", file=sys.stderr)
    for issue in err.issues:
        loc = f" at {issue.path}" if issue.path else ""
        print(f"  [{issue.code}]{loc}: {issue.message}", file=sys.stderr)


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        model = _read_model(args.file)
    except OSError as e:
        return _fail(str(e), EXIT_INPUT)
    except ModelParseError as e:
        return _fail(f"not a JSON model file: {e}", EXIT_INPUT)
    except ModelValidationError as e:
        _print_report_issues(e)
        return EXIT_DOMAIN
    print(
        f"ok: {model.n} components, {model.m} units, {model.l} resources"
        + (", comparison matrix present" if model.comparison is not None else "")
    )
    return EXIT_OK


def cmd_weights(args: argparse.Namespace) -> int:
    try:
        model = _read_model(args.file)
    except OSError as e:
        return _fail(str(e), EXIT_INPUT)
    except ModelParseError as e:
        return _fail(f"not a JSON model file: {e}", EXIT_INPUT)
    except ModelValidationError as e:
        _print_report_issues(e)
        return EXIT_DOMAIN
    if model.comparison is None:
        return _fail(
            "model has no 'comparison' matrix; add pairwise judgments for the "
            f"{model.l} resources plus communication ({model.l + 1} criteria)",
            EXIT_DOMAIN,
        )
    lam, _ = principal_eigen(model.comparison)
    cr = consistency_ratio(model.comparison, lam)
    try:
        F = derive_tradeoff(model.comparison)
    except InconsistentComparisonError as e:
        return _fail(f"inconsistent judgments: CR = {e.cr:.4f} (threshold {e.threshold})", EXIT_DOMAIN)
    names = [r.name for r in model.resources] + ["communication"]
    weights = list(F.f) + [F.fc]
    if args.json:
        print(json.dumps({"weights": list(F.f), "fc": F.fc, "lambdaMax": lam, "cr": cr}, indent=2))
    else:
        for name, w in zip(names, weights):
            print(f"{name:<24} {w:.6f}")
        print(f"lambda_max = {lam:.6f}   CR = {cr:.6f}")
    return EXIT_OK


def _print_human_report(model: ArchitectureModel, report: SearchReport) -> None:
    res = report.best_result
    kind = "exact" if report.exact else f"genetic (seed {report.seed})"
    print(f"method: {kind}, {report.evaluated} evaluations"
          + (f", {report.generations} generations" if report.generations is not None else ""))
    print(f"w = {res.w:.6f}   feasible = {res.feasible} (rho={res.rho}, kappa={res.kappa})")
    print()
    width = max(len(c.name) for c in model.components) + 2
    for comp, h in zip(model.components, report.best):
        print(f"  {comp.name:<{width}} -> {model.units[h].name}")
    print()
    print("residual resources (available - used):")
    header = "  " + " " * 14 + "".join(f"{r.id:>12}" for r in model.resources)
    print(header)
    for h, unit in enumerate(model.units):
        cells = "".join(f"{model.R[h, k] - res.unit_load[h, k]:>12.3f}" for k in range(model.l))
        print(f"  {unit.name:<14}{cells}")
    used_links = [
        (g, h) for g in range(model.m) for h in range(g + 1, model.m) if res.pair_traffic[g, h] > 0
    ]
    if used_links:
        print("bandwidth (used / available):")
        for g, h in used_links:
            print(
                f"  {model.units[g].id} <-> {model.units[h].id}: "
                f"{res.pair_traffic[g, h]:.3f} / {model.B[g, h]:.3f}"
            )
    if len(report.alternatives) > 1:
        print("alternatives:")
        for p, r in report.alternatives:
            print(f"  w = {r.w:<10.6f} {' '.join(model.allocation_ids(p))}")


def cmd_allocate(args: argparse.Namespace) -> int:
    try:
        model = _read_model(args.file)
    except OSError as e:
        return _fail(str(e), EXIT_INPUT)
    except ModelParseError as e:
        return _fail(f"not a JSON model file: {e}", EXIT_INPUT)
    except ModelValidationError as e:
        _print_report_issues(e)
        return EXIT_DOMAIN

    if args.uniform_weights:
        F = TradeoffVector.uniform(model.l)
    elif model.comparison is None:
        return _fail(
            "model has no 'comparison' matrix; run with --uniform-weights or add judgments",
            EXIT_DOMAIN,
        )
    else:
        try:
            F = derive_tradeoff(model.comparison)
        except InconsistentComparisonError as e:
            return _fail(f"inconsistent judgments: CR = {e.cr:.4f}", EXIT_DOMAIN)

    count = args.alternatives
    try:
        if args.method == "exhaustive":
            reports = [exhaustive_search(model, F, top_k=count)]
        elif count > 1:
            reports = alternatives(model, F, count, base_seed=args.seed)
        else:
            reports = [ga_search(model, F, GAConfig(seed=args.seed))]
    except SpaceTooLargeError as e:
        return _fail(f"{e}; raise SCALL_EXHAUSTIVE_CAP or use --method ga", EXIT_INPUT)
    except NoFeasibleAllocationError as e:
        return _fail(str(e), EXIT_DOMAIN)

    if args.json:
        dicts = [r.to_dict(model) for r in reports]
        # a list is emitted iff multiple runs were requested, so output shape
        # does not depend on how many distinct allocations survived de-dup
        multi = args.method == "ga" and count > 1
        print(json.dumps(dicts if multi else dicts[0], indent=2))
    else:
        for i, report in enumerate(reports):
            if len(reports) > 1:
                print(f"--- run {i + 1} of {len(reports)} ---")
            _print_human_report(model, report)
    return EXIT_OK


def _parse_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    v = int(text)
    return v, v


def cmd_bench(args: argparse.Namespace) -> int:
    try:
        spec = BenchSpec(
            n_range=_parse_range(args.n),
            m_range=_parse_range(args.m),
            l_range=_parse_range(args.l),
            instances=args.instances,
            seed=args.seed,
            density=args.density,
            tightness=args.tightness,
        )
    except ValueError as e:
        return _fail(str(e), EXIT_INPUT)
    stats = run_benchmark(spec)
    if args.csv:
        with open(args.csv, "w", newline="") as f:
            stats.write_csv(f)
    print(json.dumps(stats.summary_dict(), indent=2))
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(static_dir=args.static)
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scall",
        description="Allocate software components onto heterogeneous computing units.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a model file against all rules")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("weights", help="derive trade-off weights from the embedded comparison matrix")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("allocate", help="search for the best feasible allocation")
    p.add_argument("file")
    p.add_argument("--method", choices=("ga", "exhaustive"), default="ga")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--alternatives",
        type=int,
        default=1,
        metavar="K",
        help="GA: number of derived-seed re-runs; exhaustive: top-K list size",
    )
    p.add_argument("--uniform-weights", action="store_true", help="skip the comparison matrix")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_allocate)

    p = sub.add_parser("bench", help="compare the GA against exhaustive search on random models")
    p.add_argument("--n", default="3..7", help="component count range A..B")
    p.add_argument("--m", default="3..5", help="unit count range A..B")
    p.add_argument("--l", default="2..3", help="resource count range A..B")
    p.add_argument("--instances", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--tightness", type=float, default=1.5)
    p.add_argument("--csv", metavar="PATH", help="write per-instance rows to a CSV file")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--static", metavar="DIR", help="also serve this directory at /")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
