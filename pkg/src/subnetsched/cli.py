"""Command-line entry point: ``subnetsched <command> ...``.

Exit codes: 0 on success, 1 on a configuration or input error, 2 when
``check`` finds an invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import replace
from pathlib import Path

from .cliques import temp_graph
from .experiment import (
    ConfigError,
    ExperimentConfig,
    get_preset,
    rows_to_csv,
    rows_to_json,
    run_experiment,
)
from .generators import FAMILIES, GenSpec
from .graph import ConflictGraph, GraphInputError, format_edge_list, read_edge_list, to_dot
from .metrics import (
    alpha_aggressive_ratio,
    alpha_aggressive_sum,
    alpha_conservative,
    alpha_dc,
    alpha_empirical,
    ms_schedule,
    net_rate_bounds,
)
from .scheduler import K_MAX_DEFAULT, schedule, slot_count
from .selection import (
    InvariantViolation,
    aggressive_centralized,
    aggressive_distributed,
    check_selection_invariants,
    check_view_consistency,
    conservative_select,
)

EXIT_OK, EXIT_CONFIG, EXIT_INVARIANT = 0, 1, 2


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("graph")
    g.add_argument("--graph", metavar="PATH", help="edge-list file (first line n, then 1-based pairs)")
    g.add_argument("--family", choices=FAMILIES)
    g.add_argument("--n", type=int)
    g.add_argument("--p", type=float, help="edge probability (erdos_renyi)")
    g.add_argument("--m", type=int, default=1, help="attachment count (barabasi_albert)")
    g.add_argument("--d", type=float, help="link radius (geometric)")
    g.add_argument("--seed", type=int, default=0)


def _load_graph(args) -> ConflictGraph:
    if args.graph:
        return read_edge_list(args.graph)
    if not args.family or args.n is None:
        raise ConfigError("give --graph PATH or --family and --n")
    return GenSpec(args.family, args.n, p=args.p, m=args.m, d=args.d, seed=args.seed).build()


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _select(g: ConflictGraph, algorithm: str, rho: int, center: int | None = None):
    if center is not None:
        if algorithm != "aggressive":
            raise ConfigError("--center only applies to the aggressive rule")
        return aggressive_distributed(g, center - 1, rho)
    temp = temp_graph(g, rho)
    if algorithm == "aggressive":
        return aggressive_centralized(temp, g, rho)
    return conservative_select(temp, g, rho)


def cmd_generate(args) -> int:
    g = _load_graph(args)
    _emit(to_dot(g) if args.format == "dot" else format_edge_list(g), args.out)
    return EXIT_OK


def cmd_cliques(args) -> int:
    g = _load_graph(args)
    temp = temp_graph(g, args.rho)
    _emit(temp.to_dot() if args.format == "dot" else json.dumps(temp.to_json(), indent=1) + "\n", args.out)
    return EXIT_OK


def cmd_select(args) -> int:
    g = _load_graph(args)
    sel = _select(g, args.algorithm, args.rho, args.center)
    if args.format == "dot":
        _emit(sel.consolidated.to_dot(), args.out)
        return EXIT_OK
    payload = sel.to_json()
    if args.center is None:
        if args.algorithm == "aggressive":
            payload["alpha_ratio"] = str(alpha_aggressive_ratio(sel).ideal)
            payload["alpha_sum"] = str(alpha_aggressive_sum(sel).ideal)
        else:
            payload["alpha"] = str(alpha_conservative(sel).ideal)
    _emit(json.dumps(payload, indent=1) + "\n", args.out)
    return EXIT_OK


def cmd_schedule(args) -> int:
    g = _load_graph(args)
    sel = _select(g, args.algorithm, args.rho)
    nbar = args.nbar or max(g.n, 2)
    k = slot_count(nbar, args.epsilon, args.k_max or None)
    assign = schedule(sel.consolidated, k, nbar, args.seed)
    if not assign.is_proper(sel.consolidated):
        raise InvariantViolation("coloring is not proper")
    bounds = net_rate_bounds(assign, sel)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["vertex", "k", "acquired", "fraction"])
    for row in assign.to_csv_rows(sel.consolidated):
        w.writerow(row[:3] + [format(row[3], ".12g")])
    _emit(buf.getvalue(), args.out)
    emp = alpha_empirical(assign, sel).ideal
    print(
        f"alpha_empirical={emp} ({float(emp):.4f})  net_lower={bounds.lower:.4f}  net_upper={bounds.upper:.4f}",
        file=sys.stderr,
    )
    return EXIT_OK


def _experiment_configs(args) -> list[ExperimentConfig]:
    if bool(args.config) == bool(args.preset):
        raise ConfigError("give exactly one of --config or --preset")
    cfgs = [ExperimentConfig.from_json(args.config)] if args.config else list(get_preset(args.preset))
    if args.seed is not None:
        cfgs = [replace(c, master_seed=args.seed) for c in cfgs]
    if args.replications is not None:
        cfgs = [replace(c, replications=args.replications) for c in cfgs]
    for c in cfgs:
        c.validate()
    return cfgs


def cmd_experiment(args) -> int:
    cfgs = _experiment_configs(args)
    rows = [row for c in cfgs for row in run_experiment(c, jobs=args.jobs)]
    text = rows_to_json(rows) if args.format == "json" else rows_to_csv(rows)
    out = args.out or (cfgs[0].output if len(cfgs) == 1 else None)
    _emit(text, out)
    failed = sum(1 for r in rows if r.error)
    if failed:
        print(f"{failed} row(s) carry an error", file=sys.stderr)
    return EXIT_OK


def cmd_check(args) -> int:
    g = _load_graph(args)
    problems: list[str] = []
    temp = temp_graph(g, args.rho)
    for sel in (aggressive_centralized(temp, g, args.rho), conservative_select(temp, g, args.rho)):
        problems += [f"{sel.algorithm}: {p}" for p in check_selection_invariants(sel, g)]
    if alpha_conservative(conservative_select(temp, g, args.rho)).ideal < alpha_dc(g).ideal:
        problems.append("conservative rate below plain coloring")
    if args.ms_slots:
        try:
            ms_schedule(g, args.ms_slots, args.seed, check=True)
        except InvariantViolation as exc:
            problems.append(f"ms: {exc}")
    report = check_view_consistency(g, args.rho, args.tau)
    print(report.summary())
    if not report.passed:
        problems.append("distributed and centralized views disagree")
    for p in problems:
        print(f"VIOLATION {p}")
    if problems:
        return EXIT_INVARIANT
    print("all invariants hold")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="subnetsched", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a conflict graph as an edge list or DOT")
    _add_graph_args(p)
    p.add_argument("--format", choices=("edges", "dot"), default="edges")
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("cliques", help="dump the temporary graph of r-cliques")
    _add_graph_args(p)
    p.add_argument("--rho", type=int, default=1)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_cliques)

    p = sub.add_parser("select", help="dump a consolidated graph")
    _add_graph_args(p)
    p.add_argument("--rho", type=int, default=1)
    p.add_argument("--algorithm", choices=("aggressive", "conservative"), default="aggressive")
    p.add_argument("--center", type=int, help="1-based user whose local view to use (aggressive only)")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("schedule", help="multicolor a consolidated graph and report slot counts")
    _add_graph_args(p)
    p.add_argument("--rho", type=int, default=1)
    p.add_argument("--algorithm", choices=("aggressive", "conservative"), default="aggressive")
    p.add_argument("--epsilon", type=float, default=0.3)
    p.add_argument("--nbar", type=int)
    p.add_argument("--k-max", type=int, default=K_MAX_DEFAULT, help="slot budget; 0 disables the cap")
    p.add_argument("--out")
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser("experiment", help="run an experiment config or a figure preset")
    p.add_argument("--config", metavar="PATH")
    p.add_argument("--preset")
    p.add_argument("--seed", type=int, help="override master_seed")
    p.add_argument("--replications", type=int, help="override replications")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("check", help="run consistency and invariant checks on one graph")
    _add_graph_args(p)
    p.add_argument("--rho", type=int, default=1)
    p.add_argument("--tau", type=int, help="view radius (default 3*rho+1)")
    p.add_argument("--ms-slots", type=int, default=100, help="maximal-schedule slots to verify; 0 skips")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, GraphInputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
