"""Command-line harness.

Subcommands: ``gen-instance``, ``solve-hca``, ``solve-variant``, ``bench``,
``validate``. Exit codes: 0 success, 1 configuration error, 2 solver failure
(or, for ``bench``, zero successful pairs; for ``validate``, violations).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .bench import BenchConfig, emit_csv, emit_plot_data, run_benchmark
from .comm import CommConfig, comm_time
from .conflicts import validate_solution
from .grid import GridMap, MapFormatError, generate_random_map, parse_movingai_map, serialize_movingai_map
from .instances import (
    GenerationError,
    ScenarioFormatError,
    generate_instance,
    read_scenario,
    write_instance_metadata,
    write_scenario,
)
from .search import TimedPath
from .solver import (
    InvalidInstanceError,
    ProblemInstance,
    SolveFailure,
    VariantConfig,
    solve_hca,
    solve_variant,
)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_SOLVER = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # config errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_CONFIG)


def _load_map(path: str) -> GridMap:
    return parse_movingai_map(Path(path).read_text())


def _load_instance(map_path: str, scen_path: str) -> tuple[GridMap, ProblemInstance]:
    grid = _load_map(map_path)
    instance = read_scenario(Path(scen_path).read_text(), grid)
    return grid, instance


def write_paths(paths: dict[int, TimedPath]) -> str:
    """One line per agent: ``agent: x,y,t x,y,t ...``."""
    lines = []
    for agent in sorted(paths):
        states = " ".join(f"{x},{y},{t}" for x, y, t in paths[agent].states)
        lines.append(f"{agent}: {states}")
    return "\n".join(lines) + "\n"


def read_paths(text: str) -> dict[int, TimedPath]:
    """Inverse of ``write_paths``."""
    paths: dict[int, TimedPath] = {}
    for ln in text.splitlines():
        if not ln.strip():
            continue
        head, _, rest = ln.partition(":")
        agent = int(head)
        states = tuple(
            tuple(int(v) for v in token.split(",")) for token in rest.split()
        )
        paths[agent] = TimedPath(agent, states)  # type: ignore[arg-type]
    return paths


def _print_solution(label: str, solution) -> None:
    print(f"{label}: sum_of_costs={solution.sum_of_costs} makespan={solution.makespan}")


def _cmd_gen_instance(args) -> int:
    if args.map:
        grid = _load_map(args.map)
        map_name = Path(args.map).name
    else:
        grid = generate_random_map(args.width, args.height, args.p_obstacle, args.seed)
        map_name = Path(args.map_out).name if args.map_out else "random.map"
    if args.map_out:
        Path(args.map_out).write_text(serialize_movingai_map(grid))
    instance = generate_instance(grid, args.agents, args.seed)
    Path(args.out).write_text(write_scenario(instance, map_name))
    if args.meta_out:
        Path(args.meta_out).write_text(write_instance_metadata(instance))
    print(f"wrote {args.agents} agents to {args.out}")
    return EXIT_OK


def _cmd_solve_hca(args) -> int:
    _, instance = _load_instance(args.map, args.scen)
    if args.order:
        order = [int(v) for v in args.order.split(",")]
    else:
        order = [int(a) for a in np.random.default_rng(args.order_seed).permutation(instance.n_agents)]
    try:
        solution = solve_hca(instance, order, args.timeout)
    except SolveFailure as exc:
        print(f"solver failed: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    _print_solution("hca", solution)
    if args.paths_out:
        Path(args.paths_out).write_text(write_paths(solution.paths))
    return EXIT_OK


def _cmd_solve_variant(args) -> int:
    _, instance = _load_instance(args.map, args.scen)
    cfg = VariantConfig(
        exact_threshold=args.exact_threshold,
        workers=args.workers,
        comm=CommConfig(args.data_rate),
    )
    try:
        solution, trace = solve_variant(instance, cfg, args.timeout)
    except SolveFailure as exc:
        print(f"solver failed: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    _print_solution("variant", solution)
    print(
        f"iterations={trace.n_iterations} comm_bits={trace.ledger.total_bits()} "
        f"comm_seconds={comm_time(trace.ledger, cfg.comm):.6g}"
    )
    if args.paths_out:
        Path(args.paths_out).write_text(write_paths(solution.paths))
    return EXIT_OK


def _cmd_bench(args) -> int:
    cfg = BenchConfig(
        n_agents=args.agents,
        n_instances=args.instances,
        seed=args.seed,
        width=args.width,
        height=args.height,
        p_obstacle=args.p_obstacle,
        map_file=args.map,
        data_rate=args.data_rate,
        workers=args.workers,
        exact_threshold=args.exact_threshold,
        timeout=args.timeout,
    )
    records, summary = run_benchmark(cfg)
    if args.csv:
        Path(args.csv).write_text(emit_csv(records))
    if args.plot_data:
        Path(args.plot_data).write_text(emit_plot_data(records))
    print(f"instances={len(records)} ok={summary.successes} failed={summary.failures}")
    for name, stats in summary.columns.items():
        print(
            f"{name}: avg={stats.avg:.4f} min={stats.min:.4f} "
            f"max={stats.max:.4f} median={stats.median:.4f}"
        )
    if summary.successes == 0:
        print("no successful pairs", file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK


def _cmd_validate(args) -> int:
    grid, instance = _load_instance(args.map, args.scen)
    try:
        instance.validate(check_reachability=not args.no_reachability)
    except InvalidInstanceError as exc:
        print(f"invalid instance: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    if args.paths:
        paths = read_paths(Path(args.paths).read_text())
        violations = validate_solution(paths, grid, dict(enumerate(instance.agents)))
        if violations:
            for v in violations:
                print(v, file=sys.stderr)
            return EXIT_SOLVER
        print(f"solution valid ({len(paths)} agents)")
    else:
        print(f"instance valid ({instance.n_agents} agents)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mapfkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-instance", help="generate a solvable instance")
    p.add_argument("--map", help="MovingAI .map file (omit to generate a random map)")
    p.add_argument("--width", type=int, default=50)
    p.add_argument("--height", type=int, default=50)
    p.add_argument("--p-obstacle", type=float, default=0.1)
    p.add_argument("--agents", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="scenario output path")
    p.add_argument("--map-out", help="write the (generated) map here")
    p.add_argument("--meta-out", help="write the reproducibility sidecar here")
    p.set_defaults(func=_cmd_gen_instance)

    p = sub.add_parser("solve-hca", help="prioritized planning baseline")
    p.add_argument("--map", required=True)
    p.add_argument("--scen", required=True)
    p.add_argument("--order", help="comma-separated agent ids (default: random order)")
    p.add_argument("--order-seed", type=int, default=0)
    p.add_argument("--timeout", type=float, default=60.0)
    p.add_argument("--paths-out", help="dump the solution paths here")
    p.set_defaults(func=_cmd_solve_hca)

    p = sub.add_parser("solve-variant", help="iterated independent-set planner")
    p.add_argument("--map", required=True)
    p.add_argument("--scen", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--exact-threshold", type=int, default=10)
    p.add_argument("--data-rate", type=float, default=CommConfig().data_rate)
    p.add_argument("--timeout", type=float, default=60.0)
    p.add_argument("--paths-out", help="dump the solution paths here")
    p.set_defaults(func=_cmd_solve_variant)

    p = sub.add_parser("bench", help="paired benchmark over generated instances")
    p.add_argument("--map", help="fixed map file (default: fresh random map per instance)")
    p.add_argument("--width", type=int, default=50)
    p.add_argument("--height", type=int, default=50)
    p.add_argument("--p-obstacle", type=float, default=0.1)
    p.add_argument("--agents", type=int, default=16)
    p.add_argument("--instances", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--data-rate", type=float, default=CommConfig().data_rate)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--exact-threshold", type=int, default=10)
    p.add_argument("--timeout", type=float, default=60.0)
    p.add_argument("--csv", help="write per-instance records here")
    p.add_argument("--plot-data", help="write plot series here")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("validate", help="check a scenario (and optionally a solution)")
    p.add_argument("--map", required=True)
    p.add_argument("--scen", required=True)
    p.add_argument("--paths", help="solution paths file from --paths-out")
    p.add_argument("--no-reachability", action="store_true")
    p.set_defaults(func=_cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_CONFIG
    try:
        return args.func(args)
    except (OSError, MapFormatError, ScenarioFormatError, InvalidInstanceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except GenerationError as exc:
        print(f"generation failed: {exc}", file=sys.stderr)
        return EXIT_SOLVER


def entry() -> None:
    raise SystemExit(main())
