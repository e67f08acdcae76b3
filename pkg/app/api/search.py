import argparse
import logging
from pathlib import Path

from app.api.common import EX_OK, UsageError, common_options, csv_text, json_text, write_output
from app.core.config import settings
from app.schemas.command import CommandSpec, OutputFormat
from app.schemas.optimizer import Direction, OptimizerConfig, OptimizerResult, SweepRow
from app.services import optimizer

logger = logging.getLogger(__name__)

DIRECTION_CHOICES = ["min", "max", "minimize", "maximize"]


def _config(spec: CommandSpec, args: argparse.Namespace, dimension: int) -> OptimizerConfig:
    return OptimizerConfig(
        dimension=dimension,
        direction=Direction.parse(args.direction),
        candidate_count=args.candidates,
        max_stale_rounds=args.stale_rounds,
        restarts=args.restarts,
        rng_seed=spec.rng_seed,
        weights=spec.weights,
        max_rounds=args.max_rounds,
        max_workers=args.workers,
    )


def _result_text(spec: CommandSpec, result: OptimizerResult) -> str:
    if spec.output_format is OutputFormat.CSV:
        row = SweepRow(D=result.best_graph.dimension, cbar=result.best_cbar, graph=result.best_graph)
        return optimizer.rows_to_csv([row])
    return result.model_dump_json(indent=2) + "\n"


def run_optimize(spec: CommandSpec, args: argparse.Namespace) -> int:
    cfg = _config(spec, args, args.d)
    logger.info(f"optimizing D={cfg.dimension} ({cfg.direction.value}), {cfg.restarts} restarts, seed {cfg.rng_seed}")
    result = optimizer.optimize(cfg, progress=args.progress)
    write_output(spec, _result_text(spec, result))

    if args.trace is not None:
        rows = [[s.restart, s.round, s.cbar] for s in result.cost_trace]
        args.trace.write_text(csv_text(["restart", "round", "cbar"], rows))
    return EX_OK


def run_brute_force(spec: CommandSpec, args: argparse.Namespace) -> int:
    result = optimizer.brute_force(args.d, Direction.parse(args.direction), spec.weights, progress=args.progress)
    write_output(spec, _result_text(spec, result))
    return EX_OK


def run_sweep(spec: CommandSpec, args: argparse.Namespace) -> int:
    """Best C-bar for every D in [d_min, d_max], plus a linear fit of the results."""
    if not 2 <= args.d_min <= args.d_max:
        raise UsageError(f"need 2 <= --d-min <= --d-max, got {args.d_min}..{args.d_max}")
    template = _config(spec, args, args.d_min)
    rows = optimizer.sweep_max(range(args.d_min, args.d_max + 1), template, progress=args.progress)

    if spec.output_format is OutputFormat.CSV:
        write_output(spec, optimizer.rows_to_csv(rows))
        return EX_OK

    fit = None
    if len(rows) >= 2:
        slope, intercept = optimizer.linear_fit(rows)
        fit = {"slope": slope, "intercept": intercept}
    payload = {
        "rows": [{"D": row.D, "cbar": row.cbar, "edges": optimizer.format_edges(row.graph)} for row in rows],
        "fit": fit,
    }
    write_output(spec, json_text(payload))
    return EX_OK


def _add_search_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--direction", choices=DIRECTION_CHOICES, default="max",
                        help="Search for the minimum or the maximum C-bar (default: max)")
    parser.add_argument("--candidates", type=int, default=settings.CANDIDATE_COUNT,
                        help="Candidate neighbours per move, at most 20")
    parser.add_argument("--stale-rounds", type=int, default=settings.MAX_STALE_ROUNDS,
                        help="Stop a restart after this many rounds without improvement")
    parser.add_argument("--restarts", type=int, default=settings.RESTARTS)
    parser.add_argument("--max-rounds", type=int, default=None, help="Hard cap on rounds per restart")
    parser.add_argument("--workers", type=int, default=None, help="Run restarts on this many threads")


def register(subparsers: argparse._SubParsersAction) -> None:
    optimize = subparsers.add_parser("optimize", parents=[common_options(seed_vertex=False)],
                                     help="Stochastic greedy search for extremal C-bar graphs")
    optimize.add_argument("--d", type=int, required=True, help="Number of vertices")
    _add_search_options(optimize)
    optimize.add_argument("--trace", type=Path, default=None,
                          help="Also write the cost trace as CSV to this file")
    optimize.set_defaults(handler=run_optimize)

    brute_force = subparsers.add_parser("brute-force", parents=[common_options(seed_vertex=False, seed=False)],
                                        help="Exact extremum over all connected graphs (D <= 7)")
    brute_force.add_argument("--d", type=int, required=True, help="Number of vertices")
    brute_force.add_argument("--direction", choices=DIRECTION_CHOICES, default="max",
                             help="Search for the minimum or the maximum C-bar (default: max)")
    brute_force.set_defaults(handler=run_brute_force)

    sweep = subparsers.add_parser("sweep", parents=[common_options(seed_vertex=False)],
                                  help="Run the optimizer for a range of D")
    sweep.add_argument("--d-min", type=int, default=3)
    sweep.add_argument("--d-max", type=int, default=20)
    _add_search_options(sweep)
    sweep.set_defaults(handler=run_sweep)
