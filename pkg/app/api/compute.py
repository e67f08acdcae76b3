import argparse
import logging

import numpy as np

from app.api.common import (
    EX_DISCONNECTED,
    EX_OK,
    add_graph_source,
    check_seed_vertex,
    common_options,
    csv_text,
    json_text,
    load_graph,
    table_text,
    write_output,
)
from app.schemas.command import CommandSpec, OutputFormat
from app.services import krylov

logger = logging.getLogger(__name__)

DEFAULT_TIMES = np.logspace(0, 4, 41)


def run_compute(spec: CommandSpec, args: argparse.Namespace) -> int:
    g = load_graph(spec)
    check_seed_vertex(spec, g)
    report = krylov.cbar(g, spec.seed_vertex, spec.weights)

    if spec.output_format is OutputFormat.CSV:
        kappa = ";".join(repr(value) for value in report.kappa)
        text = csv_text(
            ["seed", "d_K", "cbar", "degenerate", "connected", "kappa"],
            [[report.seed, report.krylov_dim, report.cbar, report.degenerate, report.connected, kappa]],
        )
    else:
        text = report.to_json() + "\n"
    write_output(spec, text)

    if not report.connected:
        logger.warning(f"graph is disconnected; cbar covers the component of vertex {spec.seed_vertex} only")
        return EX_DISCONNECTED
    return EX_OK


def run_convergence(spec: CommandSpec, args: argparse.Namespace) -> int:
    """Finite-window averages approaching the long-time average."""
    g = load_graph(spec)
    check_seed_vertex(spec, g)
    times = DEFAULT_TIMES if args.times is None else args.times

    limit = krylov.cbar(g, spec.seed_vertex, spec.weights).cbar
    rows = [[float(T), krylov.finite_time_average(g, spec.seed_vertex, T, spec.weights), limit] for T in times]
    write_output(spec, table_text(spec, ["T", "cbar_T", "cbar_infinity"], rows))
    return EX_OK


def run_limiting(spec: CommandSpec, args: argparse.Namespace) -> int:
    g = load_graph(spec)
    check_seed_vertex(spec, g)
    chi = krylov.limiting_distribution(g, spec.seed_vertex)

    if spec.output_format is OutputFormat.CSV:
        text = csv_text(["vertex", "chi"], [[v, float(p)] for v, p in enumerate(chi)])
    else:
        text = json_text({"seed": spec.seed_vertex, "chi": chi.tolist()})
    write_output(spec, text)
    return EX_OK


def register(subparsers: argparse._SubParsersAction) -> None:
    compute = subparsers.add_parser("compute", parents=[common_options()],
                                    help="Long-time average spread complexity of one graph")
    add_graph_source(compute)
    compute.set_defaults(handler=run_compute)

    convergence = subparsers.add_parser("convergence", parents=[common_options()],
                                        help="Finite-time averages against the long-time average")
    add_graph_source(convergence)
    convergence.add_argument("--times", type=float, nargs="*", default=None,
                             help="Averaging windows T (default: 41 log-spaced values in [1, 1e4])")
    convergence.set_defaults(handler=run_convergence)

    limiting = subparsers.add_parser("limiting", parents=[common_options(weights=False)],
                                     help="Long-time vertex distribution of the walk")
    add_graph_source(limiting)
    limiting.set_defaults(handler=run_limiting)
