import argparse

from app.api.common import EX_OK, UsageError, add_graph_source, common_options, load_graph, table_text, write_output
from app.schemas.command import CommandSpec
from app.services.analytic import reference_rows
from app.services.serialization import GraphFormat, serialize_graph

REFERENCE_COLUMNS = ["D", "complete", "star", "path", "binary_tree", "max_fit"]


def run_generate(spec: CommandSpec, args: argparse.Namespace) -> int:
    g = load_graph(spec)
    write_output(spec, serialize_graph(g, spec.graph_format).decode("ascii"))
    return EX_OK


def run_reference(spec: CommandSpec, args: argparse.Namespace) -> int:
    """Closed-form curves drawn under optimizer results: complete, star, path, binary tree, max fit."""
    if not 1 <= args.d_min <= args.d_max:
        raise UsageError(f"need 1 <= --d-min <= --d-max, got {args.d_min}..{args.d_max}")
    rows = reference_rows(range(args.d_min, args.d_max + 1))
    write_output(spec, table_text(spec, REFERENCE_COLUMNS, [[row[c] for c in REFERENCE_COLUMNS] for row in rows]))
    return EX_OK


def register(subparsers: argparse._SubParsersAction) -> None:
    generate_options = common_options(table_format=False, seed_vertex=False, weights=False)
    generate = subparsers.add_parser("generate", parents=[generate_options],
                                     help="Write a family graph as an edge list, JSON or DOT")
    add_graph_source(generate)
    generate.add_argument("--format", dest="graph_format", choices=[f.value for f in GraphFormat],
                          default=GraphFormat.EDGE_LIST.value, help="Graph format (default: edge-list)")
    generate.set_defaults(handler=run_generate)

    reference_options = common_options(seed_vertex=False, weights=False, seed=False)
    reference = subparsers.add_parser("reference", parents=[reference_options],
                                      help="Reference C-bar curves against D")
    reference.add_argument("--d-min", type=int, default=2)
    reference.add_argument("--d-max", type=int, default=30)
    reference.set_defaults(handler=run_reference)
