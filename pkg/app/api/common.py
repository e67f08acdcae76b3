import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Any, Iterable, List, Sequence

from app.core.config import settings
from app.core.errors import SpreadComplexityError
from app.schemas.command import CommandSpec, OutputFormat, Subcommand
from app.schemas.complexity import WeightSequence
from app.schemas.family import GraphFamily
from app.schemas.graph import Graph
from app.services import graphs
from app.services.serialization import parse_graph

EX_OK = 0
EX_DATAERR = 1
EX_DISCONNECTED = 2
EX_USAGE = 64
EX_INFEASIBLE = 65

FAMILY_CHOICES = ["path", "complete", "star", "hub-k-regular", "m-ary-tree", "glued-tree"]
FAMILY_FLAGS = {"d": "D", "k": "k", "m": "m", "h": "h", "n": "n"}


class UsageError(SpreadComplexityError):
    """Flags that parse individually but do not make a valid command."""


class CommandParser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def weights_arg(value: str) -> WeightSequence:
    if value == "linear":
        return WeightSequence.linear()
    try:
        return WeightSequence.from_file(Path(value))
    except OSError as exc:
        raise argparse.ArgumentTypeError(f"cannot read weights file {value!r}: {exc.strerror}")


def common_options(
    table_format: bool = True,
    seed_vertex: bool = True,
    weights: bool = True,
    seed: bool = True,
) -> argparse.ArgumentParser:
    """Flags shared by the subcommands; each one opts out of the flags it never reads."""
    parent = argparse.ArgumentParser(add_help=False)
    if seed_vertex:
        parent.add_argument("--seed-vertex", type=int, default=0, help="Vertex the walk starts from (default: 0)")
    if weights:
        parent.add_argument("--weights", type=weights_arg, default=WeightSequence.linear(),
                            help="'linear' for w_n = n, or a file of whitespace-separated weights")
    if seed:
        parent.add_argument("--seed", type=int, default=None,
                            help=f"Seed for randomized commands and hub relabeling (default: {settings.DEFAULT_SEED})")
    if table_format:
        parent.add_argument("--format", dest="output_format", choices=[f.value for f in OutputFormat],
                            default=OutputFormat.JSON.value, help="Output format (default: json)")
    parent.add_argument("--out", type=Path, default=None, help="Output file; stdout when omitted or '-'")
    parent.add_argument("--progress", action="store_true", help="Show progress bars on stderr")
    parent.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO logs, -vv for DEBUG")
    return parent


def add_graph_source(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--graph", type=Path, help="Graph file (edge list or JSON)")
    source.add_argument("--family", choices=FAMILY_CHOICES, help="Generate the graph from a named family")
    for flag, name in FAMILY_FLAGS.items():
        parser.add_argument(f"--{flag}", type=int, default=None, help=f"Family parameter {name}")


def command_spec(args: argparse.Namespace) -> CommandSpec:
    family = getattr(args, "family", None)
    params = {name: getattr(args, flag) for flag, name in FAMILY_FLAGS.items()
              if family and getattr(args, flag, None) is not None}
    out = args.out if args.out is not None and str(args.out) != "-" else None
    seed = getattr(args, "seed", None)
    return CommandSpec(
        subcommand=Subcommand(args.subcommand),
        graph_path=getattr(args, "graph", None),
        family=GraphFamily.parse(family) if family else None,
        family_params=params,
        output_format=getattr(args, "output_format", OutputFormat.JSON),
        graph_format=getattr(args, "graph_format", None) or "edge-list",
        rng_seed=seed if seed is not None else settings.DEFAULT_SEED,
        family_seed=seed if family else None,
        weights=getattr(args, "weights", None) or WeightSequence.linear(),
        seed_vertex=getattr(args, "seed_vertex", 0),
        out=out,
    )


def _family_param(spec: CommandSpec, name: str) -> int:
    if name not in spec.family_params:
        flag = next(flag for flag, param in FAMILY_FLAGS.items() if param == name)
        raise UsageError(f"--family {spec.family.value.replace('_', '-')} needs --{flag}")
    return spec.family_params[name]


def load_graph(spec: CommandSpec) -> Graph:
    if spec.graph_path is not None:
        return parse_graph(spec.graph_path.read_bytes())

    family = spec.family
    if family is GraphFamily.PATH:
        return graphs.make_path(_family_param(spec, "D"))
    if family is GraphFamily.COMPLETE:
        return graphs.make_complete(_family_param(spec, "D"))
    if family is GraphFamily.STAR:
        return graphs.make_star(_family_param(spec, "D"))
    if family is GraphFamily.HUB_K_REGULAR:
        return graphs.make_hub_k_regular(_family_param(spec, "D"), _family_param(spec, "k"), spec.family_seed)
    if family is GraphFamily.M_ARY_TREE:
        return graphs.make_m_ary_tree(_family_param(spec, "m"), _family_param(spec, "h"))
    return graphs.make_glued_tree(_family_param(spec, "n"))


def check_seed_vertex(spec: CommandSpec, g: Graph) -> None:
    if spec.seed_vertex >= g.dimension:
        raise UsageError(f"--seed-vertex {spec.seed_vertex} out of range for D={g.dimension}")


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def json_text(payload: Any) -> str:
    return json.dumps(payload, indent=2) + "\n"


def table_text(spec: CommandSpec, header: List[str], rows: List[Sequence[Any]]) -> str:
    """A table as CSV, or as a JSON list of objects keyed by the header."""
    if spec.output_format is OutputFormat.CSV:
        return csv_text(header, rows)
    return json_text([dict(zip(header, row)) for row in rows])


def write_output(spec: CommandSpec, text: str) -> None:
    if spec.out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        spec.out.write_text(text)
