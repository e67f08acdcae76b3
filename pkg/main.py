import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from app.api import compute, generate, search
from app.api.common import EX_DATAERR, EX_INFEASIBLE, EX_USAGE, CommandParser, UsageError, command_spec
from app.core.config import settings
from app.core.errors import GraphFormatError, InfeasibleParametersError


def build_parser() -> CommandParser:
    parser = CommandParser(
        prog="spreadcx",
        description=f"{settings.PROJECT_NAME}: spread complexity of continuous-time quantum walks on graphs",
    )
    subparsers = parser.add_subparsers(dest="subcommand", required=True, metavar="COMMAND")

    # Include command groups
    compute.register(subparsers)
    generate.register(subparsers)
    search.register(subparsers)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = {0: settings.LOG_LEVEL, 1: "INFO"}.get(verbosity, "DEBUG")
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def _fail(code: int, message: str) -> int:
    sys.stderr.write(f"spreadcx: error: {message}\n")
    return code


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EX_USAGE

    _configure_logging(args.verbose)
    try:
        spec = command_spec(args)
        return args.handler(spec, args)
    except GraphFormatError as exc:
        return _fail(EX_DATAERR, str(exc))
    except InfeasibleParametersError as exc:
        return _fail(EX_INFEASIBLE, str(exc))
    except OSError as exc:
        return _fail(EX_DATAERR, f"{exc.filename}: {exc.strerror}")
    except ValidationError as exc:
        return _fail(EX_USAGE, "; ".join(error["msg"] for error in exc.errors()))
    except (UsageError, ValueError) as exc:
        return _fail(EX_USAGE, str(exc))


if __name__ == "__main__":
    sys.exit(main())
