import argparse
import sys
from typing import List, Optional

from pydantic import ValidationError

from app.cli.commands import COMMANDS
from app.cli.common import add_common_arguments
from app.core.config import settings
from app.core.errors import ConfigError, InvalidArgumentError, LangevinError
from app.core.logger import configure_logging, get_logger

logger = get_logger(__name__)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    add_common_arguments(common)

    parser = argparse.ArgumentParser(
        prog="langevin",
        description=f"{settings.PROJECT_NAME} {settings.VERSION}: penalized Langevin samplers, planner and bounds",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    # Include commands
    for command in COMMANDS:
        command.register(subparsers, common)
    return parser


def format_validation_error(exc: ValidationError) -> str:
    """Une ligne par erreur, préfixée du chemin du champ fautif"""
    lines = []
    for error in exc.errors():
        location = ".".join(str(part) for part in error["loc"]) or "config"
        lines.append(f"{location}: {error['msg']}")
    return "; ".join(lines)


def check_overrides(args) -> None:
    if args.seed is not None and not 0 <= args.seed < 2 ** 64:
        raise InvalidArgumentError(f"--seed must be in [0, 2^64), got {args.seed}")
    if args.threads is not None and args.threads < 1:
        raise InvalidArgumentError(f"--threads must be positive, got {args.threads}")


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        check_overrides(args)
        return args.func(args)
    except ValidationError as exc:
        print(f"{args.command}: invalid configuration: {format_validation_error(exc)}", file=sys.stderr)
        return ConfigError.exit_code
    except LangevinError as exc:
        logger.debug(f"{args.command} failed", exc_info=True)
        print(f"{args.command}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
