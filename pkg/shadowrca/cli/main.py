# shadowrca/cli/main.py
"""
Command-line entry point
"""
import argparse
import sys
from typing import Optional, Sequence

from shadowrca import __version__
from shadowrca.cli.commands import COMMANDS
from shadowrca.cli.error_handler import CliErrorHandler
from shadowrca.config import get_settings
from shadowrca.monitoring.logging_config import setup_logging
from shadowrca.monitoring.metrics import setup_metrics


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shadowrca",
        description="Digital-shadow fault diagnosis for publish/subscribe systems",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", help="Diagnostic log level (default: SHADOWRCA_LOG_LEVEL or WARNING)")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one command and return its exit code

    0 success, 1 unexpected error, 2 parse or configuration error,
    3 I/O failure, 4 no symptoms detected.
    """
    args = build_parser().parse_args(argv)
    settings = get_settings()

    setup_logging(args.log_level or settings.log_level, settings.log_format)
    if settings.enable_metrics:
        setup_metrics()

    error_handler = CliErrorHandler()
    try:
        return args.handler(args, settings)
    except Exception as e:
        return error_handler.exit_code(e)


def run() -> None:
    sys.exit(main())
