# shadowrca/cli/commands/collect.py
"""
`shadowrca collect-processes`: snapshot the local process table
"""
import argparse
from pathlib import Path

from shadowrca.cli.dependencies import get_repository
from shadowrca.config import Settings
from shadowrca.infrastructure.collectors.process_collector import ProcessCollector


def register(subparsers) -> None:
    parser = subparsers.add_parser("collect-processes", help="Write a process snapshot of this machine")
    parser.add_argument("--out", type=Path, required=True, help="Snapshot file (JSON Lines)")
    parser.add_argument("--interval", type=float, default=0.5, help="CPU sampling interval in seconds")
    parser.set_defaults(handler=execute)


def execute(args: argparse.Namespace, settings: Settings) -> int:
    records = ProcessCollector(interval_s=args.interval).collect()
    get_repository(settings).save_processes(args.out, records)
    print(f"collected {len(records)} processes -> {args.out}")
    return 0
