# shadowrca/cli/commands/__init__.py
"""
Subcommands; each module exposes register(subparsers)
"""
from shadowrca.cli.commands import analyze, collect, inspect, simulate

COMMANDS = (simulate, analyze, inspect, collect)
