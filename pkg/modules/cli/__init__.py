"""
CLI Module Package

This package contains the command line entry point:
- Argument parsing, subcommands and exit-code mapping (cli_commands)
"""

from .cli_commands import build_parser, parse_arguments, run, main, inspect_report, json_ready, COMMANDS

__all__ = ['build_parser', 'parse_arguments', 'run', 'main', 'inspect_report', 'json_ready', 'COMMANDS']
