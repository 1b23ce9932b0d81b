#!/usr/bin/env python3
"""
fglaw - formal group laws of elliptic curves over finite fields.

This is the main entry point. It loads the configuration, discovers the
subcommands in src/workbench/contrib/ and runs the one named on the
command line. Documents go to stdout (or --out); logs and diagnostics go
to stderr.
"""

import logging
import sys
from typing import Optional, Sequence

from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape

from src.core.errors import FglawError
from src.services.settings import load_config
from src.workbench import CLIIntegration, get_registry


def configure_logging(verbose: bool, console: Console) -> None:
    """Root logger on stderr: DEBUG with --verbose, WARNING otherwise."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=console, show_path=verbose, markup=False)],
        force=True,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point; returns the process exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = Console(highlight=False, soft_wrap=True)
    stderr = Console(stderr=True)
    configure_logging("--verbose" in argv or "-v" in argv, stderr)
    argv = ["--verbose" if a == "-v" else a for a in argv]

    try:
        config = load_config()
    except FglawError as e:
        stderr.print(f"[red]error:[/] {escape(str(e))}", highlight=False)
        return e.exit_code

    cli = CLIIntegration(stdout, config, get_registry(), stderr)
    if cli.has_discovery_issues():
        cli.show_discovery_errors()

    if not [a for a in argv if a != "--verbose"]:
        cli.render_command_table("fglaw commands")
        return 0
    return cli.run(argv)


if __name__ == "__main__":
    sys.exit(main())
