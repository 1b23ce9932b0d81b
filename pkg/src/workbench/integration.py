"""CLI Integration for the contrib command system.

Bridges the command registry and the argparse front end: builds one
subparser per registered command, turns parsed arguments into a JobSpec,
runs the command and writes its document as JSON or text.
"""

import argparse
import asyncio
import logging
from pathlib import Path
from typing import Optional, Sequence

from rich import box
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from src.core.config import DEFAULT_CONFIG, EngineConfig
from src.core.errors import FglawError, UsageError
from src.core.types import OutputFormat
from src.services.serialization import render

from .contract import CommandCategory, CommandContext, CommandResult, JobSpec
from .discovery import LoadedCommand
from .registry import CommandRegistry, get_registry


logger = logging.getLogger(__name__)

OPTION_HELP = {
    "prec": "truncation precision N (total degree)",
    "n": "integer argument (multiplier, sample count)",
    "solve_degree": "solve-field extension degree (0 = grow automatically)",
    "bound": "last coefficient index to solve for",
    "seed": "random seed",
    "threads": "worker threads",
}


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class CLIIntegration:
    """Integrates discovered commands with the command line."""

    CATEGORY_DISPLAY = {
        CommandCategory.LAW: ("Formal group laws", "bright_cyan"),
        CommandCategory.CURVE: ("Curves", "bright_green"),
        CommandCategory.HOMOMORPHISM: ("Homomorphisms", "bright_magenta"),
    }

    def __init__(
        self,
        console: Console,
        config: EngineConfig = DEFAULT_CONFIG,
        registry: Optional[CommandRegistry] = None,
        error_console: Optional[Console] = None,
    ):
        self.console = console
        self.error_console = error_console or Console(stderr=True)
        self.config = config
        self.registry = registry or get_registry()

    # Parsing

    def build_parser(self, prog: str = "fglaw") -> argparse.ArgumentParser:
        parser = _Parser(prog=prog, description="Formal group laws of elliptic curves over finite fields.")
        parser.add_argument("--verbose", action="store_true", help="debug logging on stderr")
        subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)

        for command in self.registry.list_enabled():
            m = command.manifest
            sub = subparsers.add_parser(m.name, help=m.description, description=m.description)
            for arg in m.arguments:
                if arg.required:
                    sub.add_argument(arg.name, help=arg.help)
                else:
                    sub.add_argument(arg.name, nargs="?", default=None, help=arg.help)
            for option in m.options:
                flag = "--" + option.replace("_", "-")
                sub.add_argument(flag, dest=option, type=int, default=None, help=OPTION_HELP[option])
            sub.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.JSON.value)
            sub.add_argument("--out", default=None, help="write the document here instead of stdout")
            sub.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS)
        return parser

    def parse_job(self, argv: Sequence[str]) -> tuple[JobSpec, bool]:
        """(job, verbose) from command line arguments."""
        args = self.build_parser().parse_args(list(argv))
        if not args.command:
            raise UsageError("No command given; run with --help for the list")
        command = self.registry.get(args.command)
        job = JobSpec(
            command=args.command,
            files=[getattr(args, a.name) for a in command.manifest.arguments],
            format=OutputFormat(args.format),
            out=args.out,
        )
        for option in command.manifest.options:
            setattr(job, option, getattr(args, option))
        self._validate_job(job)
        return job, bool(getattr(args, "verbose", False))

    def _validate_job(self, job: JobSpec) -> None:
        if job.prec is not None and not 2 <= job.prec <= self.config.max_precision:
            raise UsageError(f"--prec must lie in [2, {self.config.max_precision}], got {job.prec}")
        if job.threads is not None and job.threads < 1:
            raise UsageError(f"--threads must be positive, got {job.threads}")
        if job.solve_degree is not None and job.solve_degree < 0:
            raise UsageError(f"--solve-degree must be nonnegative, got {job.solve_degree}")
        if job.bound is not None and job.bound < 1:
            raise UsageError(f"--bound must be positive, got {job.bound}")

    # Execution

    async def execute_command(self, command: LoadedCommand, job: JobSpec) -> CommandResult:
        """Run a command, mapping library errors to their exit codes."""
        ctx = CommandContext(console=self.console, job=job, config=self.config)
        try:
            result = command.run(ctx)
            if asyncio.iscoroutine(result):
                result = await result
        except FglawError as e:
            logger.debug(f"{job.command} failed: {type(e).__name__}: {e}")
            return CommandResult(success=False, error=f"{type(e).__name__}: {e}", exit_code=e.exit_code)

        if not isinstance(result, CommandResult):
            return CommandResult(success=True, document=result)
        return result

    def execute_command_sync(self, command: LoadedCommand, job: JobSpec) -> CommandResult:
        return asyncio.run(self.execute_command(command, job))

    def emit(self, result: CommandResult, job: JobSpec) -> None:
        """Write the rendered document to --out or stdout."""
        if result.document is None:
            return
        text = render(result.document, job.format)
        if job.out:
            try:
                Path(job.out).write_text(text, encoding="utf-8")
            except OSError as e:
                raise UsageError(f"Cannot write {job.out}: {e}") from e
        else:
            self.console.file.write(text)
            self.console.file.flush()

    def run(self, argv: Sequence[str]) -> int:
        """Parse, execute and emit; returns the process exit code."""
        try:
            job, _ = self.parse_job(argv)
            command = self.registry.get(job.command)
            result = self.execute_command_sync(command, job)
            self.emit(result, job)
        except FglawError as e:
            self.error_console.print(f"[red]error:[/] {escape(str(e))}", highlight=False)
            return e.exit_code

        if not result.success:
            self.error_console.print(f"[red]error:[/] {escape(result.error or result.message)}", highlight=False)
            return result.exit_code or 1
        if result.message:
            self.error_console.print(f"[dim]{escape(result.message)}[/]", highlight=False)
        return 0

    # Display

    def render_command_table(self, title: str = "Commands") -> None:
        table = Table(title=title, box=box.ROUNDED, border_style="dim", show_header=True, padding=(0, 2))
        table.add_column("Command", style="bold", width=22)
        table.add_column("Arguments", width=24)
        table.add_column("Description", style="dim")

        for category, commands in self.registry.get_categories_with_commands():
            cat_name, cat_color = self.CATEGORY_DISPLAY[category]
            table.add_row(f"[bold {cat_color}]{cat_name}[/]", "", "")
            for command in commands:
                m = command.manifest
                args = " ".join(a.name.upper() if a.required else f"[{a.name.upper()}]" for a in m.arguments)
                table.add_row(f"  [{m.color}]{m.icon} {m.name}[/]", escape(args), m.description)

        self.console.print(table)

    def show_discovery_errors(self) -> None:
        errors = self.registry.get_errors()
        warnings = self.registry.get_warnings()

        if errors:
            self.error_console.print("\n[bold red]Command Discovery Errors:[/]")
            for err in errors:
                path_display = err.command_path if err.command_path else "(global)"
                self.error_console.print(f"  [red]✗[/] {path_display}: {err.message}")

        if warnings:
            self.error_console.print("\n[bold yellow]Warnings:[/]")
            for warn in warnings:
                self.error_console.print(f"  [yellow]⚠[/] {warn}")

    def has_discovery_issues(self) -> bool:
        return self.registry.has_errors() or bool(self.registry.get_warnings())
