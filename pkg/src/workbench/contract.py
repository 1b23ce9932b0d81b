"""Command contract types for the contrib discovery system.

Every subcommand under contrib/ exports a MANIFEST (CommandManifest) and a
run(ctx: CommandContext) -> CommandResult function. These types live in
workbench so the commands share one definition of a job and its result.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Awaitable, Callable, Optional, Union

from rich.console import Console

from src.core.config import DEFAULT_CONFIG, EngineConfig, default_precision
from src.core.errors import BoundExceeded, UsageError
from src.core.types import OutputFormat


class CommandCategory(Enum):
    """Groups used to order subcommands in help output."""
    LAW = "law"                     # group laws, axioms, [n], negation
    CURVE = "curve"                 # point counts and classification
    HOMOMORPHISM = "homomorphism"   # isogenies and the relation solver


# Option flags a command may accept; anything else is a usage error.
SHARED_OPTIONS = ("prec", "n", "solve_degree", "bound", "seed", "threads")


@dataclass
class ArgumentSpec:
    """A positional file argument.

    Attributes:
        name: Destination name (e.g. "curve")
        help: Help text
        required: Optional arguments are declared nargs="?"
    """
    name: str
    help: str
    required: bool = True


@dataclass
class CommandManifest:
    """Metadata describing a subcommand.

    Required fields:
        name: Subcommand name as typed (e.g. "group-law")
        display_name: Human-readable name
        description: One-line help text
        icon: Symbol shown in the command table
        color: Rich color name
        category: CommandCategory

    Optional fields:
        arguments: Positional file arguments
        options: Subset of SHARED_OPTIONS the command reads
        version: Semantic version
        enabled: Disabled commands are not offered
        menu_order: Lower numbers are listed first
    """
    name: str
    display_name: str
    description: str
    icon: str
    color: str
    category: CommandCategory

    arguments: list[ArgumentSpec] = field(default_factory=list)
    options: list[str] = field(default_factory=list)
    version: str = "1.0.0"
    enabled: bool = True
    menu_order: int = 50


@dataclass
class JobSpec:
    """One parsed invocation."""
    command: str
    files: list[Optional[str]] = field(default_factory=list)
    prec: Optional[int] = None
    n: Optional[int] = None
    solve_degree: Optional[int] = None
    bound: Optional[int] = None
    seed: Optional[int] = None
    threads: Optional[int] = None
    format: OutputFormat = OutputFormat.JSON
    out: Optional[str] = None


@dataclass
class CommandContext:
    """Runtime context passed to command run functions."""
    console: Console
    job: JobSpec
    config: EngineConfig = DEFAULT_CONFIG

    @property
    def seed(self) -> int:
        return self.job.seed if self.job.seed is not None else self.config.default_seed

    @property
    def threads(self) -> int:
        return self.job.threads or self.config.threads

    def precision(self, p: int) -> int:
        """--prec, or the default that exposes the tau^(p^2) coefficient of [p]."""
        prec = self.job.prec if self.job.prec is not None else default_precision(p)
        if prec > self.config.max_precision:
            raise BoundExceeded(f"Precision {prec} exceeds configured bound {self.config.max_precision}")
        return prec

    def require_n(self) -> int:
        if self.job.n is None:
            raise UsageError(f"{self.job.command} needs --n")
        return self.job.n


@dataclass
class CommandResult:
    """Result returned from command execution.

    document is rendered as JSON or text by the integration layer;
    exit_code follows the error that ended the command (0 on success).
    """
    success: bool
    document: Optional[dict] = None
    message: str = ""
    error: Optional[str] = None
    exit_code: int = 0
    data: Any = None


CommandRunner = Callable[[CommandContext], Union[CommandResult, Awaitable[CommandResult]]]
