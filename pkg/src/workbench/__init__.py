"""Contrib discovery and registration infrastructure.

This module provides the contracts, discovery engine, registry, and CLI
integration for the subcommands under contrib/.

Public Exports:
    - CommandCategory: Enum of command groups
    - CommandManifest: Dataclass for command metadata
    - ArgumentSpec: Positional file argument of a command
    - JobSpec: One parsed invocation
    - CommandContext: Runtime context passed to commands
    - CommandResult: Result returned from command execution
    - CommandRunner: Type alias for run function signature
    - get_registry: Get the global command registry
    - reset_registry: Reset the global registry (for testing)
    - CommandRegistry: The registry class itself
    - CLIIntegration: Bridge between registry and argparse
"""

from src.workbench.contract import (
    ArgumentSpec,
    CommandCategory,
    CommandContext,
    CommandManifest,
    CommandResult,
    CommandRunner,
    JobSpec,
)

from src.workbench.registry import (
    CommandRegistry,
    get_registry,
    reset_registry,
)

from src.workbench.integration import CLIIntegration

__all__ = [
    # Contract types
    "ArgumentSpec",
    "CommandCategory",
    "CommandContext",
    "CommandManifest",
    "CommandResult",
    "CommandRunner",
    "JobSpec",
    # Registry
    "CommandRegistry",
    "get_registry",
    "reset_registry",
    # CLI Integration
    "CLIIntegration",
]
