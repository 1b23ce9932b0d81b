"""Command Registry for the contrib discovery system.

Stores discovered commands indexed by name and category.
"""

import logging
from typing import Optional

from .contract import CommandCategory
from .discovery import DiscoveryEngine, DiscoveryResult, LoadedCommand


logger = logging.getLogger(__name__)


class CommandRegistry:
    """Central registry for all discovered subcommands."""

    def __init__(self):
        self._commands: dict[str, LoadedCommand] = {}
        self._by_category: dict[CommandCategory, list[LoadedCommand]] = {
            cat: [] for cat in CommandCategory
        }
        self._discovery_result: Optional[DiscoveryResult] = None

    def load(self, engine: Optional[DiscoveryEngine] = None) -> DiscoveryResult:
        """Discover and register all commands.

        Args:
            engine: Optional DiscoveryEngine instance. If not provided,
                   a default engine will be created.
        """
        engine = engine or DiscoveryEngine()
        result = engine.discover()
        self._discovery_result = result

        for command in result.commands:
            self._register(command)

        logger.debug(
            f"Loaded {len(result.commands)} commands, "
            f"{len(result.errors)} errors, "
            f"{len(result.warnings)} warnings"
        )
        return result

    def _register(self, command: LoadedCommand) -> bool:
        """Register a single command; False on a duplicate name."""
        name = command.manifest.name
        if name in self._commands:
            logger.warning(f"Duplicate command name: {name}. Keeping first.")
            return False

        self._commands[name] = command
        self._by_category[command.manifest.category].append(command)
        return True

    def get(self, name: str) -> Optional[LoadedCommand]:
        return self._commands.get(name)

    def list_all(self) -> list[LoadedCommand]:
        return list(self._commands.values())

    def list_by_category(self, category: CommandCategory) -> list[LoadedCommand]:
        return self._by_category.get(category, [])

    def list_enabled(self) -> list[LoadedCommand]:
        return [c for c in self._commands.values() if c.manifest.enabled]

    def get_categories_with_commands(self) -> list[tuple[CommandCategory, list[LoadedCommand]]]:
        """Non-empty categories in display order."""
        return [(cat, self._by_category[cat]) for cat in CommandCategory if self._by_category[cat]]

    def has_errors(self) -> bool:
        return bool(self._discovery_result and self._discovery_result.errors)

    def get_errors(self) -> list:
        return self._discovery_result.errors if self._discovery_result else []

    def get_warnings(self) -> list[str]:
        return self._discovery_result.warnings if self._discovery_result else []


# Global registry instance
_registry: Optional[CommandRegistry] = None


def get_registry() -> CommandRegistry:
    """Get or create the global command registry, running discovery on first access."""
    global _registry
    if _registry is None:
        _registry = CommandRegistry()
        _registry.load()
    return _registry


def reset_registry() -> None:
    """Reset the global registry (primarily for testing)."""
    global _registry
    _registry = None
