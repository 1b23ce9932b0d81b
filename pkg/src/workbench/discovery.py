"""Discovery Engine for the contrib command system.

Scans `src/workbench/contrib/*/manifest.py`, imports each manifest module,
and validates that it exports MANIFEST and run.
"""

import importlib.util
import logging
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .contract import SHARED_OPTIONS, CommandCategory, CommandManifest, CommandRunner


logger = logging.getLogger(__name__)

COMMAND_NAME = re.compile(r"^[a-z][a-z0-9]*(-[a-z0-9]+)*$")


@dataclass
class LoadedCommand:
    """A successfully loaded and validated command.

    Attributes:
        manifest: The command's metadata
        run: The command's run function
        module_path: Path to the command's directory
    """
    manifest: CommandManifest
    run: CommandRunner
    module_path: str = ""


@dataclass
class DiscoveryError:
    """Error encountered during command discovery.

    Attributes:
        command_path: Path to the command that caused the error
        error_type: "import" or "validation"
        message: Human-readable error message
    """
    command_path: str
    error_type: str
    message: str


@dataclass
class DiscoveryResult:
    commands: list[LoadedCommand] = field(default_factory=list)
    errors: list[DiscoveryError] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


class DiscoveryEngine:
    """Finds subcommand packages, imports their manifests and checks them.

    Broken packages become DiscoveryErrors; the remaining commands are
    returned ordered by (menu_order, name).
    """

    DEFAULT_CONTRIB = Path(__file__).parent / "contrib"

    def __init__(self, contrib_path: Optional[Path] = None):
        self.contrib_path = Path(contrib_path) if contrib_path is not None else self.DEFAULT_CONTRIB

    def discover(self) -> DiscoveryResult:
        result = DiscoveryResult()
        loaded = []
        for path in self._scan_directories(result):
            command = self._load_command(path, result)
            if command:
                loaded.append(command)
        result.commands = sorted(loaded, key=lambda c: (c.manifest.menu_order, c.manifest.name))
        return result

    def _scan_directories(self, result: DiscoveryResult) -> list[Path]:
        """Directories under contrib/ holding a manifest.py, in name order."""
        candidates = []
        if not self.contrib_path.exists():
            return candidates

        for item in sorted(self.contrib_path.iterdir()):
            if item.is_dir() and not item.name.startswith(('_', '.')):
                if (item / "manifest.py").exists():
                    candidates.append(item)
                else:
                    result.warnings.append(f"Directory '{item.name}' has no manifest.py; skipped")
        return candidates

    def _load_command(self, path: Path, result: DiscoveryResult) -> Optional[LoadedCommand]:
        manifest_path = path / "manifest.py"
        module_name = f"src.workbench.contrib.{path.name}.manifest"
        try:
            spec = importlib.util.spec_from_file_location(module_name, manifest_path)
            if spec is None or spec.loader is None:
                result.errors.append(DiscoveryError(str(path), "import", "Failed to create module spec"))
                return None

            module = importlib.util.module_from_spec(spec)
            # registered so relative imports inside the command package resolve
            sys.modules[module_name] = module
            spec.loader.exec_module(module)
        except Exception as e:
            logger.warning(f"Failed to import {manifest_path}: {e}")
            result.errors.append(DiscoveryError(str(path), "import", str(e)))
            return None

        if not hasattr(module, 'MANIFEST'):
            result.errors.append(DiscoveryError(str(path), "validation", "Missing MANIFEST constant"))
            return None
        if not callable(getattr(module, 'run', None)):
            result.errors.append(DiscoveryError(str(path), "validation", "Missing run function"))
            return None

        manifest = module.MANIFEST
        validation_error = self._validate_manifest(manifest, path)
        if validation_error:
            result.errors.append(validation_error)
            return None

        return LoadedCommand(manifest=manifest, run=module.run, module_path=str(path))

    def _validate_manifest(self, manifest: CommandManifest, path: Path) -> Optional[DiscoveryError]:
        """Required fields present, category an enum member, options known."""
        if not isinstance(manifest, CommandManifest):
            return DiscoveryError(str(path), "validation", "MANIFEST is not a CommandManifest")

        required_fields = ['name', 'display_name', 'description', 'icon', 'color', 'category']
        for field_name in required_fields:
            value = getattr(manifest, field_name, None)
            if value is None or (isinstance(value, str) and not value.strip()):
                return DiscoveryError(
                    str(path), "validation", f"Missing or empty required field: {field_name}"
                )

        if not COMMAND_NAME.match(manifest.name):
            return DiscoveryError(str(path), "validation", f"Invalid command name: {manifest.name!r}")

        if not isinstance(manifest.category, CommandCategory):
            return DiscoveryError(
                str(path), "validation",
                f"Invalid category: {manifest.category}. Must be CommandCategory enum."
            )

        unknown = [o for o in manifest.options if o not in SHARED_OPTIONS]
        if unknown:
            return DiscoveryError(str(path), "validation", f"Unknown options: {', '.join(unknown)}")

        return None
