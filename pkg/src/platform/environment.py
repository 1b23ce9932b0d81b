"""
Environment utilities - paths, directories, environment variables.
"""

import os
from pathlib import Path

try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass


APP_NAME = "fglaw"
ENV_PREFIX = "FGLAW_"


def get_config_dir() -> Path:
    """Get the configuration directory path (not created on read)."""
    return Path.home() / f".{APP_NAME}"


def get_config_files() -> list[Path]:
    """Config files in increasing priority: ~/.fglaw/config.yaml, then $FGLAW_CONFIG."""
    files = [get_config_dir() / "config.yaml"]
    override = get_env(f"{ENV_PREFIX}CONFIG")
    if override:
        files.append(Path(override).expanduser())
    return files


def get_env(key: str, default: str = None) -> str | None:
    """Get environment variable."""
    return os.getenv(key, default)
