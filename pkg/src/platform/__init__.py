"""
Platform module - OS-level paths and environment.
"""

from .environment import APP_NAME, ENV_PREFIX, get_config_dir, get_config_files, get_env

__all__ = ["APP_NAME", "ENV_PREFIX", "get_config_dir", "get_config_files", "get_env"]
