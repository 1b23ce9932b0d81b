"""Subcommand implementations.

This package contains the commands that are discovered and loaded by the
workbench infrastructure. Each command has its own subdirectory with a
manifest.py exporting MANIFEST and run.
"""
