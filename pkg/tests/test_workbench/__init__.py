"""Tests for workbench infrastructure."""
