"""Tests for neutrino-lgi; ``src`` is put on the path by pytest's ``pythonpath`` setting."""

from pathlib import Path

PROJECT_ROOT = Path(__file__).resolve().parents[1]
