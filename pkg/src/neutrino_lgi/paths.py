"""Path constants and output-path checks for neutrino-lgi.

Relative paths resolve against the current working directory:
- config/default_config.json   # picked up when no --config is given
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Optional

DEFAULT_CONFIG_PATH = Path("config/default_config.json")


def ensure_writable(path: Optional[str]) -> Optional[Path]:
    """Check that `path` can be written, creating parent directories.

    Returns None for stdout (no path). Raises OSError subclasses so the CLI
    can refuse a run before any computation starts.
    """
    if path is None:
        return None
    target = Path(path)
    if target.is_dir():
        raise IsADirectoryError(f"Output path is a directory: {target}")
    parent = target.parent if str(target.parent) else Path(".")
    parent.mkdir(parents=True, exist_ok=True)
    if not os.access(parent, os.W_OK):
        raise PermissionError(f"Output directory is not writable: {parent}")
    if target.exists() and not os.access(target, os.W_OK):
        raise PermissionError(f"Output file is not writable: {target}")
    return target


def sibling_path(path: Path, suffix: str) -> Path:
    """``runs/sweep.csv`` + ``curves`` -> ``runs/sweep_curves.csv``."""
    return path.with_name(f"{path.stem}_{suffix}{path.suffix or '.csv'}")
