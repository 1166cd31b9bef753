"""Console script for neutrino-lgi (``neutrino-lgi = neutrino_lgi.main:app_main``)."""

from __future__ import annotations

import sys
from typing import Optional, Sequence

from .cli import run_cli

EXIT_INTERRUPTED = 130


def app_main(argv: Optional[Sequence[str]] = None) -> None:
    """Run one CLI command and exit with its status code.

    Ctrl-C during a long scan or simulation exits with 130 instead of a traceback.
    """
    try:
        status = run_cli(argv)
    except KeyboardInterrupt:
        print("interrupted", file=sys.stderr)
        status = EXIT_INTERRUPTED
    sys.exit(status)


if __name__ == "__main__":  # pragma: no cover
    app_main()
