#!/usr/bin/env python3
"""
domcheck - domination vs. edge domination conjecture checker

Entry point for the command line and for PyInstaller packaging.
"""

import sys
from pathlib import Path


def get_base_dir() -> Path:
    """Get base directory (works for both dev and frozen exe)"""
    if getattr(sys, 'frozen', False):
        return Path(sys.executable).parent
    return Path(__file__).parent


def main() -> int:
    sys.path.insert(0, str(get_base_dir()))

    from cli.app import main as cli_main
    return cli_main()


if __name__ == "__main__":
    sys.exit(main())
