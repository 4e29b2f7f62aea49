#!/usr/bin/env python3
"""
Type-2 convolution toolkit - Main Entry Point
Convolution of fuzzy truth values under pairs of t-norms, with a cut engine,
brute-force oracles and a randomized verification harness.

This is the main entry point that provides the CLI.
"""

import sys
import logging
from pathlib import Path

# Add current directory to Python path to ensure imports work
current_dir = Path(__file__).parent
if str(current_dir) not in sys.path:
    sys.path.insert(0, str(current_dir))


def check_dependencies() -> bool:
    """
    Check if all required dependencies are available.

    Returns:
        True if all dependencies are available, False otherwise
    """
    required_modules = [
        ('numpy', 'numpy'),
        ('pandas', 'pandas'),
        ('tqdm', 'tqdm'),
        ('rich', 'rich'),
        ('click', 'click'),
        ('yaml', 'pyyaml')
    ]

    missing_modules = []

    for module_name, package_name in required_modules:
        try:
            __import__(module_name)
        except ImportError:
            missing_modules.append(package_name)

    if missing_modules:
        print("Error: Missing required dependencies:", file=sys.stderr)
        for module in missing_modules:
            print(f"  - {module}", file=sys.stderr)
        print("\nPlease install missing dependencies:", file=sys.stderr)
        print(f"  pip install {' '.join(missing_modules)}", file=sys.stderr)
        print("\nOr install all dependencies:", file=sys.stderr)
        print("  pip install -r requirements.txt", file=sys.stderr)
        return False

    return True


def print_banner() -> None:
    """Print application banner."""
    banner = """
+-------------------------------------------------------------------------+
|                      Type-2 Convolution Toolkit                         |
|                                                                         |
|  Sup-convolution of fuzzy truth values on [0,1] under a pair of         |
|  t-norms: cut engine, grid oracles, order tests and law checks.         |
|                                                                         |
|  Usage: t2conv [OPTIONS] COMMAND [ARGS]...                              |
|  Help:  t2conv --help                                                   |
+-------------------------------------------------------------------------+
    """
    print(banner)


def print_quick_start() -> None:
    """Print quick start guide."""
    guide = """
Quick Start Guide:
==================

1. Classify the built-in t-norms:
   t2conv zoo

2. Convolve two truth values with the cut engine:
   t2conv convolve --f f.json --g g.json --star min --tri product --m 128

3. Check the t-norm laws on random inputs:
   t2conv check-axioms --star product --tri min --trials 50 --seed 0

4. Show why right-continuity is needed:
   t2conv demo-necessity --tri nm --case case1_min_star

For detailed help on any command:
   t2conv COMMAND --help

Configuration:
   Pass --config FILE (YAML); T2CONV_* environment variables override it.
    """
    print(guide)


def main() -> None:
    """Main application entry point."""
    try:
        if not check_dependencies():
            sys.exit(1)

        if len(sys.argv) == 1:
            print_banner()
            print_quick_start()
            return

        from cli import cli
        cli()

    except KeyboardInterrupt:
        print("\n\nOperation cancelled by user.", file=sys.stderr)
        sys.exit(130)  # Standard exit code for Ctrl+C

    except Exception as e:
        from logger_config import log_exception
        log_exception(logging.getLogger(__name__), "Unexpected error in main application")
        print(f"\nUnexpected error: {e}", file=sys.stderr)
        sys.exit(1)


if __name__ == '__main__':
    main()
