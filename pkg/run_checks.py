#!/usr/bin/env python3
"""Run the adlercheck verification suites from a source checkout.

Usage:
    python run_checks.py                        # every suite, quick checks
    python run_checks.py --suite group -v       # one suite with debug logging
    python run_checks.py --heavy --format json  # everything, JSON on stdout
"""

import sys

from adlercheck.cli import main

if __name__ == "__main__":
    sys.exit(main())
