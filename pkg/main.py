#!/usr/bin/env python3
"""
Ordinal Classification Engine
Assigns actions to ordered classes against two-layer limiting boundaries,
validates the boundary conditions and audits the structural properties of
the S-based and P-based primal/dual rules.
"""

import sys
from dotenv import load_dotenv
from cli_tools import run_cli


def main() -> int:
    """Main entry point"""
    # Load environment variables (ORDINAL_* defaults)
    load_dotenv()
    return run_cli(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
