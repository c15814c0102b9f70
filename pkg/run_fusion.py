#!/usr/bin/env python3
"""Wrapper script to run the orbifold fusion CLI with correct imports"""

import os
import sys

# Add the directory containing this script to Python path
script_dir = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, script_dir)

# Now import and run the CLI
from fusion_cli import main

if __name__ == "__main__":
    sys.exit(main())
