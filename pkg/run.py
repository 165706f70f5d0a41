#!/usr/bin/env python3
"""
gradreg Application Launcher
"""

import sys

from gradreg.main import main

if __name__ == "__main__":
    sys.exit(main())
