#!/usr/bin/env python3
"""
svcrypt command line entry point
"""

from modules.cli import main

if __name__ == '__main__':
    main()
