"""Module entry point for ``python -m fockspace``."""

import sys

from .cli import main

sys.exit(main())
