"""Run the command line with ``python -m lemniscate_ruler``."""

from .cli import main

raise SystemExit(main())
