"""``python -m src`` runs the command line."""

import sys

from src.cli import main

sys.exit(main())
