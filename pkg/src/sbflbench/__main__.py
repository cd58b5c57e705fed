"""Allow ``python -m sbflbench``."""
import sys

from .cli import main

sys.exit(main())
