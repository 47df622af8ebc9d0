import sys

from ksgraph.cli import main

sys.exit(main())
