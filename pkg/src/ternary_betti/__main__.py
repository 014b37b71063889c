import sys

from ternary_betti.cli import main

sys.exit(main())
