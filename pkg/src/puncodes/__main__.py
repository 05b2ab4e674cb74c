import sys

from puncodes.cli import main

sys.exit(main())
