import sys

from coxshuffle.cli import main

sys.exit(main())
