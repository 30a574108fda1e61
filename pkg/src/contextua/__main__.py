import sys

from contextua.cli import main

sys.exit(main())
