import sys

from jcoker.cli import main

sys.exit(main())
