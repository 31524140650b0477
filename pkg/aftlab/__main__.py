import sys

from aftlab.cli import main

sys.exit(main())
