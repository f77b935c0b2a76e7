import sys

from platonic_cylinders.cli import main

sys.exit(main())
