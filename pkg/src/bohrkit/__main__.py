import sys

from bohrkit.cli import main

sys.exit(main())
