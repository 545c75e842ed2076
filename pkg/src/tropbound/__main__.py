import sys

from tropbound.cli import main

sys.exit(main())
