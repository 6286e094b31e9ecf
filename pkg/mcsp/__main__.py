import sys

from mcsp.cli import main

sys.exit(main())
