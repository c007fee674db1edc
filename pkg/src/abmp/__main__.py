import sys

from abmp.cli import main

sys.exit(main())
