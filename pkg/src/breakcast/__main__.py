import sys

from breakcast.cli import main

sys.exit(main())
