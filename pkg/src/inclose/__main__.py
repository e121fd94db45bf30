import sys

from inclose.cli import main

sys.exit(main())
