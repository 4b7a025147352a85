import sys

from magiclab.cli import main

sys.exit(main())
