import sys

from dcat.cli import main

sys.exit(main())
