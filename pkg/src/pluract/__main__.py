import sys

from pluract.cli import main

sys.exit(main())
