import sys

from rankability.cli import main

sys.exit(main())
