import sys

from qkcomin.cli import main

sys.exit(main())
