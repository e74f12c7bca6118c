import sys

from ibinabc.bench.cli import main

sys.exit(main())
