"""Run the command-line interface with ``python -m lidar_odr``."""

import sys

from .cli import main

sys.exit(main())
