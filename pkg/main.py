# runs the command-line front end
import sys

from PROB_TAYLOR.cli import main

sys.exit(main())
