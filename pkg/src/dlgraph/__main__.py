from dlgraph.cli import main
import sys

sys.exit(main())
