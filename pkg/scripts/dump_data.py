"""Write the structure-constant and enveloping-algebra dumps to dumps/."""

import sys
from pathlib import Path

from gsp4cert.cli import main

ROOT = Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    sys.exit(main(["dump", "--out", str(ROOT / "dumps")]))
