"""Run every suite with configs/full.json and write reports/full.json."""

import sys
from pathlib import Path

from gsp4cert.cli import main

ROOT = Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    out = ROOT / "reports"
    out.mkdir(exist_ok=True)
    sys.exit(main(["verify", "--config", str(ROOT / "configs" / "full.json"), "--out", str(out / "full.json")] + sys.argv[1:]))
