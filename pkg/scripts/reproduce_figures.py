"""Write the data behind the four figures to a directory (default ./figures)."""

import argparse
import sys
from pathlib import Path

from beamnoise.cli import main

JOBS = {
    "fig2a.csv": ["figure", "fig2a"],
    "fig2b.csv": ["figure", "fig2b"],
    "fig3a.csv": ["figure", "fig3a"],
    "fig3b.csv": ["figure", "fig3b"],
    "fig3b.json": ["figure", "fig3b", "--format", "json"],
}


def run(outdir: Path) -> int:
    outdir.mkdir(parents=True, exist_ok=True)
    for name, argv in JOBS.items():
        code = main([*argv, "--out", str(outdir / name)])
        if code:
            return code
        print(outdir / name)
    return 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("outdir", nargs="?", default="figures", type=Path)
    sys.exit(run(p.parse_args().outdir))
