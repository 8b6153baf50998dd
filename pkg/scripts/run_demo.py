#!/usr/bin/env python3
"""Full pipeline demo: generate a synthetic corpus, then run every CLI
subcommand over it and print where the reports landed.

Usage: python scripts/run_demo.py [WORK_DIR]
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))
from make_synthetic_corpus import generate  # noqa: E402

from epigrowth.cli import main as cli_main  # noqa: E402


def main():
    work = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("demo_run")
    data = work / "data"
    generate(data, n_regions=50, seed=0)
    cases = str(data / "cases.csv")
    runs = [
        ["fit", "--cases", cases, "--out", str(work / "fit")],
        ["phase", "--cases", cases, "--orders", str(data / "orders.csv"), "--out", str(work / "phase")],
        ["rt", "--cases", cases, "--out", str(work / "rt")],
        [
            "correlate",
            "--cases",
            cases,
            "--mobility",
            str(data / "mobility.csv"),
            "--metric",
            "distance",
            "--out",
            str(work / "correlate"),
        ],
        ["tenhundred", "--cases", cases, "--out", str(work / "tenhundred")],
    ]
    for argv in runs:
        rc = cli_main(argv)
        if rc != 0:
            print(f"command {argv[0]} failed with exit code {rc}", file=sys.stderr)
            return rc
        print(f"{argv[0]}: wrote {argv[-1]}")
    print((work / "phase" / "national_summary.txt").read_text())
    print((work / "correlate" / "correlation.txt").read_text())
    return 0


if __name__ == "__main__":
    sys.exit(main())
