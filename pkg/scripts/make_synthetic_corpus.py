#!/usr/bin/env python3
"""Generate a synthetic multi-region corpus (cases, mobility, orders CSVs)
with planted growth rates that drop at each region's intervention date.

Usage: python scripts/make_synthetic_corpus.py OUT_DIR [--regions N] [--seed S]
"""

import argparse
import json
import math
import random
import sys
from datetime import date, timedelta
from pathlib import Path

START = date(2020, 3, 11)
N_DAYS = 31


def generate(out_dir: Path, n_regions: int, seed: int):
    rng = random.Random(seed)
    cases = ["region,date,cumulative_cases"]
    mobility = ["region,date,value"]
    orders = ["region,effective_date"]
    planted = {}
    for i in range(n_regions):
        region = f"Region{i:02d}"
        rate_before = 0.35 + rng.uniform(-0.05, 0.05)
        rate_after = 0.10 + rng.uniform(-0.02, 0.02)
        order_offset = rng.randint(12, 18)
        base = rng.uniform(200.0, 800.0)
        slope = -0.5 * rate_before + rng.uniform(-0.01, 0.01)
        planted[region] = {
            "rate_before": rate_before,
            "rate_after": rate_after,
            "order_date": (START + timedelta(days=order_offset)).isoformat(),
            "mobility_slope": slope,
        }
        orders.append(f"{region},{planted[region]['order_date']}")
        y_cut = base * math.exp(rate_before * order_offset)
        for t in range(1, N_DAYS + 1):
            d = (START + timedelta(days=t - 1)).isoformat()
            if t <= order_offset:
                y = base * math.exp(rate_before * t)
            else:
                y = y_cut * math.exp(rate_after * (t - order_offset))
            cases.append(f"{region},{d},{int(round(y))}")
            mobility.append(f"{region},{d},{max(0.0, 30.0 + slope * t):.6f}")

    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "cases.csv").write_text("\n".join(cases) + "\n")
    (out_dir / "mobility.csv").write_text("\n".join(mobility) + "\n")
    (out_dir / "orders.csv").write_text("\n".join(orders) + "\n")
    (out_dir / "planted.json").write_text(json.dumps(planted, indent=2) + "\n")
    print(f"wrote cases/mobility/orders CSVs for {n_regions} regions to {out_dir}")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("out_dir", type=Path)
    parser.add_argument("--regions", type=int, default=50)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    generate(args.out_dir, args.regions, args.seed)
    return 0


if __name__ == "__main__":
    sys.exit(main())
