"""Experiment 1: the 64 extended-syllogism tasks over a grid of sphere dimensions.

    python3 scripts/run_experiment1.py --out runs/exp1 --jobs 4
    python3 scripts/run_experiment1.py --full-grid      # adds 200 ... 10000, slow
"""

import argparse
import sys
from pathlib import Path

from sphnn.cli import DESK_DIMS, FULL_DIMS, RunManifest, run_bench
from sphnn.constructor import SolverConfig


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", default="runs/exp1")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--full-grid", action="store_true")
    p.add_argument("--svg", action="store_true", help="also draw counter-models at dims 2 and 3")
    args = p.parse_args(argv)
    manifest = RunManifest(
        corpus="extended16",
        dims=FULL_DIMS if args.full_grid else DESK_DIMS,
        solver=SolverConfig(seed=args.seed),
        out=Path(args.out),
        formats=frozenset({"csv", "json"} | ({"svg"} if args.svg else set())),
    )
    report = run_bench(manifest, args.jobs)
    print(f"wrote {manifest.out / 'results.csv'} and {manifest.out / 'summary.json'}")
    return 0 if report.accuracy == 1.0 else 1


if __name__ == "__main__":
    sys.exit(main())
