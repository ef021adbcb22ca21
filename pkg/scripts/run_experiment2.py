"""Experiment 2: all 256 classic syllogisms at dimensions 2 and 3.

    python3 scripts/run_experiment2.py --out runs/exp2 --jobs 4
"""

import argparse
import sys
from pathlib import Path

from sphnn.cli import RunManifest, run_bench
from sphnn.constructor import SolverConfig


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", default="runs/exp2")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dims", type=int, nargs="+", default=[2, 3])
    p.add_argument("--svg", action="store_true", help="also draw counter-models at dims 2 and 3")
    args = p.parse_args(argv)
    manifest = RunManifest(
        corpus="classic256",
        dims=tuple(args.dims),
        solver=SolverConfig(seed=args.seed),
        out=Path(args.out),
        formats=frozenset({"csv", "json"} | ({"svg"} if args.svg else set())),
    )
    report = run_bench(manifest, args.jobs)
    print(f"wrote {manifest.out / 'results.csv'} and {manifest.out / 'summary.json'}")
    return 0 if report.accuracy == 1.0 else 1


if __name__ == "__main__":
    sys.exit(main())
