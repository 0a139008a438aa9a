"""Look for state sets with a strongly antidistinguishing context that are not maximally contextual.

Runs over the bundled pools (or a scenario JSON file) and reports every hit.
"""

import argparse
import json
from pathlib import Path

from ksadist.analysis import search_sa_not_maximal
from ksadist.datasets import NAMES, load_dataset
from ksadist.io import parse_pool


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("pools", nargs="*", help="dataset names or scenario JSON files (default: all datasets)")
    ap.add_argument("--sizes", default="3,4")
    ap.add_argument("--closure-rounds", type=int, default=0)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    report = {}
    for src in args.pools or NAMES:
        pool = load_dataset(src).pool if src in NAMES else parse_pool(Path(src).read_text())
        hits = search_sa_not_maximal(pool, sizes, args.closure_rounds)
        report[src] = [
            {
                "states": list(h.states),
                "sa_context": [v.id for v in h.pvm.vectors()],
                "contextual_subset": (h.verdict.witness or {}).get("contextual_subset"),
            }
            for h in hits
        ]
    print(json.dumps(report, indent=2))


if __name__ == "__main__":
    main()
