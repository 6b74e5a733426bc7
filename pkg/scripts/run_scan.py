"""Random Artinian monomial quotients: is b1(omega) > b0(omega) on every non-Gorenstein sample?

Writes one JSON line per finding to --out (replayable ring specs) and prints
the summary.  Exit status 3 when a counterexample turns up.

    python scripts/run_scan.py --samples 500 --seed 0
"""
import argparse
import json
import sys
from collections import Counter

from cangrow.criteria import ScanConfig, b1_vs_b0_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-vars", type=int, default=3)
    ap.add_argument("--max-socle-degree", type=int, default=4)
    ap.add_argument("--growth-steps", type=int, default=0,
                    help="also classify omega's growth to this many steps")
    ap.add_argument("--out", default=None, help="file for findings (JSON lines)")
    a = ap.parse_args()
    cfg = ScanConfig(max_vars=a.max_vars, max_socle_degree=a.max_socle_degree,
                     samples=a.samples, seed=a.seed, growth_steps=a.growth_steps)
    rep = b1_vs_b0_scan(cfg)
    print(json.dumps(rep.summary(), indent=2))
    gaps = Counter(r.b1 - r.b0 for r in rep.records if not r.gorenstein)
    print("b1 - b0 histogram:", dict(sorted(gaps.items())))
    if a.growth_steps:
        print("growth classes:", dict(Counter(r.growth for r in rep.records if r.growth)))
    if a.out:
        with open(a.out, "w") as fh:
            for r in rep.findings:
                fh.write(json.dumps(r.to_json(), sort_keys=True) + "\n")
    sys.exit(3 if rep.findings else 0)


if __name__ == "__main__":
    main()
