"""Randomized soundness search for the Betti bound and the Gorenstein criteria.

    python scripts/soundness_search.py --samples 200 --seed 0
"""
import argparse
import json
from collections import Counter

from cangrow.criteria import soundness_search


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--n-max", type=int, default=3)
    ap.add_argument("--dump", default=None, help="write every instance as JSON lines")
    a = ap.parse_args()
    inst = soundness_search(samples=a.samples, seed=a.seed, n_max=a.n_max)
    tally = Counter()
    for s in inst:
        b = s.bound
        if b and b["hypothesis_holds"]:
            tally["verified windows"] += 1
            tally["bound violations"] += not b["satisfied"]
            if b["degenerate"]:
                tally["degenerate (zero syzygy)"] += 1
            else:
                tally["equality/condition mismatches"] += (
                    b["equality"] != all(b["equality_conditions"].values()))
                tally["equality cases"] += b["equality"]
        for v in s.verdicts:
            if v["applies"]:
                tally[f"{v['variant']} satisfied"] += 1
                tally["verdicts off socle dim 1"] += s.socle_dim != 1
    print(f"{len(inst)} instances")
    for k in sorted(tally):
        print(f"  {k:32s} {tally[k]}")
    if a.dump:
        with open(a.dump, "w") as fh:
            for s in inst:
                fh.write(json.dumps(s.__dict__, sort_keys=True, default=str) + "\n")


if __name__ == "__main__":
    main()
