"""g(R) = curv(omega)/curv(k) for ring files given on the command line.

    python scripts/gorenstein_deviation.py scripts/rings/*.ring --steps 8
"""
import argparse
from pathlib import Path

from cangrow.errors import CangrowError
from cangrow.growth import gorenstein_deviation
from cangrow.specs import parse_ring


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("rings", nargs="+")
    ap.add_argument("--steps", type=int, default=8)
    a = ap.parse_args()
    for path in a.rings:
        name = Path(path).stem
        try:
            R = parse_ring(Path(path).read_text())
            d = gorenstein_deviation(R, steps=a.steps)
        except CangrowError as exc:
            print(f"{name:16s} {type(exc).__name__}: {exc}")
            continue
        print(f"{name:16s} socle {len(R.socle())}  g in [{float(d.low):.8f}, {float(d.high):.8f}]")


if __name__ == "__main__":
    main()
