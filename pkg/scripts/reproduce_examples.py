"""Recompute the worked examples: Betti tables, vanishing windows, growth and g(R).

    python scripts/reproduce_examples.py [--steps 8] [--with-b4]
"""
import argparse
import time
from pathlib import Path

from cangrow.criteria import betti_bound_check
from cangrow.growth import analyze, deviation_from_betti
from cangrow.modres import canonical_module, ext_dims, regular_module, residue_field, tor_dims
from cangrow.specs import parse_module, parse_ring

RINGS = Path(__file__).resolve().parent / "rings"


def ring(name):
    return parse_ring((RINGS / f"{name}.ring").read_text())


def betti(M, steps, budget=10 ** 8):
    return M.resolution(steps, budget=budget).betti_sequence(steps)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=8)
    ap.add_argument("--with-b4", action="store_true", help="also resolve k over B(4) (about 15 s)")
    a = ap.parse_args()
    t0 = time.perf_counter()

    R = ring("quad3")
    M = parse_module("ideal(z)", R)
    print("k[x,y,z]/(x^2,xy,y^2,z^2)")
    print("  b(omega)      ", betti(canonical_module(R), a.steps))
    print("  Ext(M,R)      ", ext_dims(M, regular_module(R), 6))
    print("  Tor(M,omega)  ", tor_dims(M, canonical_module(R), 6))
    for n in (1, 2, 3):
        c = betti_bound_check(M, canonical_module(R), n)
        print(f"  bound n={n}     b_n={c.b_n} <= {c.ratio}*{c.b_n_minus_1}  equality={c.equality}")

    R = ring("x3y3")
    M, N = parse_module("cyclic(x)", R), parse_module("cyclic(y)", R)
    c = betti_bound_check(M, N, 1)
    print("k[x,y]/(x^3,y^3)")
    print("  Tor(R/x,R/y)  ", tor_dims(M, N, 8))
    print("  conditions    ", c.equality_conditions)

    names = ["B3"] + (["B4"] if a.with_b4 else [])
    for name in names:
        R = ring(name)
        b = betti(residue_field(R), 10, budget=10 ** 10)
        rep = analyze(b)
        print(f"{name}: socle {len(R.socle())}, b(k) {b}")
        print(f"  recurrence {[str(x) for x in rep.recurrence.coeffs]}, "
              f"curvature in [{float(rep.curvature_low):.10f}, {float(rep.curvature_high):.10f}]")

    for name in ("tensorAB3", "A", "XYZ_reduced", "t357_mod_t7", "t357_mod_t3"):
        R = ring(name)
        bw, bk = betti(canonical_module(R), a.steps), betti(residue_field(R), a.steps)
        d = deviation_from_betti(bw, bk)
        g = analyze(bw)
        print(f"{name}: b(omega) {bw}")
        print(f"  {g.classification}, g(R) in [{float(d.low):.8f}, {float(d.high):.8f}]")
    print(f"done in {time.perf_counter() - t0:.1f} s")


if __name__ == "__main__":
    main()
