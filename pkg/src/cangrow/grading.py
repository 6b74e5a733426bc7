"""Finest abelian-group gradings Z^n / L.

A polynomial is homogeneous for Z^n / L when the differences of its exponent
vectors lie in L.  Taking L to be the lattice spanned by those differences
for every ideal generator gives the finest grading for which the ring is
graded; monomial ideals get the full Z^n multigrading, the binomial rings
of the non-extremality example get Z x (Z/2)^(e-1).  Every map in a minimal
resolution can then be chosen homogeneous, so the linear algebra splits into
independent blocks, one per degree.  When nothing is homogeneous, L = Z^n and
there is a single block.
"""
from __future__ import annotations

from typing import Iterable, Sequence

Degree = tuple  # tuple[int, ...], canonical representative mod L


def hermite_normal_form(gens: Iterable[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """Row-style HNF: positive pivots, pivot columns strictly increasing,
    entries above each pivot reduced into ``[0, pivot)``."""
    rows = [list(g) for g in gens if any(g)]
    out: list[list[int]] = []
    col = 0
    while rows and col < n:
        nz = [r for r in rows if r[col]]
        rows = [r for r in rows if not r[col]]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            nxt = [piv]
            for r in nz[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                (nxt if r[col] else rows).append(r)
            nz = nxt
        if nz:
            piv = nz[0]
            if piv[col] < 0:
                piv = [-a for a in piv]
            out.append(piv)
        rows = [r for r in rows if any(r)]
        col += 1
    # reduce above pivots
    for i, r in enumerate(out):
        c = next(j for j, a in enumerate(r) if a)
        for k in range(i):
            q = out[k][c] // r[c]
            if q:
                out[k] = [a - q * b for a, b in zip(out[k], r)]
    return [tuple(r) for r in out]


class Grading:
    """The grading group Z^n / L with canonical coset representatives."""

    __slots__ = ("n", "basis", "_pivots", "_cache")

    def __init__(self, n: int, generators: Iterable[Sequence[int]] = ()):
        self.n = n
        self.basis = hermite_normal_form(generators, n)
        self._pivots = [next(j for j, a in enumerate(r) if a) for r in self.basis]
        self._cache: dict = {}

    @classmethod
    def trivial(cls, n: int) -> "Grading":
        """L = Z^n: everything has degree 0 (no grading)."""
        return cls(n, [tuple(int(i == j) for j in range(n)) for i in range(n)])

    @classmethod
    def from_polynomials(cls, n: int, polys) -> "Grading":
        return cls(n, polynomial_differences(polys))

    def canonical(self, v: Sequence[int]) -> Degree:
        v = tuple(v)
        hit = self._cache.get(v)
        if hit is not None:
            return hit
        w = list(v)
        for row, c in zip(self.basis, self._pivots):
            q = w[c] // row[c]
            if q:
                for j in range(c, self.n):
                    w[j] -= q * row[j]
        out = tuple(w)
        if len(self._cache) < 200_000:
            self._cache[v] = out
        return out

    def add(self, a: Sequence[int], b: Sequence[int]) -> Degree:
        return self.canonical([x + y for x, y in zip(a, b)])

    def sub(self, a: Sequence[int], b: Sequence[int]) -> Degree:
        return self.canonical([x - y for x, y in zip(a, b)])

    def neg(self, a: Sequence[int]) -> Degree:
        return self.canonical([-x for x in a])

    def zero(self) -> Degree:
        return self.canonical((0,) * self.n)

    def join(self, other: "Grading") -> "Grading":
        """The coarsening Z^n / (L + L')."""
        if other is self or other.basis == self.basis:
            return self
        return Grading(self.n, list(self.basis) + list(other.basis))

    def extend(self, gens: Iterable[Sequence[int]]) -> "Grading":
        gens = [tuple(g) for g in gens if any(g)]
        if not gens:
            return self
        return Grading(self.n, list(self.basis) + gens)

    def refines(self, other: "Grading") -> bool:
        """True when every relation of self holds in other (L <= L')."""
        return all(not any(other.canonical(r)) for r in self.basis)

    @property
    def is_trivial(self) -> bool:
        return len(self.basis) == self.n and all(
            r[c] == 1 for r, c in zip(self.basis, self._pivots))

    def __eq__(self, other) -> bool:
        return isinstance(other, Grading) and self.n == other.n and self.basis == other.basis

    def __hash__(self):
        return hash((self.n, tuple(self.basis)))

    def __repr__(self) -> str:
        return f"Grading(n={self.n}, relations={self.basis})"


def polynomial_differences(polys) -> list[tuple[int, ...]]:
    out = []
    for f in polys:
        ms = sorted(f.terms)
        for m in ms[1:]:
            out.append(tuple(a - b for a, b in zip(m, ms[0])))
    return out
