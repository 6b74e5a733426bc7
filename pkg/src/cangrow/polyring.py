"""Polynomials over an exact field and Buchberger's algorithm for
zero-dimensional ideals.

Monomials are exponent tuples; a polynomial is a ``dict`` from monomial to a
nonzero field element.  Variable precedence is the order of the variable
list (first variable largest).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Callable, Sequence

from .errors import NotArtinian, SizeCap, UnitInIdeal
from .exactla import FieldSpec

MAX_VARS = 12
MAX_EXPONENT = 2 ** 8

Monomial = tuple  # tuple[int, ...]


def degree(m: Monomial) -> int:
    return sum(m)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def degrevlex_key(m: Monomial):
    # larger key = larger monomial
    return (sum(m), tuple(-e for e in reversed(m)))


def lex_key(m: Monomial):
    return tuple(m)


ORDERS: dict[str, Callable] = {"degrevlex": degrevlex_key, "lex": lex_key}


class Polynomial:
    """Sparse polynomial; ``terms`` maps exponent tuples to field elements."""

    __slots__ = ("nvars", "field", "terms")

    def __init__(self, nvars: int, field: FieldSpec, terms: dict | None = None):
        self.nvars = nvars
        self.field = field
        self.terms = {}
        for m, c in (terms or {}).items():
            if len(m) != nvars:
                raise ValueError(f"monomial {m} has wrong length")
            c = field(c)
            if c:
                self.terms[tuple(m)] = c

    @classmethod
    def _raw(cls, nvars, field, terms):
        p = cls.__new__(cls)
        p.nvars, p.field, p.terms = nvars, field, terms
        return p

    @classmethod
    def constant(cls, c, nvars: int, field: FieldSpec) -> "Polynomial":
        return cls(nvars, field, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, m: Monomial, field: FieldSpec, c=1) -> "Polynomial":
        return cls(len(m), field, {tuple(m): c})

    @classmethod
    def variable(cls, i: int, nvars: int, field: FieldSpec) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls.monomial(tuple(e), field)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        F = self.field
        for m, c in other.terms.items():
            t = F.add(out.get(m, F(0)), c)
            if t:
                out[m] = t
            else:
                out.pop(m, None)
        return Polynomial._raw(self.nvars, F, out)

    def __neg__(self) -> "Polynomial":
        F = self.field
        return Polynomial._raw(self.nvars, F, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        F = self.field
        if not isinstance(other, Polynomial):
            c = F(other)
            if not c:
                return Polynomial._raw(self.nvars, F, {})
            return Polynomial._raw(self.nvars, F, {m: F.mul(a, c) for m, a in self.terms.items()})
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                t = F.add(out.get(m, F(0)), F.mul(c1, c2))
                if t:
                    out[m] = t
                else:
                    out.pop(m, None)
        return Polynomial._raw(self.nvars, F, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        out = Polynomial.constant(1, self.nvars, self.field)
        for _ in range(k):
            out = out * self
        return out

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def leading(self, key) -> tuple[Monomial, object]:
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def monic(self, key) -> "Polynomial":
        _, c = self.leading(key)
        return self * self.field.inv(c)

    def mul_term(self, m: Monomial, c) -> "Polynomial":
        F = self.field
        return Polynomial._raw(self.nvars, F, {mono_mul(m, a): F.mul(b, c)
                                               for a, b in self.terms.items()})

    def format(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=degrevlex_key, reverse=True):
            c = self.field.to_int_or_fraction(self.terms[m])
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            sign = "-" if c < 0 else "+"
            c = abs(c)
            if not factors:
                body = str(c)
            elif c == 1:
                body = "*".join(factors)
            else:
                body = f"{c}*" + "*".join(factors)
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self) -> str:
        return f"Polynomial({self.format([f'x{i}' for i in range(self.nvars)])})"


@dataclass
class GroebnerBasis:
    order: str
    generators: list[Polynomial]
    nvars: int
    field: FieldSpec
    leading: list[Monomial] = dc_field(default_factory=list)

    @property
    def key(self):
        return ORDERS[self.order]


def _reduce(f: Polynomial, basis: Sequence[Polynomial], leads: Sequence[Monomial], key) -> Polynomial:
    """Full reduction of f by monic polynomials with the given leading monomials."""
    F = f.field
    rem: dict = {}
    work = dict(f.terms)
    while work:
        m = max(work, key=key)
        c = work[m]
        for g, lm in zip(basis, leads):
            if divides(lm, m):
                q = mono_div(m, lm)
                negc = F.neg(c)
                for gm, gc in g.terms.items():
                    mm = mono_mul(gm, q)
                    t = F.add(work.get(mm, F(0)), F.mul(negc, gc))
                    if t:
                        work[mm] = t
                    else:
                        work.pop(mm, None)
                break
        else:
            rem[m] = c
            del work[m]
    return Polynomial._raw(f.nvars, F, rem)


def _check_caps(gens: Sequence[Polynomial]) -> None:
    for g in gens:
        if g.nvars > MAX_VARS:
            raise SizeCap(f"{g.nvars} variables exceeds the cap of {MAX_VARS}")
        for m in g.terms:
            if max(m, default=0) > MAX_EXPONENT:
                raise SizeCap(f"exponent {max(m)} exceeds the cap of {MAX_EXPONENT}")


def buchberger(generators: Sequence[Polynomial], order: str = "degrevlex") -> GroebnerBasis:
    """Reduced Groebner basis (monic, sorted by leading monomial).

    Pairs are processed by the normal strategy: smallest lcm degree first,
    ties broken by pair index.  Raises ``UnitInIdeal`` when the ideal is the
    whole ring.
    """
    key = ORDERS[order]
    gens = [g for g in generators if g]
    if not gens:
        raise ValueError("no nonzero generators")
    _check_caps(gens)
    nvars, F = gens[0].nvars, gens[0].field
    for g in gens:
        if g.is_constant():
            raise UnitInIdeal("a generator is a nonzero constant")

    basis: list[Polynomial] = []
    leads: list[Monomial] = []

    def add(f: Polynomial) -> None:
        f = f.monic(key)
        basis.append(f)
        leads.append(f.leading(key)[0])

    for g in gens:
        r = _reduce(g, basis, leads, key)
        if r:
            if r.is_constant():
                raise UnitInIdeal("the ideal contains a unit")
            add(r)
    pairs = [(i, j) for i, j in combinations(range(len(basis)), 2)]
    while pairs:
        pairs.sort(key=lambda ij: (degree(mono_lcm(leads[ij[0]], leads[ij[1]])), ij[1], ij[0]))
        i, j = pairs.pop(0)
        li, lj = leads[i], leads[j]
        lcm = mono_lcm(li, lj)
        if lcm == mono_mul(li, lj):
            continue  # coprime leading terms
        # chain criterion
        if any(k not in (i, j) and divides(leads[k], lcm)
               and (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs
               for k in range(len(basis))):
            continue
        s = basis[i].mul_term(mono_div(lcm, li), F(1)) - basis[j].mul_term(mono_div(lcm, lj), F(1))
        r = _reduce(s, basis, leads, key)
        if r:
            if r.is_constant():
                raise UnitInIdeal("the ideal contains a unit")
            _check_caps([r])
            add(r)
            n = len(basis) - 1
            pairs.extend((k, n) for k in range(n))

    # minimalise then inter-reduce
    keep = []
    for i, lm in enumerate(leads):
        if any(divides(leads[j], lm) and (leads[j] != lm or j < i)
               for j in range(len(leads)) if j != i):
            continue
        keep.append(i)
    mb = [basis[i] for i in keep]
    ml = [leads[i] for i in keep]
    reduced = []
    for idx, g in enumerate(mb):
        others = [h for k, h in enumerate(mb) if k != idx]
        olead = [l for k, l in enumerate(ml) if k != idx]
        lm, _ = g.leading(key)
        tail = Polynomial._raw(nvars, F, {m: c for m, c in g.terms.items() if m != lm})
        r = _reduce(tail, others, olead, key)
        reduced.append(Polynomial.monomial(lm, F) + r)
    order_idx = sorted(range(len(reduced)), key=lambda k: key(ml[k]))
    gb = GroebnerBasis(order, [reduced[k] for k in order_idx], nvars, F, [ml[k] for k in order_idx])
    return gb


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return _reduce(p, gb.generators, gb.leading, gb.key)


def is_zero_dimensional(gb: GroebnerBasis) -> bool:
    for v in range(gb.nvars):
        if not any(lm[v] > 0 and sum(lm) == lm[v] for lm in gb.leading):
            return False
    return True


def standard_monomials(gb: GroebnerBasis, limit: int | None = None) -> list[Monomial]:
    """Monomials outside the leading-term ideal, by degree then descending order.

    Raises ``SizeCap`` as soon as more than ``limit`` monomials are found.
    """
    if not is_zero_dimensional(gb):
        missing = [v for v in range(gb.nvars)
                   if not any(lm[v] > 0 and sum(lm) == lm[v] for lm in gb.leading)]
        raise NotArtinian(
            f"no pure power of variable #{missing[0]} among leading terms; "
            "the quotient is positive-dimensional (supply an Artinian reduction "
            "modulo a maximal regular sequence instead)")
    n = gb.nvars
    found = {(0,) * n}
    frontier = [(0,) * n]
    while frontier:
        nxt = []
        for m in frontier:
            for v in range(n):
                e = list(m)
                e[v] += 1
                e = tuple(e)
                if e in found or any(divides(lm, e) for lm in gb.leading):
                    continue
                found.add(e)
                nxt.append(e)
                if limit is not None and len(found) > limit:
                    raise SizeCap(f"dim_k R exceeds the cap {limit}")
        frontier = nxt
    key = gb.key
    return sorted(found, key=lambda m: (sum(m), _neg_key(key(m))))


def _neg_key(k):
    # invert a comparison key (tuples of ints, possibly nested one level)
    return tuple(_neg_key(x) if isinstance(x, tuple) else -x for x in k)


def monomial_ideal_quotient_size(gens: Sequence[Monomial]) -> int:
    """Count monomials not divisible by any generator (finite ideals only)."""
    n = len(gens[0])
    bound = [0] * n
    for v in range(n):
        pure = [g[v] for g in gens if sum(g) == g[v] and g[v] > 0]
        if not pure:
            raise NotArtinian("monomial ideal is not zero-dimensional")
        bound[v] = min(pure)
    from itertools import product
    return sum(1 for m in product(*(range(b) for b in bound))
               if not any(divides(g, m) for g in gens))
