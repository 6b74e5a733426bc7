"""Artinian local algebras R = k[x_1..x_n]/I with materialised multiplication.

The basis is the standard-monomial basis of a reduced Groebner basis, ordered
degree-major with ``basis[0] = 1``; products are stored as sparse vectors
(dicts from basis index to scalar).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import NotArtinian, SizeCap, UnitInIdeal
from .exactla import Echelon, FieldSpec, axpy, kernel_of_columns
from .grading import Grading
from .polyring import (GroebnerBasis, Polynomial, buchberger,
                       mono_div, mono_mul, normal_form, standard_monomials)

DEFAULT_DIM_CAP = 512


@dataclass(frozen=True)
class AlgebraProfile:
    dim_k: int
    hilbert: tuple[int, ...]
    embedding_dim: int
    socle_dim: int
    s: int  # dim_k m^2
    nil_index: int


class ArtinAlgebra:
    """A finite-dimensional local k-algebra presented as a polynomial quotient."""

    def __init__(self, field: FieldSpec, variables: Sequence[str],
                 generators: Sequence[Polynomial], gb: GroebnerBasis,
                 basis: Sequence[tuple]):
        self.field = field
        self.variables = tuple(variables)
        self.generators = list(generators)
        self.gb = gb
        self.basis = list(basis)
        self.index = {m: i for i, m in enumerate(self.basis)}
        n = len(self.basis)
        self.nvars = len(self.variables)
        self.grading = Grading.from_polynomials(self.nvars, gb.generators)
        self.degrees = [self.grading.canonical(m) for m in self.basis]
        # multiplication by each variable on the basis
        self.mul_var: list[list[dict]] = []
        for v in range(self.nvars):
            unit = tuple(int(i == v) for i in range(self.nvars))
            self.mul_var.append([self._nf_monomial(mono_mul(unit, m)) for m in self.basis])
        # full table; product of basis monomials
        self.mul: list[list[dict]] = [[{} for _ in range(n)] for _ in range(n)]
        for i, a in enumerate(self.basis):
            for j in range(i, n):
                prod = self._nf_monomial(mono_mul(a, self.basis[j]))
                self.mul[i][j] = prod
                self.mul[j][i] = prod
        # a factorisation path basis[j] = x_v * basis[parent]
        self.parent: list[tuple[int, int] | None] = [None] * n
        for j, m in enumerate(self.basis):
            if j == 0:
                continue
            v = next(i for i, e in enumerate(m) if e)
            unit = tuple(int(i == v) for i in range(self.nvars))
            self.parent[j] = (v, self.index[mono_div(m, unit)])
        self._profile = None
        self._socle = None
        self._mpowers: dict[int, list[dict]] = {}

    # -- construction helpers -------------------------------------------------

    def _nf_monomial(self, m: tuple) -> dict:
        if m in self.index:
            return {self.index[m]: 1}
        nf = normal_form(Polynomial.monomial(m, self.field), self.gb)
        return {self.index[t]: c for t, c in nf.terms.items()}

    def vector(self, f: Polynomial) -> dict:
        """Normal form of a polynomial as a coordinate vector."""
        nf = normal_form(f, self.gb)
        return {self.index[t]: c for t, c in nf.terms.items()}

    def polynomial(self, v: dict) -> Polynomial:
        return Polynomial(self.nvars, self.field, {self.basis[i]: c for i, c in v.items()})

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def p(self):
        return self.field.p

    def multiply(self, a: dict, b: dict) -> dict:
        out: dict = {}
        F = self.field
        for i, x in a.items():
            row = self.mul[i]
            for j, y in b.items():
                c = F.mul(x, y)
                for t, z in row[j].items():
                    s = F.add(out.get(t, F(0)), F.mul(c, z))
                    if s:
                        out[t] = s
                    else:
                        out.pop(t, None)
        return out

    def is_homogeneous_vector(self, v: dict) -> bool:
        return len({self.degrees[i] for i in v}) <= 1

    # -- structure ------------------------------------------------------------

    def maximal_ideal_power(self, t: int) -> list[dict]:
        """Reduced echelon basis of m^t."""
        if t in self._mpowers:
            return self._mpowers[t]
        if t == 0:
            out = [{i: 1} for i in range(self.dim)]
        elif t == 1:
            out = [{i: 1} for i in range(1, self.dim)]
        else:
            prev = self.maximal_ideal_power(t - 1)
            ech = Echelon(self.field)
            for w in prev:
                for v in range(self.nvars):
                    ech.add(self.multiply_var(v, w))
            ech.finalize()
            out = [ech.rows[k] for k in sorted(ech.rows)]
        self._mpowers[t] = out
        return out

    def multiply_var(self, v: int, w: dict) -> dict:
        out: dict = {}
        col = self.mul_var[v]
        for j, c in w.items():
            axpy(out, col[j], c, self.field.p)
        return out

    def socle(self) -> list[dict]:
        """Basis of ann(m) = {r : x_v r = 0 for every variable}."""
        if self._socle is None:
            # stack the maps r -> x_v r; kernel of the combined map
            cols = []
            n = self.dim
            for j in range(n):
                col = {}
                for v in range(self.nvars):
                    for t, c in self.mul_var[v][j].items():
                        col[v * n + t] = c
                cols.append(col)
            self._socle = kernel_of_columns(cols, self.field)
        return self._socle

    def profile(self) -> AlgebraProfile:
        if self._profile is None:
            dims = []
            t = 0
            while True:
                d = len(self.maximal_ideal_power(t))
                dims.append(d)
                if d == 0:
                    break
                t += 1
            hilbert = tuple(dims[i] - dims[i + 1] for i in range(len(dims) - 1))
            self._profile = AlgebraProfile(
                dim_k=self.dim,
                hilbert=hilbert,
                embedding_dim=hilbert[1] if len(hilbert) > 1 else 0,
                socle_dim=len(self.socle()),
                s=dims[2] if len(dims) > 2 else 0,
                nil_index=len(dims) - 1,
            )
        return self._profile

    def is_gorenstein(self) -> bool:
        return len(self.socle()) == 1

    def socle_equals_m2(self) -> bool:
        m2 = self.maximal_ideal_power(2)
        soc = self.socle()
        if len(m2) != len(soc):
            return False
        ech = Echelon(self.field)
        for w in soc:
            ech.add(w)
        return all(ech.contains(w) for w in m2)

    @property
    def is_standard_graded(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def spec_text(self) -> str:
        """Ring-spec text that parses back to this algebra."""
        fld = "Q" if self.field.p is None else f"F{self.field.p}"
        ideal = ", ".join(g.format(self.variables) for g in self.generators)
        return f"ring {{ field: {fld}; vars: {', '.join(self.variables)}; ideal: {ideal} }}"

    def __repr__(self) -> str:
        return (f"ArtinAlgebra({self.field.name}[{','.join(self.variables)}]/"
                f"({', '.join(g.format(self.variables) for g in self.generators)}), dim={self.dim})")


def from_quotient(field: FieldSpec, variables: Sequence[str],
                  generators: Sequence[Polynomial], dim_cap: int = DEFAULT_DIM_CAP,
                  order: str = "degrevlex") -> ArtinAlgebra:
    """Construct k[variables]/(generators); the ideal must be m-primary."""
    generators = [g for g in generators if g]
    if len(set(variables)) != len(variables):
        raise ValueError("duplicate variable names")
    if not generators:
        if variables:
            raise NotArtinian("the zero ideal in a polynomial ring is not m-primary")
    for g in generators:
        zero = (0,) * len(variables)
        if zero in g.terms:
            if g.is_constant():
                raise UnitInIdeal("a generator is a nonzero constant")
            # a generator with nonzero constant term is a unit in the local ring
            raise UnitInIdeal("generator with nonzero constant term is a unit in the local ring")
    if not variables:
        raise ValueError("at least one variable is required")
    gb = buchberger(generators, order)
    basis = standard_monomials(gb, limit=dim_cap)
    return ArtinAlgebra(field, variables, generators, gb, basis)


def local_tensor(R1: ArtinAlgebra, R2: ArtinAlgebra, dim_cap: int = DEFAULT_DIM_CAP) -> ArtinAlgebra:
    """The local tensor of two algebras over the same field.

    Both factors are already local with residue field k, so the localisation
    is trivial: R = k[vars1, vars2]/(I1 + I2).
    """
    if R1.field != R2.field:
        raise ValueError("factors must share a ground field")
    if R1.dim * R2.dim > dim_cap:
        raise SizeCap(f"dim_k of the tensor {R1.dim * R2.dim} exceeds the cap {dim_cap}")
    names1 = list(R1.variables)
    names2 = []
    for v in R2.variables:
        w = v
        while w in names1 or w in names2:
            w = w + "_2"
        names2.append(w)
    n1, n2 = len(names1), len(names2)
    gens = []
    for g in R1.generators:
        gens.append(Polynomial(n1 + n2, R1.field, {m + (0,) * n2: c for m, c in g.terms.items()}))
    for g in R2.generators:
        gens.append(Polynomial(n1 + n2, R1.field, {(0,) * n1 + m: c for m, c in g.terms.items()}))
    R = from_quotient(R1.field, names1 + names2, gens, dim_cap=dim_cap)
    if R.dim != R1.dim * R2.dim:  # pragma: no cover - would be an engine bug
        raise AssertionError("tensor dimension is not multiplicative")
    return R


def socle(R: ArtinAlgebra) -> list[dict]:
    return R.socle()


def maximal_ideal_power(R: ArtinAlgebra, t: int) -> list[dict]:
    return R.maximal_ideal_power(t)


def is_gorenstein(R: ArtinAlgebra) -> bool:
    return R.is_gorenstein()


def is_commutative_associative(R: ArtinAlgebra) -> bool:
    """Check the stored table: unit, commutativity, associativity on triples."""
    n = R.dim
    for i in range(n):
        if R.mul[0][i] != {i: 1}:
            return False
        for j in range(n):
            if R.mul[i][j] != R.mul[j][i]:
                return False
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if R.multiply(R.mul[i][j], {k: 1}) != R.multiply({i: 1}, R.mul[j][k]):
                    return False
    return True
