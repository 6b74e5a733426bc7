"""Exact linear algebra over a prime field F_p or the rationals.

Vectors are sparse ``dict[int, scalar]`` with no stored zeros.  Over F_p the
scalars are ints in ``range(p)``; over Q they are ``fractions.Fraction``.

Large, dense-enough blocks over F_p are handed to FLINT's ``nmod_mat`` when
python-flint is importable; everything else (and everything over Q) runs the
pure-Python sparse elimination below.  Both paths return the same canonical
objects (reduced row-echelon forms, rref-derived kernel bases), so results do
not depend on the backend.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

try:
    import flint
except ImportError:  # pragma: no cover - exercised only without python-flint
    flint = None

DEFAULT_PRIME = 32003

# "auto" picks FLINT for large dense blocks, "python" forces the sparse path,
# "flint" forces FLINT whenever the field is prime.
_BACKEND = "auto"
DENSE_MIN_CELLS = 20_000
DENSE_MAX_CELLS = 60_000_000
DENSE_MIN_DENSITY = 0.01


def set_backend(name: str) -> str:
    """Select the elimination backend; returns the previous setting."""
    global _BACKEND
    if name not in ("auto", "python", "flint"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "flint" and flint is None:
        raise ValueError("python-flint is not installed")
    old, _BACKEND = _BACKEND, name
    return old


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The ground field: ``p`` prime for F_p, ``None`` for Q."""

    p: int | None = DEFAULT_PRIME

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"F{self.p}: {self.p} is not prime")

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> "FieldSpec":
        return cls(p)

    @classmethod
    def rational(cls) -> "FieldSpec":
        return cls(None)

    @property
    def is_prime(self) -> bool:
        return self.p is not None

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    def __call__(self, x):
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, a):
        if self.p is None:
            return 1 / Fraction(a)
        return pow(a, -1, self.p)

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def mul(self, a, b):
        return a * b % self.p if self.p else a * b

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def to_int_or_fraction(self, a):
        """Symmetric representative for display (F_p) or the Fraction (Q)."""
        if self.p is None:
            return a
        return a if a <= self.p // 2 else a - self.p


# ---------------------------------------------------------------------------
# sparse vector kernels


def axpy(dst: dict, src: dict, c, p: int | None) -> None:
    """dst += c * src, in place."""
    if p:
        for j, a in src.items():
            t = (dst.get(j, 0) + c * a) % p
            if t:
                dst[j] = t
            else:
                dst.pop(j, None)
    else:
        for j, a in src.items():
            t = dst.get(j, 0) + c * a
            if t:
                dst[j] = t
            else:
                dst.pop(j, None)


def scale(v: dict, c, p: int | None) -> dict:
    if p:
        return {j: a * c % p for j, a in v.items()}
    return {j: a * c for j, a in v.items()}


class Echelon:
    """Incrementally built echelon basis of a subspace of k^N.

    Each stored row is normalised to 1 at its pivot, the pivot being the
    row's smallest index.  Rows are kept semi-reduced until :meth:`finalize`
    turns them into the reduced row-echelon form.  With ``track=True`` every
    row carries the combination of inserted vectors (by tag) producing it.
    """

    def __init__(self, field: FieldSpec, track: bool = False):
        self.field = field
        self.p = field.p
        self.rows: dict[int, dict] = {}
        self.track = track
        self.combos: dict[int, dict] = {}
        self.reduced = True

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def reduce(self, v: dict, combo: dict | None = None) -> dict:
        """Reduce a copy of ``v`` (and ``combo`` in place, if given)."""
        rows = self.rows
        v = dict(v)
        heap = [k for k in v if k in rows]
        if not heap:
            return v
        heapq.heapify(heap)
        p = self.p
        pop, push = heapq.heappop, heapq.heappush
        while heap:
            k = pop(heap)
            c = v.get(k)
            if c is None:
                continue
            row = rows[k]
            if p:
                for j, a in row.items():
                    t = v.get(j)
                    if t is None:
                        v[j] = (-c * a) % p
                        if j in rows:
                            push(heap, j)
                    else:
                        t = (t - c * a) % p
                        if t:
                            v[j] = t
                        else:
                            del v[j]
            else:
                for j, a in row.items():
                    t = v.get(j)
                    if t is None:
                        v[j] = -c * a
                        if j in rows:
                            push(heap, j)
                    else:
                        t = t - c * a
                        if t:
                            v[j] = t
                        else:
                            del v[j]
            if combo is not None:
                axpy(combo, self.combos[k], self.field.neg(c), p)
        return v

    def insert_reduced(self, v: dict, combo: dict | None = None) -> int:
        """Insert an already-reduced nonzero vector; returns its pivot."""
        k = min(v)
        c = v[k]
        if c != 1:
            inv = self.field.inv(c)
            v = scale(v, inv, self.p)
            if combo is not None:
                combo = scale(combo, inv, self.p)
        self.rows[k] = v
        if self.track:
            self.combos[k] = combo if combo is not None else {}
        self.reduced = False
        return k

    def add(self, v: dict, tag=None) -> bool:
        """Insert ``v`` if independent of the current span; report whether it was."""
        combo = {tag: 1} if self.track else None
        r = self.reduce(v, combo)
        if not r:
            return False
        self.insert_reduced(r, combo)
        return True

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def finalize(self) -> "Echelon":
        """Back-substitute so that rows form the reduced row-echelon form."""
        if self.reduced:
            return self
        for k in sorted(self.rows, reverse=True):
            row = self.rows.pop(k)
            combo = self.combos.pop(k, None) if self.track else None
            if combo is not None:
                combo = dict(combo)
            row = self.reduce(row, combo)
            self.rows[k] = row
            if self.track:
                self.combos[k] = combo
        self.reduced = True
        return self

    def coordinates(self, v: dict) -> dict:
        """Coordinates of ``v`` in the reduced basis, keyed by pivot.

        Only valid after :meth:`finalize` and for ``v`` in the span.
        """
        return {k: v[k] for k in self.rows if k in v}


# ---------------------------------------------------------------------------
# block-level operations on lists of sparse vectors


def _dense_ok(nrows: int, ncols: int, nnz: int, field: FieldSpec) -> bool:
    if flint is None or not field.is_prime or _BACKEND == "python":
        return False
    cells = nrows * ncols
    if _BACKEND == "flint":
        return cells > 0
    return (DENSE_MIN_CELLS <= cells <= DENSE_MAX_CELLS
            and nnz >= DENSE_MIN_DENSITY * cells)


def _to_nmod(rows: Sequence[dict], ncols: int, p: int):
    flat = [0] * (len(rows) * ncols)
    for i, r in enumerate(rows):
        base = i * ncols
        for j, a in r.items():
            flat[base + j] = a
    return flint.nmod_mat(len(rows), ncols, flat, p)


def _rref_rows_flint(rows: Sequence[dict], ncols: int, p: int) -> list[dict]:
    R, rk = _to_nmod(rows, ncols, p).rref()
    if rk == 0:
        return []
    ent = [int(x) for x in R.entries()[: rk * ncols]]
    out = []
    for i in range(rk):
        base = i * ncols
        out.append({j: ent[base + j] for j in range(ncols) if ent[base + j]})
    return out


def row_echelon(rows: Iterable[dict], field: FieldSpec) -> Echelon:
    ech = Echelon(field)
    for r in rows:
        if r:
            red = ech.reduce(r)
            if red:
                ech.insert_reduced(red)
    return ech


def rref_rows(rows: Sequence[dict], ncols: int, field: FieldSpec) -> list[dict]:
    """Nonzero rows of the reduced row-echelon form, ordered by pivot."""
    nnz = sum(len(r) for r in rows)
    if _dense_ok(len(rows), ncols, nnz, field):
        return _rref_rows_flint(rows, ncols, field.p)
    ech = row_echelon(rows, field).finalize()
    return [ech.rows[k] for k in sorted(ech.rows)]


def rank_rows(rows: Sequence[dict], ncols: int, field: FieldSpec) -> int:
    rows = [r for r in rows if r]
    if not rows:
        return 0
    nnz = sum(len(r) for r in rows)
    if _dense_ok(len(rows), ncols, nnz, field):
        return _to_nmod(rows, ncols, field.p).rank()
    return len(row_echelon(rows, field))


def transpose_vectors(cols: Sequence[dict]) -> dict[int, dict]:
    """Columns (index -> entries by row) to rows keyed by row index."""
    rows: dict[int, dict] = {}
    for j, c in enumerate(cols):
        for i, a in c.items():
            rows.setdefault(i, {})[j] = a
    return rows


def kernel_of_columns(cols: Sequence[dict], field: FieldSpec) -> list[dict]:
    """Canonical basis of {c : sum_j c_j cols[j] = 0}, one vector per free column.

    The basis is the rref-derived one: free column f contributes
    e_f - sum_i R[i][f] e_{pivot_i}, listed in increasing f.
    """
    n = len(cols)
    if n == 0:
        return []
    rowmap = transpose_vectors(cols)
    rows = [rowmap[i] for i in sorted(rowmap)]
    R = rref_rows(rows, n, field)
    pivots = [min(r) for r in R]
    pivset = set(pivots)
    neg = field.neg
    basis = {f: {f: 1} for f in range(n) if f not in pivset}
    for pv, r in zip(pivots, R):
        for f, a in r.items():
            if f != pv:
                basis[f][pv] = neg(a)
    return [basis[f] for f in sorted(basis)]


# ---------------------------------------------------------------------------
# the Matrix type


class Matrix:
    """Sparse matrix over a field: rows of ``{col: value}`` with no zeros."""

    __slots__ = ("nrows", "ncols", "field", "rows")

    def __init__(self, nrows: int, ncols: int, field: FieldSpec, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        if rows is None:
            rows = [{} for _ in range(nrows)]
        if len(rows) != nrows:
            raise ValueError("row count mismatch")
        for r in rows:
            for j, a in r.items():
                if not 0 <= j < ncols:
                    raise IndexError(f"column {j} out of range")
                if not a:
                    raise ValueError("explicit zero stored")
        self.rows = rows

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], field: FieldSpec,
                   ncols: int | None = None) -> "Matrix":
        data = [list(r) for r in data]
        if ncols is None:
            ncols = len(data[0]) if data else 0
        rows = []
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            row = {}
            for j, a in enumerate(r):
                a = field(a)
                if a:
                    row[j] = a
            rows.append(row)
        return cls(len(rows), ncols, field, rows)

    @classmethod
    def from_columns(cls, cols: Sequence[dict], nrows: int,
                     field: FieldSpec) -> "Matrix":
        rowmap = transpose_vectors(cols)
        return cls(nrows, len(cols), field, [rowmap.get(i, {}) for i in range(nrows)])

    @classmethod
    def identity(cls, n: int, field: FieldSpec) -> "Matrix":
        return cls(n, n, field, [{i: 1} for i in range(n)])

    @classmethod
    def zero(cls, nrows: int, ncols: int, field: FieldSpec) -> "Matrix":
        return cls(nrows, ncols, field)

    @property
    def entries(self) -> dict[tuple[int, int], object]:
        return {(i, j): a for i, r in enumerate(self.rows) for j, a in r.items()}

    def columns(self) -> list[dict]:
        cols = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, a in r.items():
                cols[j][i] = a
        return cols

    def to_dense(self) -> list[list]:
        out = [[self.field(0)] * self.ncols for _ in range(self.nrows)]
        for i, r in enumerate(self.rows):
            for j, a in r.items():
                out[i][j] = a
        return out

    @property
    def T(self) -> "Matrix":
        return Matrix(self.ncols, self.nrows, self.field, self.columns())

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        p = self.field.p
        out = []
        for r in self.rows:
            acc: dict = {}
            for k, a in r.items():
                axpy(acc, other.rows[k], a, p)
            out.append(acc)
        return Matrix(self.nrows, other.ncols, self.field, out)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Matrix) and self.nrows == other.nrows
                and self.ncols == other.ncols and self.rows == other.rows)

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols} over {self.field.name}, nnz={sum(map(len, self.rows))})"


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row-echelon form and its (strictly increasing) pivot columns."""
    R = rref_rows([r for r in m.rows if r], m.ncols, m.field)
    pivots = tuple(min(r) for r in R)
    rows = R + [{} for _ in range(m.nrows - len(R))]
    return Matrix(m.nrows, m.ncols, m.field, rows), pivots


def rank(m: Matrix) -> int:
    return rank_rows(m.rows, m.ncols, m.field)


def kernel_basis(m: Matrix) -> Matrix:
    """Right null space basis as the columns of a ``ncols x nullity`` matrix."""
    ker = kernel_of_columns(m.columns(), m.field)
    return Matrix.from_columns(ker, m.ncols, m.field)
