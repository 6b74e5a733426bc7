"""Betti-sequence analysis: truncated series, exact recurrences, curvature.

Curvature is the reciprocal radius of convergence of the Poincare series.
From finite data it can only be estimated; when an exact rational linear
recurrence fits the data, the estimate is the largest real root of the
characteristic polynomial, isolated by Sturm sequences over Q.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactla import FieldSpec, Matrix, rref

EXPONENTIAL_THRESHOLD = Fraction(1) + Fraction(1, 10 ** 6)
ISOLATION_WIDTH = Fraction(1, 10 ** 9)
DEFAULT_MAX_ORDER = 8

FINITE = "finite"
POLYNOMIAL = "polynomial-like"
EXPONENTIAL = "exponential-like"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class TruncatedSeries:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_product(self, other)

    @classmethod
    def unit(cls, length: int) -> "TruncatedSeries":
        return cls((1,) + (0,) * (length - 1))


def series_product(a: TruncatedSeries | Sequence[int], b: TruncatedSeries | Sequence[int]) -> TruncatedSeries:
    """Cauchy product truncated to the shorter length."""
    a = a.coeffs if isinstance(a, TruncatedSeries) else tuple(a)
    b = b.coeffs if isinstance(b, TruncatedSeries) else tuple(b)
    t = min(len(a), len(b))
    return TruncatedSeries(tuple(sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(t)))


# ---------------------------------------------------------------------------
# recurrences


@dataclass(frozen=True)
class Recurrence:
    """b_n = sum_j coeffs[j-1] * b_{n-j} for every supplied n >= start."""
    coeffs: tuple[Fraction, ...]
    start: int

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def predicts(self, betti: Sequence[int]) -> bool:
        d = self.order
        return all(betti[n] == sum(a * betti[n - j - 1] for j, a in enumerate(self.coeffs))
                   for n in range(max(self.start, d), len(betti)))

    def characteristic(self) -> list[Fraction]:
        """Coefficients of x^d - a_1 x^{d-1} - ... - a_d, highest degree first."""
        return [Fraction(1)] + [-a for a in self.coeffs]


def _solve_exact(rows: list[list[int]], rhs: list[int]) -> list[Fraction] | None:
    Q = FieldSpec.rational()
    d = len(rows[0])
    aug = Matrix.from_dense([r + [y] for r, y in zip(rows, rhs)], Q)
    red, pivots = rref(aug)
    if d in pivots:
        return None
    sol = [Fraction(0)] * d
    for i, c in enumerate(pivots):
        sol[c] = Fraction(red.rows[i].get(d, 0)) if i < len(red.rows) else Fraction(0)
    return sol


def fit_recurrence(betti: Sequence[int], max_order: int = DEFAULT_MAX_ORDER) -> Recurrence | None:
    """Minimal-order exact recurrence valid from some start <= max_order.

    Order d is accepted only when at least 2d equations support it, so d of
    them determine the coefficients and the other d confirm them.  The order is capped so that the
    data can overdetermine it.
    """
    b = [int(x) for x in betti]
    N = len(b)
    max_order = min(max_order, max(0, (N - 2) // 2))
    for d in range(0, max_order + 1):
        for n0 in range(0, max_order + 1):
            eqs = range(max(n0, d), N)
            if len(eqs) < max(2 * d, 2):
                break
            if d == 0:
                if all(b[n] == 0 for n in eqs):
                    return Recurrence((), n0)
                continue
            rows = [[b[n - j] for j in range(1, d + 1)] for n in eqs]
            sol = _solve_exact(rows, [b[n] for n in eqs])
            if sol is not None:
                rec = Recurrence(tuple(sol), n0)
                if rec.predicts(b):
                    return rec
    return None


# ---------------------------------------------------------------------------
# exact real-root isolation


def _strip(p: list[Fraction]) -> list[Fraction]:
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def _polyval(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in p:
        acc = acc * x + c
    return acc


def _polyrem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while len(a) >= len(b) and any(a):
        q = a[0] / b[0]
        for i in range(len(b)):
            a[i] -= q * b[i]
        a.pop(0)
    return _strip(a) if a else [Fraction(0)]


def _derivative(p: list[Fraction]) -> list[Fraction]:
    d = len(p) - 1
    return [c * (d - i) for i, c in enumerate(p[:-1])] or [Fraction(0)]


def _gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    while any(b):
        a, b = b, _polyrem(a, b)
    return [c / a[0] for c in a]


def _polydiv(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    q = []
    while len(a) >= len(b):
        c = a[0] / b[0]
        q.append(c)
        for i in range(len(b)):
            a[i] -= c * b[i]
        a.pop(0)
    return q or [Fraction(0)]


def _sturm(p: list[Fraction]) -> list[list[Fraction]]:
    seq = [p, _derivative(p)]
    while len(seq[-1]) > 1 or seq[-1][0] != 0:
        r = _polyrem(seq[-2], seq[-1])
        if not any(r):
            break
        seq.append([-c for c in r])
    return seq


def _sign_changes(seq, x: Fraction) -> int:
    signs = [s for s in (_polyval(q, x) for q in seq) if s != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if (u > 0) != (v > 0))


@dataclass(frozen=True)
class RootInterval:
    """The largest real root of ``poly`` lies in (low, high], or equals
    ``low == high`` when it is rational and was found exactly."""
    poly: tuple[Fraction, ...]
    low: Fraction
    high: Fraction

    @property
    def exact(self) -> bool:
        return self.low == self.high


def largest_real_root(poly: Sequence[Fraction], width: Fraction = ISOLATION_WIDTH) -> RootInterval | None:
    p = _strip([Fraction(c) for c in poly])
    if len(p) < 2:
        return None
    g = _gcd(p, _derivative(p))
    sq = _polydiv(p, g) if len(g) > 1 else p
    sq = [c / sq[0] for c in sq]
    bound = 1 + max(abs(c) for c in sq[1:])
    seq = _sturm(sq)
    lo, hi = -bound, bound
    if _sign_changes(seq, lo) - _sign_changes(seq, hi) == 0:
        return None
    while hi - lo > width:
        mid = (lo + hi) / 2
        if _sign_changes(seq, mid) - _sign_changes(seq, hi) > 0:
            lo = mid
        else:
            hi = mid
    # snap to a small-denominator rational root when there is one
    guess = ((lo + hi) / 2).limit_denominator(10 ** 4)
    if lo <= guess <= hi and _polyval(sq, guess) == 0:
        lo = hi = guess
    return RootInterval(tuple(sq), lo, hi)


# ---------------------------------------------------------------------------
# classification


def strictly_increasing_from(betti: Sequence[int]) -> int | None:
    """Least i0 with b_i < b_{i+1} for every computed i >= i0."""
    b = list(betti)
    if len(b) < 2 or b[-2] >= b[-1]:
        return None
    i = len(b) - 2
    while i > 0 and b[i - 1] < b[i]:
        i -= 1
    return i


def polynomial_fit_degree(betti: Sequence[int], max_degree: int = DEFAULT_MAX_ORDER) -> int | None:
    """Least D such that a tail of the data agrees with a degree-D polynomial
    (vanishing (D+1)-st differences), with at least two confirming values."""
    b = [int(x) for x in betti]
    for D in range(0, max_degree + 1):
        for start in range(0, max(0, len(b) - D - 2)):
            tail = b[start:]
            diff = tail
            for _ in range(D + 1):
                diff = [v - u for u, v in zip(diff, diff[1:])]
            if len(diff) >= 2 and not any(diff):
                return D
            if start > max_degree:
                break
    return None


@dataclass
class GrowthReport:
    betti: tuple[int, ...]
    recurrence: Recurrence | None
    curvature_low: Fraction
    curvature_high: Fraction
    classification: str
    strictly_increasing_from: int | None
    root: RootInterval | None = None
    threshold: Fraction = EXPONENTIAL_THRESHOLD
    width: Fraction = ISOLATION_WIDTH
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        rec = None
        if self.recurrence is not None:
            rec = [_num(a) for a in self.recurrence.coeffs]
        out = {
            "recurrence": rec,
            "recurrence_start": None if self.recurrence is None else self.recurrence.start,
            "curvature_low": float(self.curvature_low),
            "curvature_high": float(self.curvature_high),
            "classification": self.classification,
            "strictly_increasing_from": self.strictly_increasing_from,
            "threshold": str(self.threshold),
            "isolation_width": str(self.width),
        }
        if self.root is not None:
            out["curvature_root"] = {
                "polynomial": [_num(c) for c in self.root.poly],
                "interval": [str(self.root.low), str(self.root.high)],
            }
        return out


def _num(a: Fraction):
    return int(a) if a.denominator == 1 else str(a)


def _window_bounds(betti: Sequence[int]) -> tuple[Fraction, Fraction]:
    n = len(betti)
    vals = [b ** (1.0 / i) for i, b in enumerate(betti) if i >= max(1, n // 2) and b > 0]
    if not vals:
        return Fraction(0), Fraction(0)
    return Fraction(min(vals)), Fraction(max(vals))


def curvature_estimate(betti: Sequence[int], recurrence: Recurrence | None = None,
                       max_order: int = DEFAULT_MAX_ORDER,
                       width: Fraction = ISOLATION_WIDTH,
                       threshold: Fraction = EXPONENTIAL_THRESHOLD) -> GrowthReport:
    b = tuple(int(x) for x in betti)
    inc = strictly_increasing_from(b)
    if any(x == 0 for x in b):
        return GrowthReport(b, recurrence, Fraction(0), Fraction(0), FINITE, inc,
                            width=width, threshold=threshold)
    if recurrence is None:
        recurrence = fit_recurrence(b, max_order)
    root = None
    notes = []
    if recurrence is not None and recurrence.order > 0:
        root = largest_real_root(recurrence.characteristic(), width)
    if root is not None:
        low, high = max(root.low, Fraction(0)), max(root.high, Fraction(0))
    else:
        low, high = _window_bounds(b)
        notes.append("no exact recurrence; bounds are window root estimates")
    if low > threshold:
        cls = EXPONENTIAL
    elif low <= 1 <= high or (root is None and high <= threshold):
        nondecreasing = all(u <= v for u, v in zip(b[1:], b[2:]))
        if root is not None and nondecreasing and polynomial_fit_degree(b, max_order) is not None:
            cls = POLYNOMIAL
        else:
            cls = INCONCLUSIVE
    else:
        cls = INCONCLUSIVE
    return GrowthReport(b, recurrence, low, high, cls, inc, root, threshold, width, notes)


def analyze(betti: Sequence[int], max_order: int = DEFAULT_MAX_ORDER) -> GrowthReport:
    return curvature_estimate(betti, None, max_order)


# ---------------------------------------------------------------------------
# Gorenstein deviation


@dataclass
class DeviationReport:
    low: Fraction
    high: Fraction
    omega: GrowthReport | None
    k: GrowthReport | None

    @property
    def exact(self) -> bool:
        return self.low == self.high

    def to_json(self) -> dict:
        return {
            "g_low": float(self.low),
            "g_high": float(self.high),
            "g_interval": [str(self.low), str(self.high)],
            "omega": None if self.omega is None else self.omega.to_json(),
            "k": None if self.k is None else self.k.to_json(),
        }


def deviation_from_betti(omega_betti: Sequence[int], k_betti: Sequence[int] | None) -> DeviationReport:
    """g(R) interval [low_w / high_k, high_w / low_k] from the two Betti sequences."""
    gw = curvature_estimate(omega_betti)
    if len(omega_betti) > 1 and omega_betti[1] == 0:
        return DeviationReport(Fraction(0), Fraction(0), gw, None)
    if k_betti is None:
        raise ValueError("k's Betti numbers are needed when omega is not free")
    gk = curvature_estimate(k_betti)
    if gk.curvature_low <= 0:
        return DeviationReport(Fraction(0), Fraction(1), gw, gk)
    return DeviationReport(gw.curvature_low / gk.curvature_high,
                           gw.curvature_high / gk.curvature_low, gw, gk)


def gorenstein_deviation(R, steps: int = 8, budget: int | None = None) -> DeviationReport:
    """Interval for curv(omega) / curv(k); exactly 0 when omega is free."""
    from .modres import DEFAULT_BUDGET, canonical_module, residue_field

    if steps < 4:
        raise ValueError("steps must be at least 4")
    budget = budget or DEFAULT_BUDGET
    bw = canonical_module(R).resolution(steps, budget=budget).betti_sequence(steps)
    if bw[1] == 0:
        return deviation_from_betti(bw, None)
    bk = residue_field(R).resolution(steps, budget=budget).betti_sequence(steps)
    return deviation_from_betti(bw, bk)
