"""Executable Gorenstein criteria and Betti bounds over Artinian rings.

Everything here works in dimension zero: the regular sequence that would
cut a Cohen-Macaulay ring down to an Artinian one is empty, so quantities
such as l(mM/xM) become l(mM).  Positive-dimensional inputs never reach this
module because ``from_quotient`` rejects them.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

from .artinalg import ArtinAlgebra, from_quotient
from .errors import HypothesisFails, SizeCap, ZeroModule
from .exactla import FieldSpec
from .growth import POLYNOMIAL, curvature_estimate, polynomial_fit_degree
from .modres import (DEFAULT_BUDGET, PresentedModule, canonical_module,
                     cyclic_module, ext_dims, ideal_module, matlis_dual,
                     regular_module, residue_field, syzygy_module, tor_dims)
from .polyring import Polynomial, degree

DEFAULT_EXT_DEPTH = 8


# ---------------------------------------------------------------------------
# Betti bound


def m_kills_tensor(M: PresentedModule, N: PresentedModule, budget: int = DEFAULT_BUDGET) -> bool:
    """m(M (x) N) = 0, via l(M (x) N) = mu(M) mu(N)."""
    return tor_dims(M, N, 0, budget=budget)[0] == M.mu * N.mu


def m_kills_mM(M: PresentedModule) -> bool:
    return M.m_power_dim(2) == 0


@dataclass
class BoundCheck:
    hypothesis_kind: str  # "tor" or "ext"
    window: tuple[int, int]
    ratio: Fraction
    hypothesis_holds: bool
    satisfied: bool
    equality: bool
    equality_conditions: dict
    b_n: int
    b_n_minus_1: int
    degenerate: bool = False  # the (n-1)-th syzygy is zero, so both sides vanish

    def to_json(self) -> dict:
        d = asdict(self)
        d["ratio"] = str(self.ratio)
        d["window"] = list(self.window)
        d["kind"] = "betti_bound"
        return d


def betti_bound_check(M: PresentedModule, N: PresentedModule, n: int, kind: str = "tor",
                      require: bool = True, budget: int = DEFAULT_BUDGET) -> BoundCheck:
    """b_n(N) <= l(mM)/mu(M) * b_{n-1}(N) when Tor_n(M,N) = 0 (or Ext^n(M, N^v) = 0).

    The two equality conditions are evaluated against the (n-1)-th syzygy of
    N, the module the bound is really about; for n = 1 that is N itself.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if kind == "tor":
        holds = tor_dims(M, N, n, budget=budget)[n] == 0
    elif kind == "ext":
        holds = ext_dims(M, matlis_dual(N), n, budget=budget)[n] == 0
    else:
        raise ValueError(f"unknown hypothesis kind {kind!r}")
    if require and not holds:
        raise HypothesisFails(f"the {kind} window at n={n} does not vanish")
    mu = M.mu
    lm = M.dim - mu
    ratio = Fraction(lm, mu)
    betti = N.resolution(n, budget=budget).betti_sequence(n)
    bn, bp = betti[n], betti[n - 1]
    try:
        X = syzygy_module(N, n - 1, budget=budget)
        kills_t = m_kills_tensor(M, X, budget=budget)
    except ZeroModule:
        kills_t = True
    conds = {"m_kills_tensor": kills_t, "m_kills_mM": m_kills_mM(M)}
    return BoundCheck(kind, (n, n), ratio, holds, bn * mu <= lm * bp, bn * mu == lm * bp,
                      conds, bn, bp, degenerate=bp == 0)


# ---------------------------------------------------------------------------
# Gorenstein criteria


@dataclass
class Verdict:
    variant: str
    applies: bool
    strict: bool
    conclusion: str | None
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        d = asdict(self)
        d["kind"] = "gorenstein_criterion"
        return d


def ext_vanishing_to(M: PresentedModule, depth: int, budget: int = DEFAULT_BUDGET) -> int:
    """Largest t <= depth with Ext^i(M, R) = 0 for 1 <= i <= t."""
    e = ext_dims(M, regular_module(M.ring), depth, budget=budget)
    t = 0
    for i in range(1, depth + 1):
        if e[i]:
            break
        t = i
    return t


def in_class_c(R: ArtinAlgebra) -> bool:
    """Membership tests available for an Artinian ring: codimension <= 3 or m^3 = 0."""
    return R.profile().embedding_dim <= 3 or R.profile().nil_index <= 3


def gorenstein_criterion(R: ArtinAlgebra, M: PresentedModule, variant: str = "manygens",
                         depth: int = DEFAULT_EXT_DEPTH, budget: int = DEFAULT_BUDGET) -> Verdict:
    if M.ring is not R:
        raise ValueError("module is over a different ring")
    mu = M.mu
    lm = M.dim - mu
    strict = lm < mu
    equal = lm == mu
    details = {"l_mM": lm, "mu": mu}
    if variant == "manygens":
        window = canonical_module(R).mu
        aux = False
        if equal:
            aux = (not m_kills_tensor(M, canonical_module(R), budget)) or not m_kills_mM(M)
            details["aux_nonvanishing"] = aux
        ineq = strict or (equal and aux)
        pre = True
    elif variant == "genGor":
        # an Artinian ring is its own localisation at the unique minimal prime
        pre = R.is_gorenstein()
        details["generically_gorenstein"] = pre
        window = 1
        aux = False
        if equal:
            aux = (not m_kills_tensor(M, canonical_module(R), budget)) or not m_kills_mM(M)
            details["aux_nonvanishing"] = aux
        ineq = strict or (equal and aux)
    elif variant == "classD":
        pre = in_class_c(R)
        details["in_class_c"] = pre
        window = depth
        ineq = lm <= mu
    else:
        raise ValueError(f"unknown variant {variant!r}")
    details["ext_window"] = [1, window]
    if not (pre and ineq):
        return Verdict(variant, False, strict, None, details)
    t = ext_vanishing_to(M, window, budget)
    details["ext_vanishing_to"] = t
    if t < window:
        return Verdict(variant, False, strict, None, details)
    conclusion = "criterion-satisfied"
    if not R.is_gorenstein():
        conclusion = "Gorenstein-certified-inconsistency"
    return Verdict(variant, True, strict, conclusion, details)


def tachikawa_check(R: ArtinAlgebra, depth: int | None = None,
                    budget: int = DEFAULT_BUDGET) -> Verdict:
    """2 dim soc(R) > l(R) together with Ext^i(omega, R) = 0 for 1 <= i <= mu(omega)."""
    soc = len(R.socle())
    hyp = 2 * soc > R.dim
    details = {"socle_dim": soc, "length": R.dim, "socle_inequality": hyp}
    if not hyp:
        return Verdict("tachikawa", False, False, None, details)
    w = canonical_module(R)
    window = depth if depth is not None else w.mu
    ext = ext_dims(w, regular_module(R), window, budget=budget)
    details["ext"] = ext[1:]
    if any(ext[1:]):
        return Verdict("tachikawa", False, True, None, details)
    conclusion = "criterion-satisfied" if R.is_gorenstein() else "Gorenstein-certified-inconsistency"
    return Verdict("tachikawa", True, True, conclusion, details)


# ---------------------------------------------------------------------------
# radical cube zero


@dataclass
class LescotPrediction:
    case: str
    e: int
    s: int
    socle_eq_m2: bool
    e_b0_eq_length: bool
    replaced_by_syzygy: bool

    def to_json(self) -> dict:
        d = asdict(self)
        d["kind"] = "lescot"
        return d


def lescot_classify(R: ArtinAlgebra, M: PresentedModule, steps: int = 8,
                    budget: int = DEFAULT_BUDGET) -> LescotPrediction:
    prof = R.profile()
    if prof.nil_index > 3:
        raise ValueError("lescot_classify needs m^3 = 0")
    res = M.resolution(1, budget=budget)
    if res.betti_at(1) == 0:
        raise ValueError("M is free")
    X, replaced = M, False
    if M.m_power_dim(2):
        X, replaced = syzygy_module(M, 1, budget=budget), True
    e, s = prof.embedding_dim, prof.s
    soc_eq = R.socle_equals_m2()
    eb = e * X.mu == X.dim
    kb = residue_field(R).resolution(steps, budget=budget).betti_sequence(steps)
    if polynomial_fit_degree(kb) is not None and curvature_estimate(kb).classification == POLYNOMIAL:
        case = "outside-scope"
    elif soc_eq and s == e - 1 and s >= 2 and eb:
        case = "exceptional-stationary"
    else:
        case = "exponential-strictly-increasing"
    return LescotPrediction(case, e, s, soc_eq, eb, replaced)


# ---------------------------------------------------------------------------
# monomial hypothesis


def monomial_growth_hypothesis(gens: Sequence[tuple], nvars: int) -> tuple[int, int, int] | None:
    """Indices (i, j, l), j < l, with x_i x_j and x_i x_l in the monomial ideal.

    Square-free witnesses are preferred; among the others, x_i^2 is taken as
    the second product before it is taken as the first.
    """
    gens = [tuple(g) for g in gens]

    def member(m):
        return any(all(a <= b for a, b in zip(g, m)) for g in gens)

    def quad(i, j):
        m = [0] * nvars
        m[i] += 1
        m[j] += 1
        return tuple(m)

    tiers = (lambda i, j, l: i not in (j, l), lambda i, j, l: l == i, lambda i, j, l: j == i)
    for tier in tiers:
        for i in range(nvars):
            for j, l in itertools.combinations(range(nvars), 2):
                if tier(i, j, l) and member(quad(i, j)) and member(quad(i, l)):
                    return (i, j, l)
    return None


def tor_injectivity_consequence(q_betti: Sequence[int], r_betti: Sequence[int]) -> bool:
    n = min(len(q_betti), len(r_betti))
    return all(q_betti[i] <= r_betti[i] for i in range(n))


# ---------------------------------------------------------------------------
# random monomial quotients


@dataclass
class ScanConfig:
    max_vars: int = 3
    max_socle_degree: int = 4
    samples: int = 500
    seed: int = 0
    probability: float = 0.3
    field: FieldSpec = field(default_factory=FieldSpec.prime)
    growth_steps: int = 0
    budget: int = DEFAULT_BUDGET


VAR_NAMES = "xyzwuv"


def sample_seed(seed: int, index: int) -> int:
    return seed * 1_000_003 + index


def random_monomial_ring(rng: random.Random, cfg: ScanConfig) -> tuple[list[str], list[tuple]]:
    """Monomials of degree 2..D drawn with the configured probability, plus
    every monomial of degree D + 1 so the socle degree stays at most D."""
    n = rng.randint(1, cfg.max_vars)
    D = cfg.max_socle_degree
    chosen = []
    for d in range(2, D + 1):
        for m in _monomials(n, d):
            if rng.random() < cfg.probability:
                chosen.append(m)
    chosen.extend(_monomials(n, D + 1))
    return list(VAR_NAMES[:n]), _minimalize(chosen)


def _monomials(n: int, d: int) -> list[tuple]:
    out = []
    for c in itertools.combinations_with_replacement(range(n), d):
        m = [0] * n
        for i in c:
            m[i] += 1
        out.append(tuple(m))
    return sorted(set(out), reverse=True)


def _minimalize(monos: list[tuple]) -> list[tuple]:
    monos = sorted(set(monos), key=lambda m: (degree(m), tuple(-a for a in m)))
    out = []
    for m in monos:
        if not any(all(a <= b for a, b in zip(g, m)) for g in out):
            out.append(m)
    return out


def monomial_ring(names: Sequence[str], monos: Sequence[tuple], F: FieldSpec | None = None) -> ArtinAlgebra:
    F = F or FieldSpec.prime()
    return from_quotient(F, names, [Polynomial.monomial(m, F) for m in monos])


def monomial_text(names, m) -> str:
    parts = [v if a == 1 else f"{v}^{a}" for v, a in zip(names, m) if a]
    return "*".join(parts) or "1"


def ring_spec_text(names, monos, F: FieldSpec | None = None) -> str:
    F = F or FieldSpec.prime()
    ideal = ", ".join(monomial_text(names, m) for m in monos)
    return f"ring {{ field: {F.name}; vars: {', '.join(names)}; ideal: {ideal} }}"


@dataclass
class ScanRecord:
    index: int
    seed: int
    ring: str
    dim: int
    gorenstein: bool
    b0: int | None
    b1: int | None
    finding: bool
    growth: str | None = None

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class ScanReport:
    config: dict
    records: list[ScanRecord]

    @property
    def findings(self) -> list[ScanRecord]:
        return [r for r in self.records if r.finding]

    def summary(self) -> dict:
        ng = [r for r in self.records if not r.gorenstein]
        return {
            "samples": len(self.records),
            "gorenstein": len(self.records) - len(ng),
            "non_gorenstein": len(ng),
            "b1_gt_b0": sum(1 for r in ng if r.b1 > r.b0),
            "findings": len(self.findings),
            "min_b1_minus_b0": min((r.b1 - r.b0 for r in ng), default=None),
        }


def b1_vs_b0_scan(cfg: ScanConfig) -> ScanReport:
    records = []
    for idx in range(cfg.samples):
        s = sample_seed(cfg.seed, idx)
        rng = random.Random(s)
        names, monos = random_monomial_ring(rng, cfg)
        R = monomial_ring(names, monos, cfg.field)
        gor = R.is_gorenstein()
        b0 = b1 = None
        finding = False
        growth = None
        if not gor:
            w = canonical_module(R)
            res = w.resolution(1, budget=cfg.budget)
            b0, b1 = res.betti_at(0), res.betti_at(1)
            finding = b1 <= b0
            if cfg.growth_steps:
                seq = w.resolution(cfg.growth_steps, budget=cfg.budget).betti_sequence(cfg.growth_steps)
                growth = curvature_estimate(seq).classification
        records.append(ScanRecord(idx, s, ring_spec_text(names, monos, cfg.field), R.dim, gor,
                                  b0, b1, finding, growth))
    conf = asdict(cfg)
    conf["field"] = cfg.field.name
    return ScanReport(conf, records)


# ---------------------------------------------------------------------------
# randomized soundness search for the bound and the criteria


@dataclass
class SearchInstance:
    index: int
    ring: str
    module_M: str
    module_N: str
    n: int
    bound: dict | None
    verdicts: list[dict]
    socle_dim: int


def _random_module(R: ArtinAlgebra, rng: random.Random) -> tuple[str, PresentedModule]:
    n = R.nvars
    kind = rng.choice(["cyclic", "cyclic", "ideal", "ideal", "canonical", "k", "regular"])
    if kind == "canonical":
        return "canonical", canonical_module(R)
    if kind == "k":
        return "k", residue_field(R)
    if kind == "regular":
        return "R", regular_module(R)
    F = R.field
    polys = []
    for _ in range(rng.randint(1, 2)):
        m = [0] * n
        for _ in range(rng.randint(1, 2)):
            m[rng.randrange(n)] += 1
        f = Polynomial.monomial(tuple(m), F)
        if rng.random() < 0.3 and n > 1:
            m2 = [0] * n
            m2[rng.randrange(n)] += sum(m)
            f = f + Polynomial.monomial(tuple(m2), F, rng.randint(1, 5))
        polys.append(f)
    text = ", ".join(p.format(R.variables) for p in polys)
    if kind == "cyclic":
        return f"cyclic({text})", cyclic_module(R, polys)
    return f"ideal({text})", ideal_module(R, polys)


def _random_search_ring(rng: random.Random, F: FieldSpec) -> tuple[list[str], list[tuple]]:
    n = rng.randint(1, 3)
    if rng.random() < 0.3:
        # complete intersection of pure powers: Tor-vanishing pairs are common
        return list(VAR_NAMES[:n]), [tuple(rng.randint(2, 3) if i == j else 0 for i in range(n)) for j in range(n)]
    cfg = ScanConfig(max_vars=n, max_socle_degree=3, probability=0.35)
    names, monos = random_monomial_ring(rng, cfg)
    return names, monos


def soundness_search(samples: int = 200, seed: int = 0, n_max: int = 3,
                     F: FieldSpec | None = None, budget: int = DEFAULT_BUDGET) -> list[SearchInstance]:
    F = F or FieldSpec.prime()
    out = []
    for idx in range(samples):
        rng = random.Random(sample_seed(seed, idx))
        names, monos = _random_search_ring(rng, F)
        R = monomial_ring(names, monos, F)
        try:
            mname, M = _random_module(R, rng)
            nname, N = _random_module(R, rng)
        except ZeroModule:
            continue
        n = rng.randint(1, n_max)
        kind = rng.choice(["tor", "ext"])
        try:
            bound = betti_bound_check(M, N, n, kind=kind, require=False, budget=budget)
            bound_json = bound.to_json()
        except (ZeroModule, SizeCap):
            bound_json = None
        verdicts = []
        for variant in ("manygens", "genGor", "classD"):
            try:
                verdicts.append(gorenstein_criterion(R, M, variant, depth=6, budget=budget).to_json())
            except SizeCap:
                pass
        try:
            verdicts.append(tachikawa_check(R, budget=budget).to_json())
        except SizeCap:
            pass
        out.append(SearchInstance(idx, ring_spec_text(names, monos, F), mname, nname, n,
                                  bound_json, verdicts, len(R.socle())))
    return out
