"""Modules over an Artinian algebra, minimal free resolutions, Tor, Ext,
duals and Hom.

A module is held as a finite-dimensional k-vector space with the action of
each ring variable (``act[v][c]`` is the image of basis vector ``c``) and a
degree label per basis vector in a grading group coarser than or equal to
the ring's.  Free modules R^b use the index ``g * dim R + j`` for
``generator g`` times ``basis[j]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .artinalg import ArtinAlgebra
from .errors import SizeCap, ZeroModule
from .exactla import Echelon, axpy, kernel_of_columns, rank_rows, transpose_vectors
from .grading import Degree, Grading
from .polyring import Polynomial

DEFAULT_BUDGET = 10 ** 8


# ---------------------------------------------------------------------------
# helpers on free modules


def free_mul_basis(R: ArtinAlgebra, j: int, y: dict) -> dict:
    """basis[j] * y for y in a free module R^b."""
    n = R.dim
    row = R.mul[j]
    p = R.field.p
    out: dict = {}
    for idx, c in y.items():
        g, t = divmod(idx, n)
        base = g * n
        for s, z in row[t].items():
            k = base + s
            val = (out.get(k, 0) + c * z) % p if p else out.get(k, 0) + c * z
            if val:
                out[k] = val
            else:
                out.pop(k, None)
    return out


def free_mul_var(R: ArtinAlgebra, v: int, y: dict) -> dict:
    n = R.dim
    col = R.mul_var[v]
    p = R.field.p
    out: dict = {}
    for idx, c in y.items():
        g, t = divmod(idx, n)
        base = g * n
        for s, z in col[t].items():
            k = base + s
            val = (out.get(k, 0) + c * z) % p if p else out.get(k, 0) + c * z
            if val:
                out[k] = val
            else:
                out.pop(k, None)
    return out


def _group(items, key):
    out: dict = {}
    for it in items:
        out.setdefault(key(it), []).append(it)
    return out


# ---------------------------------------------------------------------------
# modules


class PresentedModule:
    """A finitely generated R-module with its k-structure and lazily computed
    minimal presentation (the first step of its minimal resolution)."""

    def __init__(self, ring: ArtinAlgebra, dim: int, act: list[list[dict]],
                 degs: Sequence[Degree], grading: Grading | None = None, name: str = ""):
        self.ring = ring
        self.dim = dim
        self.act = act
        self.grading = grading if grading is not None else ring.grading
        self.degs = [self.grading.canonical(d) for d in degs]
        self.name = name
        self._gens = None
        self._resolution = None

    # -- basic structure ------------------------------------------------------

    @property
    def field(self):
        return self.ring.field

    @property
    def length(self) -> int:
        return self.dim

    def var_degree(self, v: int) -> Degree:
        return self.grading.canonical(tuple(int(i == v) for i in range(self.ring.nvars)))

    def ring_degree(self, j: int) -> Degree:
        return self.grading.canonical(self.ring.basis[j])

    def act_var(self, v: int, y: dict) -> dict:
        out: dict = {}
        col = self.act[v]
        p = self.field.p
        for c, a in y.items():
            axpy(out, col[c], a, p)
        return out

    def act_all(self, y: dict) -> list[dict]:
        """[basis[j] * y for j in range(dim R)] along the factorisation path."""
        R = self.ring
        out = [y]
        for j in range(1, R.dim):
            v, par = R.parent[j]
            out.append(self.act_var(v, out[par]))
        return out

    def act_element(self, r: dict, y: dict) -> dict:
        imgs = self.act_all(y)
        out: dict = {}
        for j, c in r.items():
            axpy(out, imgs[j], c, self.field.p)
        return out

    def coarsen(self, G: Grading) -> "PresentedModule":
        if G == self.grading:
            return self
        return PresentedModule(self.ring, self.dim, self.act, self.degs, G, self.name)

    def m_span(self, vectors: Sequence[dict] | None = None) -> list[dict]:
        """Echelon basis of m * span(vectors) (default: m * M)."""
        if vectors is None:
            vectors = [{c: 1} for c in range(self.dim)]
        blocks: dict = {}
        for y in vectors:
            for v in range(self.ring.nvars):
                w = self.act_var(v, y)
                if w:
                    d = self.degs[next(iter(w))]
                    blocks.setdefault(d, Echelon(self.field)).add(w)
        out = []
        for d in sorted(blocks):
            ech = blocks[d].finalize()
            out.extend(ech.rows[k] for k in sorted(ech.rows))
        return out

    def generators(self) -> list[int]:
        """Basis indices whose classes form a basis of M/mM (lifted minimal generators)."""
        if self._gens is None:
            mM = self.m_span()
            blocks: dict = {}
            for w in mM:
                d = self.degs[next(iter(w))]
                blocks.setdefault(d, Echelon(self.field)).add(w)
            gens = []
            for c in range(self.dim):
                ech = blocks.setdefault(self.degs[c], Echelon(self.field))
                if ech.add({c: 1}):
                    gens.append(c)
            self._gens = gens
        return self._gens

    @property
    def mu(self) -> int:
        return len(self.generators())

    def m_power_dim(self, t: int) -> int:
        """dim_k m^t M."""
        span = [{c: 1} for c in range(self.dim)]
        for _ in range(t):
            span = self.m_span(span)
            if not span:
                break
        return len(span)

    def is_killed_by_m(self) -> bool:
        return all(not col for cols in self.act for col in cols)

    def is_free(self) -> bool:
        return self.dim == self.mu * self.ring.dim and self.resolution(1).betti_at(1) == 0

    # -- resolutions ----------------------------------------------------------

    def resolution(self, steps: int, budget: int = DEFAULT_BUDGET) -> "Resolution":
        if self._resolution is None:
            self._resolution = Resolution(self, budget=budget)
        self._resolution.budget = max(self._resolution.budget, budget)
        return self._resolution.extend(steps)

    @property
    def gens(self) -> int:
        return self.mu

    @property
    def rels(self) -> int:
        return self.resolution(1).betti_at(1)

    @property
    def presentation(self) -> list[list[dict]]:
        """Minimal presentation as a gens x rels matrix of ring elements."""
        return self.resolution(1).matrix(1)

    def __repr__(self) -> str:
        nm = f" {self.name}" if self.name else ""
        return f"PresentedModule({nm.strip() or 'M'}: length {self.dim}, over dim-{self.ring.dim} ring)"


# -- constructors -------------------------------------------------------------


def residue_field(R: ArtinAlgebra) -> PresentedModule:
    return PresentedModule(R, 1, [[{}] for _ in range(R.nvars)],
                           [R.grading.zero()], name="k")


def regular_module(R: ArtinAlgebra) -> PresentedModule:
    return PresentedModule(R, R.dim, [list(col) for col in R.mul_var],
                           list(R.degrees), name="R")


def free_module(R: ArtinAlgebra, rank: int, degs: Sequence[Degree] | None = None,
                grading: Grading | None = None) -> PresentedModule:
    G = grading or R.grading
    n = R.dim
    if degs is None:
        degs = [G.zero()] * rank
    act = []
    for v in range(R.nvars):
        cols = []
        for g in range(rank):
            base = g * n
            for j in range(n):
                cols.append({base + s: c for s, c in R.mul_var[v][j].items()})
        act.append(cols)
    bdegs = [G.add(degs[g], R.basis[j]) for g in range(rank) for j in range(n)]
    return PresentedModule(R, rank * n, act, bdegs, G, name=f"R^{rank}")


def matlis_dual(M: PresentedModule) -> PresentedModule:
    """Hom_k(M, k) with (r f)(m) = f(r m): transposed action, negated degrees."""
    act = []
    for v in range(M.ring.nvars):
        cols = [{} for _ in range(M.dim)]
        for c, col in enumerate(M.act[v]):
            for t, a in col.items():
                cols[t][c] = a
        act.append(cols)
    G = M.grading
    return PresentedModule(M.ring, M.dim, act, [G.neg(d) for d in M.degs], G,
                           name=f"{M.name or 'M'}^v")


def canonical_module(R: ArtinAlgebra) -> PresentedModule:
    """omega = Hom_k(R, k), built on the dual basis of the standard monomials."""
    w = matlis_dual(regular_module(R))
    w.name = "omega"
    return w


def _homogenize(M: PresentedModule, vectors: Sequence[dict]) -> PresentedModule:
    """Coarsen M's grading until every given vector is homogeneous."""
    G = M.grading
    while True:
        extra = []
        for y in vectors:
            ds = {M.degs[c] if G is M.grading else G.canonical(M.degs[c]) for c in y}
            ds = sorted(ds)
            extra.extend(tuple(a - b for a, b in zip(d, ds[0])) for d in ds[1:])
        if not extra:
            return M.coarsen(G)
        G = G.extend(extra)


def _closure(M: PresentedModule, gens: Sequence[dict]) -> dict:
    """Per-degree echelon forms of the R-submodule generated by ``gens``."""
    blocks: dict = {}
    for y in gens:
        if not y:
            continue
        for w in M.act_all(y):
            if w:
                d = M.degs[next(iter(w))]
                blocks.setdefault(d, Echelon(M.field)).add(w)
    for ech in blocks.values():
        ech.finalize()
    return blocks


def _rows_from_blocks(blocks: dict) -> list[tuple[int, dict]]:
    """(pivot, row) pairs ordered by pivot across all blocks."""
    rows = [(k, r) for ech in blocks.values() for k, r in ech.rows.items()]
    rows.sort(key=lambda kr: kr[0])
    return rows


def submodule(M: PresentedModule, gens: Sequence[dict], name: str = "") -> PresentedModule:
    """The R-submodule of M generated by the given vectors."""
    M = _homogenize(M, gens)
    rows = _rows_from_blocks(_closure(M, gens))
    if not rows:
        raise ZeroModule("the generated submodule is zero")
    pos = {k: i for i, (k, _) in enumerate(rows)}
    act = []
    for v in range(M.ring.nvars):
        cols = []
        for _, r in rows:
            w = M.act_var(v, r)
            cols.append({pos[k]: w[k] for k in w if k in pos})
        act.append(cols)
    degs = [M.degs[k] for k, _ in rows]
    sub = PresentedModule(M.ring, len(rows), act, degs, M.grading, name=name)
    sub.embedding = [r for _, r in rows]
    sub.ambient = M
    return sub


def quotient(M: PresentedModule, gens: Sequence[dict], name: str = "") -> PresentedModule:
    """M / (R-submodule generated by gens)."""
    M = _homogenize(M, gens)
    blocks = _closure(M, gens)
    rows = dict(_rows_from_blocks(blocks))
    keep = [c for c in range(M.dim) if c not in rows]
    if not keep:
        raise ZeroModule("the quotient is zero")
    pos = {c: i for i, c in enumerate(keep)}

    def project(w: dict) -> dict:
        ech = blocks.get(M.degs[next(iter(w))]) if w else None
        if ech is not None:
            w = ech.reduce(w)
        return {pos[c]: a for c, a in w.items()}

    act = [[project(M.act[v][c]) for c in keep] for v in range(M.ring.nvars)]
    q = PresentedModule(M.ring, len(keep), act, [M.degs[c] for c in keep], M.grading, name=name)
    q.projection = project
    return q


def cyclic_module(R: ArtinAlgebra, polys: Sequence[Polynomial], name: str = "") -> PresentedModule:
    """R / (p_1, ..., p_s)."""
    return quotient(regular_module(R), [R.vector(f) for f in polys], name=name or "R/J")


def ideal_module(R: ArtinAlgebra, polys: Sequence[Polynomial], name: str = "") -> PresentedModule:
    """The ideal (p_1, ..., p_s) as a submodule of R."""
    return submodule(regular_module(R), [R.vector(f) for f in polys], name=name or "J")


def cokernel_module(R: ArtinAlgebra, rows: Sequence[Sequence[Polynomial]], name: str = "") -> PresentedModule:
    """Cokernel of the map R^cols -> R^rows given by a matrix of polynomials."""
    a = len(rows)
    b = len(rows[0]) if rows else 0
    if any(len(r) != b for r in rows):
        raise ValueError("ragged matrix")
    entries = [[R.vector(rows[i][j]) for j in range(b)] for i in range(a)]
    # choose row shifts making the columns homogeneous where possible
    G = R.grading
    while True:
        shift: dict[int, tuple] = {0: G.zero()} if a else {}
        conflicts = []
        changed = True
        while changed:
            changed = False
            for j in range(b):
                target = None
                for i in range(a):
                    if i in shift and entries[i][j]:
                        target = G.add(shift[i], R.basis[min(entries[i][j])])
                        break
                if target is None:
                    continue
                for i in range(a):
                    for t in entries[i][j]:
                        want = G.sub(target, R.basis[t])
                        if i not in shift:
                            shift[i] = want
                            changed = True
                        elif shift[i] != want:
                            conflicts.append(tuple(x - y for x, y in zip(shift[i], want)))
            if len(shift) < a and not changed:
                nxt = next(i for i in range(a) if i not in shift)
                shift[nxt] = G.zero()
                changed = True
        if not conflicts:
            break
        G = G.extend(conflicts)
    F = free_module(R, a, [shift[i] for i in range(a)], grading=G)
    n = R.dim
    cols = []
    for j in range(b):
        col = {}
        for i in range(a):
            for t, c in entries[i][j].items():
                col[i * n + t] = c
        cols.append(col)
    return quotient(F, cols, name=name or "coker")


def direct_sum(M: PresentedModule, copies: int, shifts: Sequence[Degree] | None = None) -> PresentedModule:
    G = M.grading
    if shifts is None:
        shifts = [G.zero()] * copies
    act = []
    for v in range(M.ring.nvars):
        cols = []
        for g in range(copies):
            base = g * M.dim
            for col in M.act[v]:
                cols.append({base + t: a for t, a in col.items()})
        act.append(cols)
    degs = [G.add(shifts[g], d) for g in range(copies) for d in M.degs]
    return PresentedModule(M.ring, copies * M.dim, act, degs, G)


# ---------------------------------------------------------------------------
# resolutions


@dataclass
class StepStats:
    blocks: int = 0
    largest_block: tuple[int, int] = (0, 0)
    work_estimate: int = 0


class Resolution:
    """Incrementally extended minimal free resolution of a module.

    ``differentials[i]`` (i >= 1) lists, for each generator of F_i, its image
    in F_{i-1} as a sparse vector in the index ``g * dim R + j``;
    ``augmentation`` lists the images of F_0's generators in M.
    """

    def __init__(self, module: PresentedModule, budget: int = DEFAULT_BUDGET):
        self.module = module
        self.ring = module.ring
        self.grading = module.grading
        self.budget = budget
        gens = module.generators()
        if not gens:
            raise ZeroModule("cannot resolve the zero module")
        self.augmentation = [{c: 1} for c in gens]
        self.gen_degs: list[list[Degree]] = [[module.degs[c] for c in gens]]
        self.differentials: list[list[dict]] = [[]]
        self.stats: list[StepStats] = [StepStats()]

    @property
    def length(self) -> int:
        return len(self.gen_degs) - 1

    @property
    def betti(self) -> list[int]:
        out = [len(d) for d in self.gen_degs]
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out

    @property
    def terminated(self) -> bool:
        return len(self.gen_degs[-1]) == 0

    def betti_at(self, i: int) -> int:
        if i < len(self.gen_degs):
            return len(self.gen_degs[i])
        if self.terminated:
            return 0
        raise IndexError(f"resolution computed only to step {self.length}")

    def betti_sequence(self, steps: int) -> list[int]:
        self.extend(steps)
        return [self.betti_at(i) for i in range(steps + 1)]

    def free_degree(self, i: int, g: int, j: int) -> Degree:
        return self.grading.add(self.gen_degs[i][g], self.ring.basis[j])

    def extend(self, to_step: int) -> "Resolution":
        while self.length < to_step:
            if self.terminated:
                self.gen_degs.append([])
                self.differentials.append([])
                self.stats.append(StepStats())
                continue
            self._step()
        return self

    def _step(self) -> None:
        i = self.length  # kernel of F_i -> F_{i-1} (or -> M when i = 0)
        R = self.ring
        n = R.dim
        G = self.grading
        if i == 0:
            images = self.augmentation
            act_all = self.module.act_all
        else:
            images = self.differentials[i]

            def act_all(y, R=R, n=n):
                return [free_mul_basis(R, j, y) for j in range(n)]

        degs_i = self.gen_degs[i]
        cols_by_deg: dict = {}
        for g, y in enumerate(images):
            imgs = act_all(y)
            base = g * n
            dg = degs_i[g]
            for j in range(n):
                d = G.add(dg, R.basis[j])
                cols_by_deg.setdefault(d, ([], []))
                cols_by_deg[d][0].append(base + j)
                cols_by_deg[d][1].append(imgs[j])
        stats = StepStats(blocks=len(cols_by_deg))
        work = 0
        for d, (idx, cols) in cols_by_deg.items():
            nrows = len({r for c in cols for r in c})
            nnz = sum(len(c) for c in cols)
            work += nnz * min(nrows, len(cols)) + len(cols)
            if len(cols) * nrows > stats.largest_block[0] * stats.largest_block[1]:
                stats.largest_block = (nrows, len(cols))
        stats.work_estimate = work
        if work > self.budget:
            raise SizeCap(f"step {i + 1} needs ~{work:.3g} entry operations, "
                          f"over the budget {self.budget:.3g}")
        kernel: dict = {}
        for d, (idx, cols) in cols_by_deg.items():
            ker = kernel_of_columns(cols, R.field)
            if ker:
                kernel[d] = [{idx[c]: a for c, a in vec.items()} for vec in ker]
        # m K, per degree
        mK: dict = {}
        for d, vecs in kernel.items():
            for v in range(R.nvars):
                dv = G.add(d, tuple(int(t == v) for t in range(R.nvars)))
                if dv not in kernel:
                    continue
                ech = mK.setdefault(dv, Echelon(R.field))
                for vec in vecs:
                    ech.add(free_mul_var(R, v, vec))
        new_gens: list[dict] = []
        new_degs: list[Degree] = []
        for d in sorted(kernel):
            vecs = kernel[d]
            ech = mK.get(d)
            if ech is None:
                new_gens.extend(vecs)
                new_degs.extend([d] * len(vecs))
                continue
            need = len(vecs) - len(ech)
            for vec in vecs:
                if need == 0:
                    break
                if ech.add(vec):
                    new_gens.append(vec)
                    new_degs.append(d)
                    need -= 1
        self.differentials.append(new_gens)
        self.gen_degs.append(new_degs)
        self.stats.append(stats)

    # -- views ----------------------------------------------------------------

    def matrix(self, i: int) -> list[list[dict]]:
        """d_i as a b_{i-1} x b_i matrix of ring elements (coordinate dicts)."""
        self.extend(i)
        n = self.ring.dim
        rows = [[{} for _ in range(len(self.gen_degs[i]))] for _ in range(len(self.gen_degs[i - 1]))]
        for g, y in enumerate(self.differentials[i]):
            for idx, c in y.items():
                gp, t = divmod(idx, n)
                rows[gp][g][t] = c
        return rows


def resolve(M: PresentedModule, steps: int, budget: int = DEFAULT_BUDGET) -> Resolution:
    return M.resolution(steps, budget=budget)


def extend_resolution(res: Resolution, to_step: int) -> Resolution:
    return res.extend(to_step)


def syzygy_module(M: PresentedModule, j: int, budget: int = DEFAULT_BUDGET) -> PresentedModule:
    """The j-th syzygy of M (j = 0 gives M itself) as a submodule of F_{j-1}."""
    if j == 0:
        return M
    res = M.resolution(j, budget=budget)
    gens = res.differentials[j]
    if not gens:
        raise ZeroModule(f"syzygy {j} is zero")
    F = free_module(M.ring, len(res.gen_degs[j - 1]), res.gen_degs[j - 1], grading=res.grading)
    return submodule(F, gens, name=f"Omega^{j}({M.name or 'M'})")


# ---------------------------------------------------------------------------
# Tor and Ext


def _common(M: PresentedModule, N: PresentedModule):
    if M.ring is not N.ring:
        raise ValueError("modules live over different rings")
    return M.grading.join(N.grading)


def _action_table(N: PresentedModule) -> list[list[dict]]:
    """table[y][j] = basis[j] * e_y in N."""
    return [N.act_all({y: 1}) for y in range(N.dim)]


def _block_rank(cols: list[dict], degs: list[Degree], field) -> int:
    total = 0
    for d, group in _group(range(len(cols)), lambda c: degs[c]).items():
        block = [cols[c] for c in group if cols[c]]
        if not block:
            continue
        rowmap = transpose_vectors(block)
        total += rank_rows(list(rowmap.values()), len(block), field)
    return total


def _tensor_rank(res: Resolution, i: int, N: PresentedModule, G: Grading, table) -> int:
    """rank of d_i (x) N : N^{b_i} -> N^{b_{i-1}}."""
    if i <= 0 or i >= len(res.gen_degs) or not res.differentials[i]:
        return 0
    l = N.dim
    n = res.ring.dim
    p = res.ring.field.p
    cols, degs = [], []
    for g, dvec in enumerate(res.differentials[i]):
        dg = G.canonical(res.gen_degs[i][g])
        terms = [(divmod(idx, n), c) for idx, c in dvec.items()]
        for y in range(l):
            col: dict = {}
            ty = table[y]
            for (gp, t), c in terms:
                base = gp * l
                for s, a in ty[t].items():
                    k = base + s
                    val = (col.get(k, 0) + c * a) % p if p else col.get(k, 0) + c * a
                    if val:
                        col[k] = val
                    else:
                        col.pop(k, None)
            cols.append(col)
            degs.append(G.add(dg, N.degs[y]))
    return _block_rank(cols, degs, res.ring.field)


def tor_dims(M: PresentedModule, N: PresentedModule, max_i: int,
             budget: int = DEFAULT_BUDGET) -> list[int]:
    """dim_k Tor_i^R(M, N) for i = 0..max_i, from the minimal resolution of M."""
    G = _common(M, N)
    N = N.coarsen(G)
    res = M.resolution(max_i + 1, budget=budget)
    table = _action_table(N)
    ranks = [_tensor_rank(res, i, N, G, table) for i in range(max_i + 2)]
    return [res.betti_at(i) * N.dim - ranks[i] - ranks[i + 1] for i in range(max_i + 1)]


def _hom_rank(res: Resolution, i: int, N: PresentedModule, G: Grading, table) -> int:
    """rank of d_i^* : Hom(F_{i-1}, N) -> Hom(F_i, N)."""
    if i <= 0 or i >= len(res.gen_degs) or not res.differentials[i]:
        return 0
    l = N.dim
    n = res.ring.dim
    p = res.ring.field.p
    trans: dict[int, list] = {}
    for gpp, dvec in enumerate(res.differentials[i]):
        for idx, c in dvec.items():
            g, t = divmod(idx, n)
            trans.setdefault(g, []).append((gpp, t, c))
    cols, degs = [], []
    for g in range(len(res.gen_degs[i - 1])):
        dg = G.canonical(res.gen_degs[i - 1][g])
        terms = trans.get(g, [])
        for y in range(l):
            col: dict = {}
            ty = table[y]
            for gpp, t, c in terms:
                base = gpp * l
                for s, a in ty[t].items():
                    k = base + s
                    val = (col.get(k, 0) + c * a) % p if p else col.get(k, 0) + c * a
                    if val:
                        col[k] = val
                    else:
                        col.pop(k, None)
            cols.append(col)
            degs.append(G.sub(N.degs[y], dg))
    return _block_rank(cols, degs, res.ring.field)


def ext_dims(M: PresentedModule, N: PresentedModule, max_i: int,
             budget: int = DEFAULT_BUDGET) -> list[int]:
    """dim_k Ext^i_R(M, N) for i = 0..max_i via Hom_R(F, N)."""
    G = _common(M, N)
    N = N.coarsen(G)
    res = M.resolution(max_i + 1, budget=budget)
    table = _action_table(N)
    ranks = [_hom_rank(res, i, N, G, table) for i in range(max_i + 2)]
    return [res.betti_at(i) * N.dim - ranks[i + 1] - ranks[i] for i in range(max_i + 1)]


def tensor_length(M: PresentedModule, N: PresentedModule) -> int:
    return tor_dims(M, N, 0)[0]


# ---------------------------------------------------------------------------
# Hom and duality


def hom_module(M: PresentedModule, N: PresentedModule) -> PresentedModule:
    """Hom_R(M, N) as the kernel of Hom(F_0, N) -> Hom(F_1, N) inside N^{b_0}."""
    G = _common(M, N)
    N = N.coarsen(G)
    res = M.resolution(1)
    b0 = res.betti_at(0)
    n = M.ring.dim
    shifts = [G.neg(G.canonical(d)) for d in res.gen_degs[0]]
    S = direct_sum(N, b0, shifts)
    table = _action_table(N)
    cols, degs = [], []
    l = N.dim
    p = M.field.p
    trans: dict[int, list] = {}
    for gpp, dvec in enumerate(res.differentials[1]):
        for idx, c in dvec.items():
            g, t = divmod(idx, n)
            trans.setdefault(g, []).append((gpp, t, c))
    for g in range(b0):
        for y in range(l):
            col: dict = {}
            for gpp, t, c in trans.get(g, []):
                for s, a in table[y][t].items():
                    k = gpp * l + s
                    val = (col.get(k, 0) + c * a) % p if p else col.get(k, 0) + c * a
                    if val:
                        col[k] = val
                    else:
                        col.pop(k, None)
            cols.append(col)
            degs.append(S.degs[g * l + y])
    kernel = []
    for d, group in _group(range(len(cols)), lambda c: degs[c]).items():
        for vec in kernel_of_columns([cols[c] for c in group], M.field):
            kernel.append({group[c]: a for c, a in vec.items()})
    if not kernel:
        raise ZeroModule("Hom(M, N) = 0")
    H = submodule(S, kernel, name=f"Hom({M.name or 'M'},{N.name or 'N'})")
    H.hom_source = (M, res)
    return H


def hom_to_ring_dual(M: PresentedModule) -> PresentedModule:
    """M* = Hom_R(M, R)."""
    return hom_module(M, regular_module(M.ring))


def is_linear_resolution(res: Resolution, steps: int | None = None) -> bool:
    """Injectivity of F_i/mF_i -> mF_{i-1}/m^2F_{i-1} for every computed i >= 1."""
    return linear_to_step(res, steps) == (res.length if steps is None else steps)


def linear_to_step(res: Resolution, steps: int | None = None) -> int:
    """Largest t such that the linearity condition holds for 1 <= i <= t."""
    R = res.ring
    if steps is not None:
        res.extend(steps)
    top = res.length if steps is None else steps
    n = R.dim
    m2 = Echelon(R.field)
    for w in R.maximal_ideal_power(2):
        m2.add(w)
    m2.finalize()
    for i in range(1, top + 1):
        ech = Echelon(R.field)
        for y in res.differentials[i]:
            img: dict = {}
            for gp in sorted({idx // n for idx in y}):
                comp = {idx - gp * n: c for idx, c in y.items() if idx // n == gp}
                comp = m2.reduce(comp)
                for t, c in comp.items():
                    img[gp * n + t] = c
            if not ech.add(img):
                return i - 1
    return top


# ---------------------------------------------------------------------------
# G-dimension zero certificate


@dataclass
class GdimReport:
    reflexive: bool
    ext_M_vanish_to: int
    ext_Mstar_vanish_to: int
    depth: int

    @property
    def passes(self) -> bool:
        return self.reflexive and self.ext_M_vanish_to == self.depth and self.ext_Mstar_vanish_to == self.depth


def _vanish_to(dims: Sequence[int], depth: int) -> int:
    t = 0
    for i in range(1, depth + 1):
        if dims[i] != 0:
            break
        t = i
    return t


def natural_map_injective(M: PresentedModule, Mstar: PresentedModule) -> bool:
    """Is m -> (f -> f(m)) injective on M?  Mstar must come from hom_module(M, R)."""
    src, res = Mstar.hom_source
    R = M.ring
    n = R.dim
    b0 = res.betti_at(0)
    # lift each basis vector of M to F_0 = R^{b0}
    aug_cols, aug_idx = [], []
    for g, y in enumerate(res.augmentation):
        for j, w in enumerate(M.act_all(y)):
            aug_cols.append(w)
            aug_idx.append(g * n + j)
    lifts = []
    for c in range(M.dim):
        sol = _solve(aug_cols, {c: 1}, M.field)
        lifts.append({aug_idx[k]: a for k, a in sol.items()})
    # f in M* is a vector in R^{b0} (blocks of size n): f(e_g) = f[g]
    ev_rows = []
    for f in Mstar.embedding:
        fg = [{idx - g * n: c for idx, c in f.items() if idx // n == g} for g in range(b0)]
        row = {}
        for c, lift in enumerate(lifts):
            val: dict = {}
            for idx, a in lift.items():
                g, j = divmod(idx, n)
                axpy(val, R.multiply({j: a}, fg[g]), 1, M.field.p)
            for t, z in val.items():
                row[c * n + t] = z
        ev_rows.append(row)
    # the map M -> Hom_k(M*, R) is injective iff the columns (one per basis
    # vector of M, stacked over all f) are independent
    per_c: list[dict] = [{} for _ in range(M.dim)]
    for fi, row in enumerate(ev_rows):
        for key, z in row.items():
            c, t = divmod(key, n)
            per_c[c][fi * n + t] = z
    ech = Echelon(M.field)
    return all(ech.add(v) for v in per_c)


def _solve(cols: Sequence[dict], target: dict, field) -> dict:
    """Some x with sum x_k cols[k] = target (cols must span target)."""
    ech = Echelon(field, track=True)
    for k, c in enumerate(cols):
        ech.add(c, tag=k)
    combo: dict = {}
    r = ech.reduce(target, combo)
    if r:
        raise ValueError("target not in span")
    # target - sum(combo contributions) reduced to 0: target = -combo
    return {k: field.neg(a) for k, a in combo.items()}


def gdim_zero_certificate(M: PresentedModule, depth: int = 4,
                          budget: int = DEFAULT_BUDGET) -> GdimReport:
    if depth < 1:
        raise ValueError("depth must be >= 1")
    R = M.ring
    Rmod = regular_module(R)
    Mstar = hom_module(M, Rmod)
    Mss = hom_module(Mstar, Rmod)
    reflexive = Mss.dim == M.dim and natural_map_injective(M, Mstar)
    e1 = ext_dims(M, Rmod, depth, budget=budget)
    e2 = ext_dims(Mstar, Rmod, depth, budget=budget)
    return GdimReport(reflexive, _vanish_to(e1, depth), _vanish_to(e2, depth), depth)


# ---------------------------------------------------------------------------
# verification of computed resolutions


def compose_is_zero(res: Resolution, i: int, generators: Sequence[int] | None = None) -> bool:
    """d_{i-1}(d_i(e_g)) = 0 (with d_0 the augmentation) for the chosen generators."""
    R = res.ring
    n = R.dim
    p = R.field.p
    gens = range(len(res.differentials[i])) if generators is None else generators
    for g in gens:
        y = res.differentials[i][g]
        out: dict = {}
        for idx, c in y.items():
            gp, t = divmod(idx, n)
            if i == 1:
                img = res.module.act_element({t: 1}, res.augmentation[gp])
            else:
                img = free_mul_basis(R, t, res.differentials[i - 1][gp])
            axpy(out, img, c, p)
        if out:
            return False
    return True


def is_minimal(res: Resolution) -> bool:
    """Every differential entry lies in m: no component on basis[0] = 1."""
    n = res.ring.dim
    return all(idx % n != 0 for step in res.differentials[1:] for y in step for idx in y)


def _differential_rank(res: Resolution, i: int) -> int:
    """k-rank of d_i (the augmentation when i = 0)."""
    R = res.ring
    G = res.grading
    cols, degs = [], []
    if i == 0:
        for g, y in enumerate(res.augmentation):
            for j, w in enumerate(res.module.act_all(y)):
                cols.append(w)
                degs.append(G.add(res.gen_degs[0][g], R.basis[j]))
    else:
        for g, y in enumerate(res.differentials[i]):
            for j in range(R.dim):
                cols.append(free_mul_basis(R, j, y))
                degs.append(G.add(res.gen_degs[i][g], R.basis[j]))
    return _block_rank(cols, degs, R.field)


def homology_dims(res: Resolution) -> list[int]:
    """dim H at M (cokernel of the augmentation), then at F_0 .. F_{t-1}."""
    n = res.ring.dim
    t = res.length
    ranks = [_differential_rank(res, i) for i in range(t + 1)]
    out = [res.module.dim - ranks[0]]
    for i in range(t):
        out.append(n * res.betti_at(i) - ranks[i] - ranks[i + 1])
    return out


def verify_resolution(res: Resolution) -> dict:
    d2 = all(compose_is_zero(res, i) for i in range(1, res.length + 1))
    return {"d_squared_zero": d2, "minimal": is_minimal(res),
            "exact": not any(homology_dims(res))}
