"""Command-line interface: ``cangrow <subcommand> [options]``.

Exit codes: 0 success, 1 input error, 2 budget exhausted, 3 scan finding.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
import warnings
from pathlib import Path
from typing import Sequence

from . import __version__
from .artinalg import local_tensor
from .cache import ResolutionCache, cache_key
from .criteria import (ScanConfig, b1_vs_b0_scan, betti_bound_check, gorenstein_criterion,
                       lescot_classify, monomial_growth_hypothesis, tachikawa_check)
from .errors import CacheCorrupt, CangrowError, SizeCap
from .exactla import FieldSpec
from .growth import analyze, deviation_from_betti, series_product
from .modres import (DEFAULT_BUDGET, canonical_module, ext_dims, residue_field,
                     tor_dims, verify_resolution)
from .specs import build_module, parse_module_spec, parse_ring_spec

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_FINDING = 0, 1, 2, 3


# ---------------------------------------------------------------------------
# context


class Context:
    """Parsed inputs shared by the subcommands."""

    def __init__(self, args, texts: dict[str, str]):
        self.args = args
        self.texts = texts
        self.budget = args.budget
        self.cache = ResolutionCache(args.cache) if getattr(args, "cache", None) else None
        self.warnings: list[str] = []
        self._rings: dict[str, tuple] = {}

    def ring(self, which: str = "ring"):
        if which not in self._rings:
            text = self.texts.get(which)
            if text is None:
                raise CangrowError(f"--{which.replace('_', '-')} is required")
            spec = parse_ring_spec(text, self.args.field)
            self._rings[which] = (spec.build(), spec.text())
        return self._rings[which]

    def module(self, spec_text: str, which: str = "ring"):
        R, rtext = self.ring(which)
        spec = parse_module_spec(spec_text, R)
        return build_module(spec, R), spec.text

    def resolution(self, M, mtext: str, steps: int, which: str = "ring"):
        """Minimal resolution to ``steps``, going through the cache when enabled."""
        _, rtext = self.ring(which)
        if self.cache is not None:
            key = cache_key(rtext, mtext)
            try:
                res = self.cache.load(key, M, rtext, mtext)
            except CacheCorrupt as exc:
                self.warnings.append(f"cache: {exc}; recomputing")
                res = None
            if res is not None:
                res.budget = self.budget
                M._resolution = res
                before = res.length
                res.extend(steps)
                if res.length > before:
                    self.cache.store(key, res, rtext, mtext)
                return res
            res = M.resolution(steps, budget=self.budget)
            self.cache.store(key, res, rtext, mtext)
            return res
        return M.resolution(steps, budget=self.budget)


def _ring_json(R, text: str) -> dict:
    p = R.profile()
    return {"spec": text, "field": R.field.name, "vars": list(R.variables), "dim": R.dim,
            "hilbert": list(p.hilbert), "embedding_dim": p.embedding_dim,
            "socle_dim": p.socle_dim, "gorenstein": R.is_gorenstein()}


def _module_json(M, text: str) -> dict:
    return {"spec": text, "length": M.dim, "mu": M.mu}


def _base(ctx: Context, command: str) -> dict:
    return {"tool_version": __version__, "command": command, "ring": None, "module": None,
            "betti": None, "growth": None, "criteria": [], "findings": []}


# ---------------------------------------------------------------------------
# subcommands


def cmd_resolve(ctx: Context) -> tuple[dict, int]:
    a = ctx.args
    R, rtext = ctx.ring()
    M, mtext = ctx.module(a.module)
    res = ctx.resolution(M, mtext, a.steps)
    out = _base(ctx, "resolve")
    out["ring"] = _ring_json(R, rtext)
    out["module"] = _module_json(M, mtext)
    seq = res.betti_sequence(a.steps)
    out["betti"] = res.betti if res.terminated else seq
    out["terminated"] = res.terminated
    out["growth"] = analyze(seq).to_json()
    if a.verify:
        out["verification"] = verify_resolution(res)
    if a.differentials:
        out["differentials"] = [
            [[R.polynomial(e).format(R.variables) for e in row] for row in res.matrix(i)]
            for i in range(1, min(res.length, a.steps) + 1)]
    return out, EXIT_OK


def cmd_canonical(ctx: Context) -> tuple[dict, int]:
    a = ctx.args
    R, rtext = ctx.ring()
    w = canonical_module(R)
    res = ctx.resolution(w, "canonical", a.steps)
    out = _base(ctx, "canonical")
    out["ring"] = _ring_json(R, rtext)
    out["module"] = _module_json(w, "canonical")
    out["betti"] = res.betti if res.terminated else res.betti_sequence(a.steps)
    out["canonical"] = {"b0": res.betti_at(0), "length": w.dim, "free": res.betti_at(1) == 0,
                        "relations": res.betti_at(1) if a.steps >= 1 else None}
    return out, EXIT_OK


def _two_modules(ctx: Context):
    a = ctx.args
    M, mtext = ctx.module(a.module)
    N, ntext = ctx.module(a.module2)
    ctx.resolution(M, mtext, a.steps + 1)
    return M, mtext, N, ntext


def cmd_tor(ctx: Context) -> tuple[dict, int]:
    R, rtext = ctx.ring()
    M, mtext, N, ntext = _two_modules(ctx)
    out = _base(ctx, "tor")
    out["ring"] = _ring_json(R, rtext)
    out["module"] = _module_json(M, mtext)
    out["module2"] = _module_json(N, ntext)
    out["tor"] = tor_dims(M, N, ctx.args.steps, budget=ctx.budget)
    return out, EXIT_OK


def cmd_ext(ctx: Context) -> tuple[dict, int]:
    R, rtext = ctx.ring()
    M, mtext, N, ntext = _two_modules(ctx)
    out = _base(ctx, "ext")
    out["ring"] = _ring_json(R, rtext)
    out["module"] = _module_json(M, mtext)
    out["module2"] = _module_json(N, ntext)
    out["ext"] = ext_dims(M, N, ctx.args.steps, budget=ctx.budget)
    return out, EXIT_OK


def cmd_growth(ctx: Context) -> tuple[dict, int]:
    a = ctx.args
    R, rtext = ctx.ring()
    M, mtext = ctx.module(a.module)
    res = ctx.resolution(M, mtext, a.steps)
    seq = res.betti_sequence(a.steps)
    out = _base(ctx, "growth")
    out["ring"] = _ring_json(R, rtext)
    out["module"] = _module_json(M, mtext)
    out["betti"] = seq
    out["growth"] = analyze(seq).to_json()
    return out, EXIT_OK


def cmd_gdev(ctx: Context) -> tuple[dict, int]:
    a = ctx.args
    R, rtext = ctx.ring()
    if a.steps < 4:
        raise CangrowError("gdev needs --steps >= 4")
    bw = ctx.resolution(canonical_module(R), "canonical", a.steps).betti_sequence(a.steps)
    bk = None
    if bw[1]:
        bk = ctx.resolution(residue_field(R), "k", a.steps).betti_sequence(a.steps)
    rep = deviation_from_betti(bw, bk)
    out = _base(ctx, "gdev")
    out["ring"] = _ring_json(R, rtext)
    out["betti"] = rep.omega.betti if rep.omega else None
    out["growth"] = rep.omega.to_json() if rep.omega else None
    out["gdev"] = rep.to_json()
    return out, EXIT_OK


def cmd_gorenstein(ctx: Context) -> tuple[dict, int]:
    R, rtext = ctx.ring()
    w = canonical_module(R)
    res = ctx.resolution(w, "canonical", 1)
    soc = len(R.socle())
    free = res.betti_at(1) == 0 and res.betti_at(0) == 1
    out = _base(ctx, "gorenstein")
    out["ring"] = _ring_json(R, rtext)
    out["betti"] = res.betti
    out["gorenstein"] = {"socle_dim": soc, "socle_test": soc == 1, "omega_free": free,
                         "consistent": (soc == 1) == free}
    return out, EXIT_OK


def cmd_criteria(ctx: Context) -> tuple[dict, int]:
    a = ctx.args
    R, rtext = ctx.ring()
    M, mtext = ctx.module(a.module)
    out = _base(ctx, "criteria")
    out["ring"] = _ring_json(R, rtext)
    out["module"] = _module_json(M, mtext)
    crit = out["criteria"]
    depth = min(a.steps, 8)
    for variant in ("manygens", "genGor", "classD"):
        crit.append(gorenstein_criterion(R, M, variant, depth=depth, budget=ctx.budget).to_json())
    crit.append(tachikawa_check(R, budget=ctx.budget).to_json())
    if a.module2:
        N, _ = ctx.module(a.module2)
        for n in range(1, a.steps + 1):
            for kind in ("tor", "ext"):
                chk = betti_bound_check(M, N, n, kind=kind, require=False, budget=ctx.budget)
                crit.append(chk.to_json())
    if R.profile().nil_index <= 3 and ctx.resolution(M, mtext, 1).betti_at(1) > 0:
        crit.append(lescot_classify(R, M, steps=depth, budget=ctx.budget).to_json())
    if all(len(g.terms) == 1 for g in R.generators):
        wit = monomial_growth_hypothesis([next(iter(g.terms)) for g in R.generators], R.nvars)
        crit.append({"kind": "monomial_witness",
                     "witness": None if wit is None else [R.variables[t] for t in wit]})
    for c in crit:
        if c.get("conclusion") == "Gorenstein-certified-inconsistency":
            out["findings"].append({"kind": "criterion-inconsistency", "detail": c})
    return out, EXIT_OK


def cmd_tensor(ctx: Context) -> tuple[dict, int]:
    a = ctx.args
    R1, t1 = ctx.ring("ring")
    R2, t2 = ctx.ring("ring2")
    R = local_tensor(R1, R2)
    out = _base(ctx, "tensor")
    out["ring"] = _ring_json(R, R.spec_text())
    checks = {}
    for name, make in (("canonical", canonical_module), ("k", residue_field)):
        b = make(R).resolution(a.steps, budget=ctx.budget).betti_sequence(a.steps)
        b1 = make(R1).resolution(a.steps, budget=ctx.budget).betti_sequence(a.steps)
        b2 = make(R2).resolution(a.steps, budget=ctx.budget).betti_sequence(a.steps)
        prod = list(series_product(b1, b2).coeffs)
        checks[name] = {"betti": b, "factor1": b1, "factor2": b2, "product": prod, "match": prod == b}
    out["betti"] = checks["canonical"]["betti"]
    out["tensor"] = {"factors": [t1, t2], "spec": R.spec_text(), "series": checks}
    return out, EXIT_OK


def cmd_scan(ctx: Context) -> tuple[dict, int]:
    a = ctx.args
    F = FieldSpec.prime() if not a.field else parse_ring_spec(
        f"ring {{ field: {a.field}; vars: x; ideal: x }}").field
    cfg = ScanConfig(max_vars=a.max_vars, max_socle_degree=a.max_socle_degree, samples=a.samples,
                     seed=a.seed, probability=a.probability, field=F,
                     growth_steps=a.growth_steps, budget=ctx.budget)
    rep = b1_vs_b0_scan(cfg)
    out = _base(ctx, "scan")
    out["scan"] = {"config": rep.config, "summary": rep.summary()}
    if a.verbose_records:
        out["scan"]["records"] = [r.to_json() for r in rep.records]
    out["findings"] = [dict(r.to_json(), kind="b1<=b0 on non-Gorenstein ring") for r in rep.findings]
    return out, (EXIT_FINDING if rep.findings else EXIT_OK)


COMMANDS = {
    "resolve": cmd_resolve, "canonical": cmd_canonical, "tor": cmd_tor, "ext": cmd_ext,
    "growth": cmd_growth, "gdev": cmd_gdev, "gorenstein": cmd_gorenstein,
    "criteria": cmd_criteria, "tensor": cmd_tensor, "scan": cmd_scan,
}


# ---------------------------------------------------------------------------
# output


def _table(out: dict) -> str:
    lines = [f"cangrow {out['tool_version']}  {out['command']}"]
    if out.get("ring"):
        r = out["ring"]
        lines.append(f"ring      {r['spec']}")
        lines.append(f"          dim {r['dim']}, hilbert {tuple(r['hilbert'])}, "
                     f"socle {r['socle_dim']}, gorenstein {r['gorenstein']}")
    if out.get("module"):
        m = out["module"]
        lines.append(f"module    {m['spec']}  (length {m['length']}, mu {m['mu']})")
    if out.get("betti") is not None:
        lines.append("betti     " + " ".join(str(b) for b in out["betti"]))
    for key in ("tor", "ext"):
        if key in out:
            lines.append(f"{key:<10}" + " ".join(str(b) for b in out[key]))
    g = out.get("growth")
    if g:
        lines.append(f"growth    {g['classification']}, curvature in "
                     f"[{g['curvature_low']:.9f}, {g['curvature_high']:.9f}]")
        lines.append(f"          recurrence {g['recurrence']} from n={g['recurrence_start']}, "
                     f"strictly increasing from {g['strictly_increasing_from']}")
    if "gdev" in out:
        d = out["gdev"]
        lines.append(f"g(R)      [{d['g_low']:.9f}, {d['g_high']:.9f}]")
    for key in ("canonical", "gorenstein"):
        if key in out:
            lines.append(f"{key:<11}" + ", ".join(f"{k} {v}" for k, v in out[key].items()))
    if "tensor" in out:
        t = out["tensor"]
        lines.append(f"tensor    {t['spec']}")
        for name, c in t["series"].items():
            lines.append(f"  {name:<9} {c['betti']}  product match {c['match']}")
    for c in out.get("criteria", []):
        kind = c.get("kind")
        if kind == "gorenstein_criterion":
            lines.append(f"criterion {c['variant']:<10} applies {c['applies']}  {c['conclusion'] or ''}".rstrip())
        elif kind == "betti_bound":
            lines.append(f"bound     {c['hypothesis_kind']} n={c['window'][0]} hyp {c['hypothesis_holds']} "
                         f"ratio {c['ratio']} satisfied {c['satisfied']} equality {c['equality']} "
                         f"{c['equality_conditions']}")
        elif kind == "lescot":
            lines.append(f"lescot    {c['case']} (e {c['e']}, s {c['s']})")
        elif kind == "monomial_witness":
            lines.append(f"witness   {c['witness']}")
    if "scan" in out:
        lines.append("scan      " + ", ".join(f"{k} {v}" for k, v in out["scan"]["summary"].items()))
    for f in out.get("findings", []):
        lines.append(f"FINDING   {f.get('ring', '')} {f.get('kind', '')}")
    for w in out.get("warnings", []):
        lines.append(f"warning   {w}")
    return "\n".join(lines)


def render(out: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(out, indent=2, sort_keys=True)
    return _table(out)


# ---------------------------------------------------------------------------
# argument parsing and dispatch


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cangrow", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"cangrow {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, module=True):
        p.add_argument("--ring", metavar="FILE")
        p.add_argument("--field", metavar="OVERRIDE", help="Q or F<p>, replacing the ring file's field")
        p.add_argument("--steps", type=int, default=8)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("table", "json"), default="table")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="entry-operation cap per step")
        p.add_argument("--cache", metavar="DIR")
        p.add_argument("--record", metavar="FILE", help="write a replayable run record")
        if module:
            p.add_argument("--module", default="canonical", metavar="SPEC")

    p = sub.add_parser("resolve", help="minimal free resolution and Betti numbers")
    common(p)
    p.add_argument("--differentials", action="store_true")
    p.add_argument("--verify", action="store_true", help="check d^2 = 0, minimality, exactness")
    common(sub.add_parser("canonical", help="canonical module summary"), module=False)
    for name in ("tor", "ext"):
        p = sub.add_parser(name, help=f"dimensions of {name.capitalize()} groups")
        common(p)
        p.add_argument("--module2", default="k", metavar="SPEC")
    common(sub.add_parser("growth", help="growth report of a Betti sequence"))
    common(sub.add_parser("gdev", help="Gorenstein deviation g(R)"), module=False)
    common(sub.add_parser("gorenstein", help="socle test with omega-free cross-check"), module=False)
    p = sub.add_parser("criteria", help="Betti bound and Gorenstein criteria")
    common(p)
    p.add_argument("--module2", default=None, metavar="SPEC")
    p = sub.add_parser("tensor", help="local tensor of two rings and series check")
    common(p, module=False)
    p.add_argument("--ring2", metavar="FILE")
    p = sub.add_parser("scan", help="random monomial quotients: b1(omega) vs b0(omega)")
    common(p, module=False)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--max-vars", type=int, default=3)
    p.add_argument("--max-socle-degree", type=int, default=4)
    p.add_argument("--probability", type=float, default=0.3)
    p.add_argument("--growth-steps", type=int, default=0)
    p.add_argument("--verbose-records", action="store_true")
    p = sub.add_parser("replay", help="re-run a run record and compare")
    p.add_argument("record", metavar="FILE")
    p.add_argument("--format", choices=("table", "json"), default="table")
    return ap


def _read_inputs(args) -> dict[str, str]:
    texts = {}
    for which in ("ring", "ring2"):
        path = getattr(args, which, None)
        if path:
            try:
                texts[which] = Path(path).read_text()
            except OSError as exc:
                raise CangrowError(f"cannot read {path}: {exc.strerror}") from None
    return texts


def _execute(args, texts: dict[str, str]) -> tuple[dict, int]:
    ctx = Context(args, texts)
    t0 = time.perf_counter()
    out, code = COMMANDS[args.command](ctx)
    if ctx.warnings:
        out["warnings"] = ctx.warnings
    out["timing"] = {"seconds": round(time.perf_counter() - t0, 3)}
    return out, code


def _strip_timing(out: dict) -> dict:
    return {k: v for k, v in out.items() if k != "timing"}


def _inputs_hash(argv: Sequence[str], texts: dict[str, str]) -> str:
    h = hashlib.sha256()
    h.update(json.dumps([list(argv), texts], sort_keys=True).encode())
    return h.hexdigest()


def make_record(argv: Sequence[str], args, texts, out, code) -> dict:
    return {"command": args.command, "argv": list(argv), "inputs": texts,
            "inputs_hash": _inputs_hash(argv, texts), "seed": getattr(args, "seed", 0),
            "tool_version": __version__, "exit_code": code,
            "result": _strip_timing(out), "timing": out.get("timing")}


def _replay(args) -> tuple[str, int]:
    rec = json.loads(Path(args.record).read_text())
    argv = [a for a in rec["argv"]]
    # drop the --record flag so replay does not overwrite the record
    clean = []
    skip = False
    for a in argv:
        if skip:
            skip = False
            continue
        if a == "--record":
            skip = True
            continue
        if a.startswith("--record="):
            continue
        clean.append(a)
    sub_args = build_parser().parse_args(clean)
    out, code = _execute(sub_args, rec["inputs"])
    same = _strip_timing(out) == rec["result"] and code == rec["exit_code"]
    report = {"tool_version": __version__, "command": "replay", "record": args.record,
              "inputs_hash": rec["inputs_hash"], "identical": same, "exit_code": code}
    if args.format == "json":
        return json.dumps(report, indent=2, sort_keys=True), (EXIT_OK if same else EXIT_INPUT)
    return (f"replay of {rec['command']}: {'identical' if same else 'DIFFERS'}",
            EXIT_OK if same else EXIT_INPUT)


def run_command(argv: Sequence[str] | None = None, stdout=None) -> int:
    """Entry point; returns the exit code and writes the rendering to stdout."""
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    stderr = sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if args.command == "replay":
            text, code = _replay(args)
            print(text, file=stdout)
            return code
        texts = _read_inputs(args)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            out, code = _execute(args, texts)
    except SizeCap as exc:
        print(f"cangrow: budget exhausted: {exc}", file=stderr)
        return EXIT_BUDGET
    except (CangrowError, ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"cangrow: error: {exc}", file=stderr)
        return EXIT_INPUT
    for w in out.get("warnings", []):
        print(f"cangrow: warning: {w}", file=stderr)
    if getattr(args, "record", None):
        Path(args.record).write_text(json.dumps(make_record(argv, args, texts, out, code),
                                                indent=2, sort_keys=True) + "\n")
    print(render(out, args.format), file=stdout)
    return code


def main() -> None:  # pragma: no cover - thin wrapper
    sys.exit(run_command())


if __name__ == "__main__":  # pragma: no cover
    main()
