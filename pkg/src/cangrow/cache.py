"""On-disk cache of minimal resolutions.

Files are named by the SHA-256 of ``tool version | ring text | module text``
(the ring text already names the field) and use a line-oriented canonical
text encoding::

    cangrow-resolution 1
    ring <canonical ring spec>
    module <canonical module spec>
    length <t>
    gens <i> <b_i>
    deg <i> <g> <d_1> ... <d_n>        degree of generator g of F_i
    aug <g> <idx>:<coef> ...            image of generator g of F_0 in M
    d <i> <g> <idx>:<coef> ...          image of generator g of F_i in F_{i-1}
    end

Indices into F_{i-1} are ``generator * dim R + basis index``; coefficients
are integers (prime fields) or ``p/q`` fractions (Q).  The cache is advisory:
a file that fails to parse or fails the d^2 = 0 spot check raises
CacheCorrupt and the caller recomputes.
"""
from __future__ import annotations

import hashlib
import os
import tempfile
from fractions import Fraction
from pathlib import Path

from . import __version__
from .errors import CacheCorrupt
from .modres import PresentedModule, Resolution, StepStats, compose_is_zero

MAGIC = "cangrow-resolution 1"
SPOT_CHECK = 4


def cache_key(ring_text: str, module_text: str) -> str:
    h = hashlib.sha256(f"{__version__}|{ring_text}|{module_text}".encode())
    return h.hexdigest()


def _vec(y: dict) -> str:
    return " ".join(f"{k}:{y[k]}" for k in sorted(y))


def dumps(res: Resolution, ring_text: str, module_text: str) -> str:
    lines = [MAGIC, f"ring {ring_text}", f"module {module_text}", f"length {res.length}"]
    for i, degs in enumerate(res.gen_degs):
        lines.append(f"gens {i} {len(degs)}")
    for i, degs in enumerate(res.gen_degs):
        for g, d in enumerate(degs):
            lines.append(f"deg {i} {g} " + " ".join(map(str, d)))
    for g, y in enumerate(res.augmentation):
        lines.append(f"aug {g} {_vec(y)}".rstrip())
    for i in range(1, len(res.differentials)):
        for g, y in enumerate(res.differentials[i]):
            lines.append(f"d {i} {g} {_vec(y)}".rstrip())
    lines.append("end")
    return "\n".join(lines) + "\n"


def loads(text: str, module: PresentedModule, ring_text: str, module_text: str) -> Resolution:
    F = module.field
    try:
        lines = text.splitlines()
        if not lines or lines[0] != MAGIC or lines[-1] != "end":
            raise ValueError("bad header or truncated file")
        if lines[1] != f"ring {ring_text}" or lines[2] != f"module {module_text}":
            raise ValueError("cache entry is for different inputs")
        length = int(lines[3].split()[1])
        counts = [0] * (length + 1)
        degs = [[] for _ in range(length + 1)]
        aug = []
        diffs = [[] for _ in range(length + 1)]

        def vec(parts):
            out = {}
            for p in parts:
                k, c = p.split(":")
                out[int(k)] = F(Fraction(c)) if F.p is None else F(int(c))
            return out

        for ln in lines[4:-1]:
            parts = ln.split()
            tag = parts[0]
            if tag == "gens":
                counts[int(parts[1])] = int(parts[2])
            elif tag == "deg":
                i, g = int(parts[1]), int(parts[2])
                if g != len(degs[i]):
                    raise ValueError("degree lines out of order")
                degs[i].append(tuple(int(x) for x in parts[3:]))
            elif tag == "aug":
                aug.append(vec(parts[2:]))
            elif tag == "d":
                i = int(parts[1])
                diffs[i].append(vec(parts[3:]))
            else:
                raise ValueError(f"unknown record {tag!r}")
        if [len(d) for d in degs] != counts or len(aug) != counts[0]:
            raise ValueError("generator counts disagree")
        if any(len(diffs[i]) != counts[i] for i in range(1, length + 1)):
            raise ValueError("differential counts disagree")
    except (ValueError, IndexError, ZeroDivisionError) as exc:
        raise CacheCorrupt(f"unreadable cache entry: {exc}") from None
    res = Resolution(module)
    res.augmentation = aug
    res.gen_degs = [[res.grading.canonical(d) for d in ds] for ds in degs]
    res.differentials = [[]] + diffs[1:]
    res.stats = [StepStats() for _ in range(length + 1)]
    for i in range(1, length + 1):
        sample = list(range(min(SPOT_CHECK, counts[i])))
        if not compose_is_zero(res, i, sample):
            raise CacheCorrupt(f"d^2 != 0 at step {i} in cache entry")
    return res


class ResolutionCache:
    def __init__(self, directory: str | os.PathLike):
        self.dir = Path(directory)
        self.dir.mkdir(parents=True, exist_ok=True)

    def path(self, key: str) -> Path:
        return self.dir / f"{key}.res"

    def store(self, key: str, res: Resolution, ring_text: str, module_text: str) -> Path:
        target = self.path(key)
        fd, tmp = tempfile.mkstemp(dir=self.dir, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.write(dumps(res, ring_text, module_text))
        os.replace(tmp, target)
        return target

    def load(self, key: str, module: PresentedModule, ring_text: str, module_text: str) -> Resolution | None:
        """The cached resolution, None on a miss; CacheCorrupt when unusable."""
        p = self.path(key)
        if not p.exists():
            return None
        return loads(p.read_text(), module, ring_text, module_text)
