"""Betti numbers of canonical modules over Artinian local rings."""

__version__ = "0.1.0"

from .errors import (CacheCorrupt, CangrowError, HypothesisFails, NotArtinian,  # noqa: E402
                     ParseError, SizeCap, UnitInIdeal, ZeroModule)
from .exactla import FieldSpec  # noqa: E402
from .artinalg import ArtinAlgebra, from_quotient, local_tensor  # noqa: E402
from .modres import (PresentedModule, Resolution, canonical_module, ext_dims,  # noqa: E402
                     matlis_dual, residue_field, tor_dims)
from .specs import parse_module, parse_ring  # noqa: E402

__all__ = [
    "CacheCorrupt", "CangrowError", "HypothesisFails", "NotArtinian", "ParseError", "SizeCap",
    "UnitInIdeal", "ZeroModule", "FieldSpec", "ArtinAlgebra", "from_quotient", "local_tensor",
    "PresentedModule", "Resolution", "canonical_module", "ext_dims", "matlis_dual",
    "residue_field", "tor_dims", "parse_module", "parse_ring",
]
