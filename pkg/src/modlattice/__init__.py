"""Prime, classical prime and maximal submodules, and classical Hilbert modules,
over finite commutative rings and over Z, GF(p)[x] and Z_(p)."""

__version__ = "0.1.0"

from .errors import (
    BoundExceeded,
    InvalidSpec,
    ModLatticeError,
    NotProper,
    ParseError,
    RequiresFactorization,
    RingMismatch,
    UnknownLaw,
    UnsupportedRing,
)
from .rings import FiniteRing, parse_ring
from .finmod import FiniteModule, submodule_generated
from .domains import Integers, LocalIntegers, PolyOverGF, parse_domain
from .euclid import PresentedModule

__all__ = [
    "BoundExceeded",
    "FiniteModule",
    "FiniteRing",
    "Integers",
    "InvalidSpec",
    "LocalIntegers",
    "ModLatticeError",
    "NotProper",
    "ParseError",
    "PolyOverGF",
    "PresentedModule",
    "RequiresFactorization",
    "RingMismatch",
    "UnknownLaw",
    "UnsupportedRing",
    "parse_domain",
    "parse_ring",
    "submodule_generated",
]
