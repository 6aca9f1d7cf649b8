"""Exact computations for representation stability of diagonal invariants,
harmonics and coinvariants of the symmetric group."""

from .errors import ConsistencyError, ResourceError, StabilabError
from .reports import StabilityReport

__version__ = "0.1.0"

__all__ = ["ConsistencyError", "ResourceError", "StabilabError", "StabilityReport"]
