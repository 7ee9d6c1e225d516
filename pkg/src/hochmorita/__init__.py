"""Exact computations with Morita contexts of finite-dimensional algebras:
Pierce decompositions, defects and grades, Ext and Tor over free
resolutions, Hochschild cohomology with the corner comparison map, and
skew group algebras with their invariant rings.
"""
from .algebra import Algebra, validate_algebra
from .errors import AlgebraError, DimensionError, ResourceLimitError
from .linalg import GF, QQ, Field
from .modules import Bimodule, RightModule
from .morita import MoritaContext, auslander_context, classify_context

__version__ = "0.1.0"

__all__ = [
    "Algebra", "validate_algebra", "AlgebraError", "DimensionError", "ResourceLimitError",
    "GF", "QQ", "Field", "Bimodule", "RightModule", "MoritaContext", "auslander_context",
    "classify_context",
]
