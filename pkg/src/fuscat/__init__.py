"""Fusion rings, tensor functors and exact sequences at the level of Grothendieck rings."""
from .errors import (ConsistencyError, ConvergenceError, FuscatError, IntegrityError, NumericalError,
                     PreconditionError, SizeError, StructureError)
from .fusion_ring import FPData, FusionRing, fpdim, validate
from .functors import FunctorMatrix, verify_exact_sequence
from .groups import FiniteGroup, GroupExtension, GroupHom
from .tolerances import Tolerances

__version__ = "0.1.0"

__all__ = [
    "ConsistencyError", "ConvergenceError", "FPData", "FiniteGroup", "FunctorMatrix", "FuscatError",
    "FusionRing", "GroupExtension", "GroupHom", "IntegrityError", "NumericalError", "PreconditionError",
    "SizeError", "StructureError", "Tolerances", "fpdim", "validate", "verify_exact_sequence",
]
