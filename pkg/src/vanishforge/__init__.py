"""Eisenstein series with prescribed vanishing critical L-values, built
from weak functions and verified numerically at high precision."""

from .context import (
    AmbiguityError,
    HypothesisError,
    PrecisionContext,
    VerificationError,
)
from .characters import DirichletCharacter, enumerate_characters, gauss_sum, dirichlet_l
from .weak import WeakFunction, alpha_basis, order, taylor_coeffs
from .eisenstein import EisensteinCombination, QExpansion
from .construct import vanishing_space_large_weight, vanishing_space_small_weight

ComplexPrecisionContext = PrecisionContext

__version__ = "0.1.0"

__all__ = [
    "AmbiguityError",
    "HypothesisError",
    "VerificationError",
    "PrecisionContext",
    "ComplexPrecisionContext",
    "DirichletCharacter",
    "enumerate_characters",
    "gauss_sum",
    "dirichlet_l",
    "WeakFunction",
    "alpha_basis",
    "order",
    "taylor_coeffs",
    "EisensteinCombination",
    "QExpansion",
    "vanishing_space_small_weight",
    "vanishing_space_large_weight",
    "__version__",
]
