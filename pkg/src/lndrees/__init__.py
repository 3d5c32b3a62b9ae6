"""Rees algebras, kernels and degree modules of locally nilpotent derivations."""

from .errors import (
    DerivationError,
    FiltrationError,
    InconsistencyError,
    LndReesError,
    ModificationError,
    NilpotencyError,
    NonTerminationError,
    NotInIdealError,
    ResourceBudgetError,
)
from .groebner import Ideal, RingMap, Subalgebra, buchberger, eliminate, ringmap_kernel
from .lnd import Derivation, QuotientAlgebra, exp_t, in_filtration, nil_degree
from .modification import ModificationInput, modify, verify_rees_modification
from .parser import ParseError, parse_poly, parse_spec
from .polycore import MonomialOrder, Poly, Ring
from .rees import (
    ReesPresentation,
    associated_graded,
    degree_module_gens,
    kernel_generators,
    rees_algorithm,
    specialize_upsilon_one,
)

__all__ = [
    "DerivationError", "FiltrationError", "InconsistencyError", "LndReesError",
    "ModificationError", "NilpotencyError", "NonTerminationError", "NotInIdealError",
    "ResourceBudgetError", "Ideal", "RingMap", "Subalgebra", "buchberger", "eliminate",
    "ringmap_kernel", "Derivation", "QuotientAlgebra", "exp_t", "in_filtration",
    "nil_degree", "ModificationInput", "modify", "verify_rees_modification", "ParseError",
    "parse_poly", "parse_spec", "MonomialOrder", "Poly", "Ring", "ReesPresentation",
    "associated_graded", "degree_module_gens", "kernel_generators", "rees_algorithm",
    "specialize_upsilon_one",
]
