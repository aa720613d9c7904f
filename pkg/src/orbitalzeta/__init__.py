"""Orbital integrals on GL(2) through zeta functions of quadratic orders."""

__version__ = "0.1.0"

from .errors import GuardError, InconclusiveError, NotSquareMod4Error, OrbitalZetaError, SquareDeltaError
from .expoly import ExpPoly
from .fields import QQ, AlgebraicInt, BaseField, IdealData, LocalPrime, parse_element, parse_field, primes_above
from .global_formula import (
    arthur_series,
    divisor_expansion,
    global_series,
    langlands_value,
    normalized_elliptic_weight,
)
from .kloosterman import euler_factor_at_2, kloosterman
from .lfunctions import dirichlet_L
from .local import SplitType, conductor_exponent, local_split_type, s_delta, satisfies_congruence
from .oracles import global_ideal_count_oracle, tree_orbital_oracle
from .order_zeta import count_ideals_oracle, jtilde, order_polynomial, orbital_value
from .zagier import completed_lambda, zagier_decompose, zagier_L

__all__ = [
    "__version__",
    "AlgebraicInt",
    "BaseField",
    "ExpPoly",
    "GuardError",
    "IdealData",
    "InconclusiveError",
    "LocalPrime",
    "NotSquareMod4Error",
    "OrbitalZetaError",
    "QQ",
    "SplitType",
    "SquareDeltaError",
    "arthur_series",
    "completed_lambda",
    "conductor_exponent",
    "count_ideals_oracle",
    "dirichlet_L",
    "divisor_expansion",
    "euler_factor_at_2",
    "global_ideal_count_oracle",
    "global_series",
    "jtilde",
    "kloosterman",
    "langlands_value",
    "local_split_type",
    "normalized_elliptic_weight",
    "orbital_value",
    "order_polynomial",
    "parse_element",
    "parse_field",
    "primes_above",
    "s_delta",
    "satisfies_congruence",
    "tree_orbital_oracle",
    "zagier_L",
    "zagier_decompose",
]
