"""Generalized g-addition chains: construction, exact search, comparison, compilation."""

from .chain import Chain, ChainBuilder, ceil_log, digits, lambda_g, length, mu_m, scale, validate
from .errors import ConditionUnmet, GChainError, LimitExceeded, NotAChain, Overflow
from .factorize import Factorization, factor, is_prime
from .methods import best_method, factor_method, m_ary_method, plan_m_ary, tree_method
from .optimal import EnumerationTable, OptimalResult, bounds, enumerate, l_g_exact, subadditivity_check

__version__ = "0.1.0"

__all__ = [
    "Chain",
    "ChainBuilder",
    "ConditionUnmet",
    "EnumerationTable",
    "Factorization",
    "GChainError",
    "LimitExceeded",
    "NotAChain",
    "OptimalResult",
    "Overflow",
    "best_method",
    "bounds",
    "ceil_log",
    "digits",
    "enumerate",
    "factor",
    "factor_method",
    "is_prime",
    "l_g_exact",
    "lambda_g",
    "length",
    "m_ary_method",
    "mu_m",
    "plan_m_ary",
    "scale",
    "subadditivity_check",
    "tree_method",
    "validate",
]
