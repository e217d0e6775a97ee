"""Minimality of polynomial maps on the p-adic integers (p = 2, 3, 5)."""

from .core import IntPoly, Prime, mod_inverse, normalize, padic_valuation
from .criteria import A0Reading, Method, MinimalityReport, Verdict, check_minimal
from .dynamics import full_cycle_check, minimal_decomposition, oracle_minimal, orbit
from .polytext import parse_poly

__all__ = [
    "A0Reading",
    "IntPoly",
    "Method",
    "MinimalityReport",
    "Prime",
    "Verdict",
    "check_minimal",
    "full_cycle_check",
    "minimal_decomposition",
    "mod_inverse",
    "normalize",
    "oracle_minimal",
    "orbit",
    "padic_valuation",
    "parse_poly",
]
