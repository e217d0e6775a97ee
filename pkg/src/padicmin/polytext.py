"""Parsing polynomials from text.

Two syntaxes are accepted:

* a coefficient list ``a0,a1,...,ad`` (the canonical machine form), and
* an expression such as ``5x^5 + 10x^4 - 5x^2 - 4x + 1``.

Repeated exponents in an expression are summed.
"""

from __future__ import annotations

import re

from .core import IntPoly, format_poly
from .errors import PolyParseError

_TERM = re.compile(r"([+-])?(\d+)?(?:(\*)?(x)(?:\^(\d+))?)?")


def parse_poly(text: str) -> IntPoly:
    s = re.sub(r"\s+", "", text)
    if not s:
        raise PolyParseError("empty polynomial")
    if "x" in s.lower():
        return _parse_expression(s.lower())
    try:
        return IntPoly(int(tok) for tok in s.split(","))
    except ValueError:
        raise PolyParseError(f"bad coefficient list: {text!r}") from None


def _parse_expression(s: str) -> IntPoly:
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        sign, num, star, x, exp = m.groups()
        if num is None and x is None:
            raise PolyParseError(f"unexpected {s[pos]!r} at position {pos} in {s!r}")
        if star and num is None:
            raise PolyParseError(f"dangling '*' at position {pos} in {s!r}")
        if sign is None and pos > 0:
            raise PolyParseError(f"missing operator before position {pos} in {s!r}")
        c = int(num) if num is not None else 1
        if sign == "-":
            c = -c
        e = 0 if x is None else (int(exp) if exp is not None else 1)
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
    return IntPoly(coeffs.get(i, 0) for i in range(max(coeffs) + 1))


def coeff_list(f: IntPoly) -> str:
    return ",".join(str(a) for a in f.coeffs)


__all__ = ["parse_poly", "format_poly", "coeff_list"]
