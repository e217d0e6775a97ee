"""Exact integer and modular arithmetic for polynomials over Z_p.

Polynomials carry exact (arbitrary precision) integer coefficients.  Every
minimality criterion reads coefficients only through small residues, so one
integer representation serves all levels Z/p^nZ.  Residues are plain ints in
the canonical range [0, p^n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ConstantTermNotUnit, NotAUnit, NotPrime

INFINITY = math.inf  # valuation of 0


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


class Prime(int):
    """An int that is known to be prime (checked by trial division)."""

    def __new__(cls, value):
        value = int(value)
        if not is_prime(value):
            raise NotPrime(value)
        return super().__new__(cls, value)


def check_level(n: int) -> int:
    n = int(n)
    if n < 1:
        raise ValueError(f"level must be >= 1, got {n}")
    return n


@dataclass(frozen=True)
class IntPoly:
    """Polynomial a_0 + a_1 x + ... + a_d x^d with exact integer coefficients.

    Trailing zero coefficients are dropped on construction; the zero
    polynomial is ``IntPoly((0,))``.
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        cs = [int(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [0]
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def x(cls) -> IntPoly:
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> int:
        """Coefficient a_i, zero beyond the degree."""
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __call__(self, x: int) -> int:
        r = 0
        for a in reversed(self.coeffs):
            r = r * x + a
        return r

    def __str__(self) -> str:
        return format_poly(self)


def format_poly(f: IntPoly) -> str:
    """Expression form, highest degree first, e.g. ``5x^5+10x^4-5x^2-4x+1``."""
    parts = []
    for i in range(f.degree, -1, -1):
        a = f.coeffs[i]
        if a == 0:
            continue
        sign = "-" if a < 0 else "+"
        mag = abs(a)
        if i == 0:
            body = str(mag)
        else:
            body = ("" if mag == 1 else str(mag)) + ("x" if i == 1 else f"x^{i}")
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += sign + body
    return out


def padic_valuation(x: int, p: int) -> int | float:
    """Largest v with p^v | x; ``INFINITY`` for x = 0."""
    if x == 0:
        return INFINITY
    x = abs(x)
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def mod_inverse(a: int, p: int, n: int) -> int:
    if a % p == 0:
        raise NotAUnit(f"{a} is divisible by {p}")
    return pow(a, -1, p**n)


def poly_eval_mod(f: IntPoly, x: int, p: int, n: int) -> int:
    m = p**n
    r = 0
    for a in reversed(f.coeffs):
        r = (r * x + a) % m
    return r


def poly_derivative(f: IntPoly) -> IntPoly:
    if f.degree == 0:
        return IntPoly((0,))
    return IntPoly(i * a for i, a in enumerate(f.coeffs) if i > 0)


def reduce_mod(f: IntPoly, m: int) -> IntPoly:
    return IntPoly(a % m for a in f.coeffs)


def _mul_mod(u: Sequence[int], v: Sequence[int], m: int) -> list[int]:
    out = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a == 0:
            continue
        for j, b in enumerate(v):
            out[i + j] = (out[i + j] + a * b) % m
    return out


def poly_compose_mod(f: IntPoly, g: IntPoly, p: int, n: int) -> IntPoly:
    """Coefficients of f(g(x)) reduced mod p^n (Horner over polynomials)."""
    m = p**n
    acc = [0]
    for a in reversed(f.coeffs):
        acc = _mul_mod(acc, g.coeffs, m)
        acc[0] = (acc[0] + a) % m
    return IntPoly(acc)


def normalize(f: IntPoly, p: int) -> IntPoly:
    """Conjugate f to g(x) = f(a_0 x) / a_0, which has constant term 1.

    g_i = a_i * a_0^(i-1) is integral, so no modular reduction happens.  The
    two maps are conjugate on Z_p, hence share minimality.
    """
    a0 = f.coeffs[0]
    if a0 % p == 0:
        raise ConstantTermNotUnit(
            f"constant term {a0} is divisible by {p}: 0 is a fixed point modulo {p}"
        )
    return IntPoly([1] + [a * a0 ** (i - 1) for i, a in enumerate(f.coeffs) if i > 0])
