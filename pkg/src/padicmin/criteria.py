"""Closed-form minimality criteria for polynomial maps on Z_2, Z_3 and Z_5.

Every checker expects a polynomial with constant term exactly 1; use
``core.normalize`` (conjugation by x -> a_0 x) first, or go through
``check_minimal`` which does so.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Union

from .core import IntPoly, Prime, normalize, poly_derivative, poly_eval_mod
from .dynamics import OrbitTrace, delta, orbit, oracle_minimal
from .errors import ConstantTermNotUnit, NotNormalized, UnsupportedPrime

CLOSED_FORM_PRIMES = (2, 3, 5)


class Verdict(str, enum.Enum):
    MINIMAL = "Minimal"
    NOT_MINIMAL = "NotMinimal"

    @classmethod
    def of(cls, ok: bool) -> Verdict:
        return cls.MINIMAL if ok else cls.NOT_MINIMAL


class Method(str, enum.Enum):
    CLOSED_FORM = "closed-form"
    ORACLE = "oracle"
    BOTH = "both"


class A0Reading(str, enum.Enum):
    """How to read the undefined sum A_0 in rows II and IV of the p=3 table."""

    AS_A2 = "as-A2"  # A_0 := sum of a_i over even i >= 2
    AS_MULT6_SUM = "as-mult6-sum"  # A_0 := sum of a_i over i >= 6, 6 | i


# Checked against the oracle on every degree <= 4 polynomial mod 27 and on
# sampled higher degrees; only the A_2 reading survives past degree 4.
DEFAULT_A0_READING = A0Reading.AS_A2


@dataclass(frozen=True)
class Condition:
    name: str
    congruence: str
    passed: bool
    value: int


@dataclass(frozen=True)
class DerivedTermsP2:
    a1: int
    a2: int
    A1: int
    A2: int


@dataclass(frozen=True)
class DerivedTermsP3:
    a1: int
    a2: int
    A1: int
    A2: int
    D1: int
    Dm1: int
    S2: int  # sum of a_{2+6j}
    S5: int  # sum of a_{5+6j}
    S6: int  # sum of a_{6j}, j >= 1


@dataclass(frozen=True)
class DerivedTermsP5:
    a1: int
    A1: int
    A2: int
    A3: int
    A4: int
    D1: int
    Dm1: int
    D2: int
    Dm2: int
    D_exact: tuple[int, int, int, int]  # f'(1), f'(-1), f'(2), f'(-2)
    alpha: Optional[tuple[int, int, int, int]] = None
    case: Optional[str] = None

    @property
    def A(self) -> tuple[int, int, int, int]:
        return (self.A1, self.A2, self.A3, self.A4)


DerivedTerms = Union[DerivedTermsP2, DerivedTermsP3, DerivedTermsP5]


@dataclass
class MinimalityReport:
    p: int
    poly: IntPoly
    normalized: Optional[IntPoly]
    verdict: Verdict
    method: Method
    matched_case: Optional[str] = None
    conditions: list[Condition] = field(default_factory=list)
    witness: Optional[OrbitTrace] = None
    closed_form_verdict: Optional[Verdict] = None
    oracle_verdict: Optional[Verdict] = None
    mismatch: bool = False
    a0_reading: Optional[A0Reading] = None
    terms: Optional[DerivedTerms] = None
    notes: list[str] = field(default_factory=list)

    @property
    def minimal(self) -> bool:
        return self.verdict is Verdict.MINIMAL


def _sum_where(f: IntPoly, pred) -> int:
    return sum(a for i, a in enumerate(f.coeffs) if i >= 1 and pred(i))


def derived_terms(f: IntPoly, p: int) -> DerivedTerms:
    if p not in CLOSED_FORM_PRIMES:
        raise UnsupportedPrime(f"no closed-form criterion for p = {p}")
    if f[0] != 1:
        raise NotNormalized(f"constant term is {f[0]}, expected 1 (normalize first)")
    a1, a2 = f[1], f[2]
    df = poly_derivative(f)

    if p == 2:
        return DerivedTermsP2(
            a1, a2, _sum_where(f, lambda i: i % 2 == 1), _sum_where(f, lambda i: i % 2 == 0)
        )
    if p == 3:
        return DerivedTermsP3(
            a1,
            a2,
            A1=_sum_where(f, lambda i: i % 2 == 1),
            A2=_sum_where(f, lambda i: i % 2 == 0),
            D1=df(1),
            Dm1=df(-1),
            S2=_sum_where(f, lambda i: i % 6 == 2),
            S5=_sum_where(f, lambda i: i % 6 == 5),
            S6=_sum_where(f, lambda i: i % 6 == 0),
        )

    A = tuple(_sum_where(f, lambda i, r=r: i % 4 == r % 4) for r in (1, 2, 3, 4))
    exact = (df(1), df(-1), df(2), df(-2))
    case = alpha = None
    for label, (base, _) in P5_CASES.items():
        if all((A[r] - base[r]) % 5 == 0 for r in range(4)):
            case = label
            alpha = tuple((A[r] - base[r]) // 5 % 5 for r in range(4))
            break
    return DerivedTermsP5(
        a1, *A, *(d % 5 for d in exact), D_exact=exact, alpha=alpha, case=case
    )


# --- p = 2 -----------------------------------------------------------------


def check_p2(f: IntPoly) -> MinimalityReport:
    t = derived_terms(f, 2)
    conds = [
        Condition("a1 odd", "a_1 ≡ 1 (mod 2)", t.a1 % 2 == 1, t.a1 % 2),
        Condition("A1 odd", "A_1 ≡ 1 (mod 2)", t.A1 % 2 == 1, t.A1 % 2),
        Condition("A1+A2", "A_1 + A_2 ≡ 1 (mod 4)", (t.A1 + t.A2) % 4 == 1, (t.A1 + t.A2) % 4),
        Condition(
            "2a2+a1A1",
            "2a_2 + a_1 A_1 ≡ 1 (mod 4)",
            (2 * t.a2 + t.a1 * t.A1) % 4 == 1,
            (2 * t.a2 + t.a1 * t.A1) % 4,
        ),
    ]
    return _closed_form_report(f, 2, conds, None, t)


# --- p = 3 -----------------------------------------------------------------

# row -> residues of (A1, A2, D1, D-1, a1) mod 3
P3_ROWS = {
    "I": (1, 0, 2, 2, 1),
    "II": (1, 0, 1, 1, 1),
    "III": (1, 0, 1, 2, 2),
    "IV": (1, 0, 2, 1, 2),
}


def _p3_row_conditions(row: str, t: DerivedTermsP3, A0: int) -> list[Condition]:
    if row in ("I", "III"):
        k = 3 if row == "I" else 6
        lhs = t.A1 + 5
        rhs = k * t.a2 + 3 * t.S5
        return [
            Condition("A1+5", "A_1 + 5 ≢ 0 (mod 9)", lhs % 9 != 0, lhs % 9),
            Condition(
                "A1+5 vs a2,S5",
                f"A_1 + 5 ≢ {k}a_2 + 3·Σa_(5+6j) (mod 9)",
                (lhs - rhs) % 9 != 0,
                (lhs - rhs) % 9,
            ),
        ]
    k = 6 if row == "II" else 3
    lhs = t.A2 + 6
    diff = A0 + 6 - (k * t.a2 + 3 * t.S2)
    return [
        Condition("A2+6", "A_2 + 6 ≢ 0 (mod 9)", lhs % 9 != 0, lhs % 9),
        Condition(
            "A0+6 vs a2,S2",
            f"A_0 + 6 ≢ {k}a_2 + 3·Σa_(2+6j) (mod 9)",
            diff % 9 != 0,
            diff % 9,
        ),
    ]


def check_p3(f: IntPoly, a0_reading: A0Reading = DEFAULT_A0_READING) -> MinimalityReport:
    t = derived_terms(f, 3)
    key = tuple(v % 3 for v in (t.A1, t.A2, t.D1, t.Dm1, t.a1))
    row = next((r for r, res in P3_ROWS.items() if res == key), None)
    conds = [
        Condition(
            "row match",
            "(A_1, A_2, D_1, D_-1, a_1) mod 3 in table rows",
            row is not None,
            key[0] * 81 + key[1] * 27 + key[2] * 9 + key[3] * 3 + key[4],
        )
    ]
    if row is not None:
        A0 = t.A2 if a0_reading is A0Reading.AS_A2 else t.S6
        conds += _p3_row_conditions(row, t, A0)
    rep = _closed_form_report(f, 3, conds, row, t)
    rep.a0_reading = A0Reading(a0_reading)
    return rep


# --- p = 5 -----------------------------------------------------------------

# A linear form in the alphas is (const, c1, c2, c3, c4).  A case's third
# condition is sum(form(alpha) * product of named D residues) ≢ 0 (mod 5).
_ALL = ("Dm1", "D2", "Dm2")
P5_CASES: dict[str, tuple[tuple[int, int, int, int], Optional[list]]] = {
    "I": (
        (1, 0, 0, 0),
        [
            ((0, 4, 1, 4, 1), ()),
            ((0, 3, 4, 2, 1), ("Dm1",)),
            ((1, 2, 4, 3, 1), ("Dm1", "Dm2")),
            ((0, 1, 1, 1, 1), _ALL),
        ],
    ),
    "II": (
        (4, 4, 3, 0),
        [
            ((4, 3, 4, 2, 1), ()),
            ((0, 4, 1, 4, 1), ("Dm2",)),
            ((0, 2, 4, 3, 1), ("Dm1", "Dm2")),
            ((2, 1, 1, 1, 1), _ALL),
        ],
    ),
    "III": ((1, 3, 3, 0), None),
    "IV": (
        (1, 4, 2, 0),
        [
            ((4, 2, 4, 3, 1), ()),
            ((0, 4, 1, 4, 1), ("D2",)),
            ((0, 3, 4, 2, 1), ("Dm1", "D2")),
            ((2, 1, 1, 1, 1), _ALL),
        ],
    ),
    "V": (
        (4, 2, 2, 0),
        [
            ((4, 3, 4, 2, 1), ()),
            ((1, 2, 4, 3, 1), ("Dm2",)),
            ((4, 4, 1, 4, 1), ("D2", "Dm2")),
            ((2, 1, 1, 1, 1), _ALL),
        ],
    ),
    "VI": (
        (0, 0, 3, 0),
        [
            ((4, 2, 4, 3, 1), ()),
            ((1, 3, 4, 2, 1), ("D2",)),
            ((0, 4, 1, 4, 1), ("D2", "Dm2")),
            ((1, 1, 1, 1, 1), _ALL),
        ],
    ),
}


def case_expression(case: str, alpha, D: dict[str, int]) -> int:
    """Value of a case's displacement expression, as an exact integer.

    ``f^5(0)`` is 5 times this value mod 25.  Callers reduce mod 5.
    """
    terms = P5_CASES[case][1]
    if terms is None:
        raise ValueError(f"case {case} has no displacement expression")
    total = 0
    for form, names in terms:
        coeff = form[0] + sum(c * a for c, a in zip(form[1:], alpha))
        prod = 1
        for name in names:
            prod *= D[name]
        total += coeff * prod
    return total


def derivative_product(t: DerivedTermsP5) -> int:
    return t.a1 * t.D1 * t.D2 * t.Dm2 * t.Dm1 % 5


def check_p5(f: IntPoly) -> MinimalityReport:
    t = derived_terms(f, 5)
    A_res = tuple(a % 5 for a in t.A)
    conds = [
        Condition(
            "case match",
            "(A_1, A_2, A_3, A_4) mod 5 in cases I-VI",
            t.case is not None,
            A_res[0] * 125 + A_res[1] * 25 + A_res[2] * 5 + A_res[3],
        )
    ]
    prod = derivative_product(t)
    conds.append(
        Condition("derivative product", "a_1 D_1 D_2 D_-2 D_-1 ≡ 1 (mod 5)", prod == 1, prod)
    )
    if t.case == "III":
        # f^5(0) ≡ 5 D_-1 (mod 25); nonzero whenever the product is a unit
        v = 5 * t.Dm1 % 25
        conds.append(
            Condition("case III displacement", "5 D_-1 ≢ 0 (mod 25)", v != 0, v)
        )
    elif t.case is not None:
        D = {"Dm1": t.Dm1, "D2": t.D2, "Dm2": t.Dm2}
        v = case_expression(t.case, t.alpha, D) % 5
        conds.append(
            Condition(f"case {t.case} displacement", "case expression ≢ 0 (mod 5)", v != 0, v)
        )
    return _closed_form_report(f, 5, conds, t.case, t)


def chain_rule_product(f: IntPoly, p: int) -> int:
    """(f^p)'(0) mod p, as the product of f' along the orbit of 0."""
    df = poly_derivative(f)
    x, prod = 0, 1
    for _ in range(p):
        prod = prod * poly_eval_mod(df, x, p, 1) % p
        x = poly_eval_mod(f, x, p, 1)
    return prod


# --- dispatch --------------------------------------------------------------


def _closed_form_report(f, p, conds, case, terms) -> MinimalityReport:
    ok = all(c.passed for c in conds)
    return MinimalityReport(
        p=p,
        poly=f,
        normalized=f,
        verdict=Verdict.of(ok),
        method=Method.CLOSED_FORM,
        matched_case=case,
        conditions=conds,
        closed_form_verdict=Verdict.of(ok),
        terms=terms,
    )


def closed_form(f: IntPoly, p: int, a0_reading: A0Reading = DEFAULT_A0_READING) -> MinimalityReport:
    """Run the closed-form checker for p on an already normalized f."""
    if p == 2:
        return check_p2(f)
    if p == 3:
        return check_p3(f, a0_reading)
    if p == 5:
        return check_p5(f)
    raise UnsupportedPrime(f"no closed-form criterion for p = {p}")


def default_method(p: int) -> Method:
    return Method.BOTH if p in CLOSED_FORM_PRIMES else Method.ORACLE


def check_minimal(
    f: IntPoly,
    p: int,
    mode: Optional[Method] = None,
    a0_reading: A0Reading = DEFAULT_A0_READING,
) -> MinimalityReport:
    """Decide minimality of f on Z_p by closed form, brute force, or both.

    In ``Method.BOTH`` a disagreement sets ``mismatch`` and adds a
    ``CriterionMismatch`` note; the reported verdict is then the oracle's.
    """
    p = Prime(p)
    mode = default_method(p) if mode is None else Method(mode)
    use_cf = mode in (Method.CLOSED_FORM, Method.BOTH)
    use_oracle = mode in (Method.ORACLE, Method.BOTH)
    if use_cf and p not in CLOSED_FORM_PRIMES:
        raise UnsupportedPrime(f"no closed-form criterion for p = {p}")

    try:
        g = normalize(f, p)
    except ConstantTermNotUnit as exc:
        a0 = f[0] % p
        rep = MinimalityReport(
            p=p,
            poly=f,
            normalized=None,
            verdict=Verdict.NOT_MINIMAL,
            method=mode,
            conditions=[Condition("a0 unit", f"a_0 ≢ 0 (mod {p})", False, a0)],
            notes=[str(exc)],
        )
        if use_cf:
            rep.closed_form_verdict = Verdict.NOT_MINIMAL
        if use_oracle:
            rep.witness = orbit(f, 0, p, delta(p))
            rep.oracle_verdict = Verdict.of(rep.witness.is_full_cycle)
        return rep

    if use_cf:
        rep = closed_form(g, p, a0_reading)
        rep.poly = f
    else:
        rep = MinimalityReport(p=p, poly=f, normalized=g, verdict=Verdict.NOT_MINIMAL, method=mode)
        if p not in CLOSED_FORM_PRIMES:
            rep.notes.append(
                f"oracle-only verdict: full cycle modulo {p}^{delta(p)} decides minimality"
            )
    rep.method = mode

    if use_oracle:
        rep.witness = orbit(f, 0, p, delta(p))
        rep.oracle_verdict = Verdict.of(rep.witness.is_full_cycle)
        if use_cf:
            if rep.oracle_verdict != rep.closed_form_verdict:
                rep.mismatch = True
                rep.notes.append(
                    "CriterionMismatch: closed form says "
                    f"{rep.closed_form_verdict.value}, oracle says {rep.oracle_verdict.value}"
                )
        rep.verdict = rep.oracle_verdict
    return rep


__all__ = [
    "A0Reading",
    "Condition",
    "DerivedTermsP2",
    "DerivedTermsP3",
    "DerivedTermsP5",
    "Method",
    "MinimalityReport",
    "Verdict",
    "check_minimal",
    "check_p2",
    "check_p3",
    "check_p5",
    "chain_rule_product",
    "derived_terms",
    "oracle_minimal",
]
