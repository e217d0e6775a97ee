"""Acceptance suite. Each criterion prints one PASS/FAIL line in the summary.

Run with ``pytest tests/test_acceptance.py``; the lines appear at the end
of the session whether or not output capture is on.
"""

import random
import time

import pytest

from padicmin.core import IntPoly, normalize, poly_eval_mod
from padicmin.criteria import Method, Verdict, chain_rule_product, check_minimal, derivative_product, derived_terms
from padicmin.dynamics import full_cycle_check, lift_check, minimal_decomposition, oracle_minimal
from padicmin.harness import FamilySpec, cross_validate, find_minimal, random_poly

EXAMPLE = IntPoly([1, -4, -5, 0, 10, 5])
EXAMPLE_ORBIT = (0, 1, 7, 23, 14, 20, 21, 2, 18, 9, 15, 16, 22, 13, 4, 10, 11, 17, 8, 24, 5, 6, 12, 3, 19)

RESULTS = {}


@pytest.fixture(scope="module", autouse=True)
def summary(request):
    yield
    reporter = request.config.pluginmanager.getplugin("terminalreporter")
    write = reporter.write_line if reporter else print
    write("")
    write("acceptance summary")
    for n in sorted(RESULTS):
        ok, detail = RESULTS[n]
        write(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")


def record(n, ok, detail):
    RESULTS[n] = (ok, detail)
    assert ok, detail


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def test_criterion_1_worked_example():
    rep, dt = timed(lambda: check_minimal(EXAMPLE, 5, mode=Method.BOTH))
    values = {c.name: c.value for c in rep.conditions}
    ok = (
        rep.verdict is Verdict.MINIMAL
        and not rep.mismatch
        and rep.matched_case == "I"
        and tuple(a % 5 for a in rep.terms.alpha) == (0, 4, 0, 2)
        and values["derivative product"] == 1
        and values["case I displacement"] == 4
        and -161311 % 5 == 4
        and tuple(rep.witness.sequence) == EXAMPLE_ORBIT
        and dt < 1.0
    )
    record(1, ok, f"verdict {rep.verdict.value}, case {rep.matched_case}, alpha {rep.terms.alpha}, "
                  f"product {values['derivative product']}, case value {values['case I displacement']}, {dt:.3f}s")


@pytest.mark.parametrize("degree,budget", [(3, 30.0), (4, 600.0)])
def test_criterion_2_p5_exhaustive(degree, budget):
    rep = cross_validate(FamilySpec(p=5, max_degree=degree, coeff_modulus=25))
    ok = rep.total == 25**degree and rep.mismatch_count == 0 and rep.runtime < budget
    detail = f"p=5 degree {degree}: {rep.total} maps, {rep.minimal_count} minimal, {rep.mismatch_count} mismatches, {rep.runtime:.1f}s"
    prev = RESULTS.get(2)
    if prev is not None:
        ok, detail = ok and prev[0], prev[1] + "; " + detail
    record(2, ok, detail)


def test_criterion_3_p2_exhaustive():
    rep = cross_validate(FamilySpec(p=2, max_degree=4, coeff_modulus=8))
    ok = rep.total == 4096 and rep.mismatch_count == 0 and rep.runtime < 5.0
    record(3, ok, f"{rep.total} maps, {rep.minimal_count} minimal, {rep.mismatch_count} mismatches, {rep.runtime:.2f}s")


def test_criterion_4_p3_reading():
    rep = cross_validate(FamilySpec(p=3, max_degree=4, coeff_modulus=27))
    scores = ", ".join(f"{r.value}: {n}" for r, n in rep.p3_reading_scores.items())
    ok = rep.total == 27**4 and rep.resolved_reading is not None and rep.runtime < 900.0
    resolved = rep.resolved_reading.value if rep.resolved_reading else "none"
    record(4, ok, f"{rep.total} maps, mismatches by reading ({scores}), resolved {resolved}, {rep.runtime:.1f}s")


def test_criterion_5_chain_rule_identity():
    rng = random.Random(20240501)
    t0 = time.perf_counter()
    violations = 0
    first = None
    for _ in range(10000):
        d = rng.randint(1, 8)
        f = IntPoly([1] + [rng.randint(-100, 100) for _ in range(d)])
        if chain_rule_product(f, 5) != derivative_product(derived_terms(f, 5)):
            violations += 1
            first = first or f
    dt = time.perf_counter() - t0
    record(5, violations == 0 and dt < 5.0,
           f"{violations} violations in 10000, {dt:.2f}s" + (f", first {first}" if first else ""))


def test_criterion_6_structural():
    rng = random.Random(6)
    bad = {}

    bad["conjugacy"] = 0
    for p in (2, 3, 5):
        for _ in range(1000):
            f = random_poly(rng, p)
            bad["conjugacy"] += oracle_minimal(f, p) != oracle_minimal(normalize(f, p), p)

    bad["projection"] = 0
    for p, top in ((2, 5), (3, 4), (5, 3)):
        for _ in range(300):
            f = random_poly(rng, p, max_degree=6, bound=50)
            full = [full_cycle_check(f, p, n) for n in range(1, top + 1)]
            bad["projection"] += any(full[i] and not full[i - 1] for i in range(1, top))

    family = FamilySpec(p=5, max_degree=3, coeff_modulus=25)
    minimal = find_minimal(family, family.size)
    bad["persistence"] = sum(
        not (full_cycle_check(f, 5, 3) and full_cycle_check(f, 5, 4))
        for f in rng.sample(minimal, 100)
    )

    bad["lift"] = 0
    for coeffs in family.members():
        f = IntPoly(coeffs)
        if full_cycle_check(f, 5, 1):
            bad["lift"] += lift_check(f, 5, 1) != full_cycle_check(f, 5, 2)

    bad["partition"] = 0
    for _ in range(500):
        p = rng.choice([2, 3, 5, 7])
        n = rng.randint(1, 3)
        f = random_poly(rng, p, max_degree=6, bound=50, unit_constant=False)
        d = minimal_decomposition(f, p, n)
        members = sorted(x for c in d.components for x in c.cycle + c.tails)
        closed = all(poly_eval_mod(f, a, p, n) == b for c in d.components
                     for a, b in zip(c.cycle, c.cycle[1:] + c.cycle[:1]))
        bad["partition"] += members != list(range(p**n)) or not closed

    record(6, not any(bad.values()), ", ".join(f"{k} {v}" for k, v in bad.items()) + " violations")


def test_criterion_7_linear_count():
    family = FamilySpec(p=5, max_degree=1, coeff_modulus=25)
    rep = cross_validate(family)
    a1 = [f[1] for f in find_minimal(family, 25)]
    ok = rep.minimal_count == 5 and a1 == [1, 6, 11, 16, 21] and rep.exact
    record(7, ok, f"{rep.minimal_count} minimal, a_1 in {a1}")
