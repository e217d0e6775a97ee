import dataclasses
import itertools

import pytest

from padicmin.core import IntPoly, poly_eval_mod
from padicmin.criteria import Verdict
from padicmin.dynamics import delta, oracle_minimal
from padicmin.errors import FamilyTooLarge, UnsupportedPrime
from padicmin.harness import (
    FamilySpec,
    closed_form_verdict,
    cross_validate,
    find_minimal,
    identity_suite,
)


def brute_minimal_count(p, degree, m, lo=0):
    """Count full cycles mod p^delta by building each permutation."""
    level = p ** delta(p)
    count = 0
    for cs in itertools.product(range(lo, lo + m), repeat=degree):
        f = IntPoly((1,) + cs)
        succ = [poly_eval_mod(f, x, p, delta(p)) for x in range(level)]
        x, seen = 0, set()
        while x not in seen:
            seen.add(x)
            x = succ[x]
        count += len(seen) == level and x == 0
    return count


def test_family_defaults_and_size():
    spec = FamilySpec(p=5, max_degree=3)
    assert spec.coeff_modulus == 25
    assert spec.size == 15625
    assert FamilySpec(p=3, max_degree=1).coeff_modulus == 27
    assert FamilySpec(p=2, max_degree=1).coeff_modulus == 8


def test_family_rejects_constants():
    with pytest.raises(ValueError):
        FamilySpec(p=5, max_degree=0)


def test_family_lexicographic_order():
    members = list(FamilySpec(p=2, max_degree=2, coeff_modulus=3).members())
    assert members[:4] == [(1, 0, 0), (1, 0, 1), (1, 0, 2), (1, 1, 0)]
    assert len(members) == 9


def test_linear_p5_family():
    rep = cross_validate(FamilySpec(p=5, max_degree=1, coeff_modulus=25))
    assert rep.total == 25
    assert rep.minimal_count == 5
    assert rep.mismatches == [] and rep.exact
    minimal = find_minimal(FamilySpec(p=5, max_degree=1), 25)
    assert [f[1] for f in minimal] == [1, 6, 11, 16, 21]


def test_quadratic_p2_family():
    rep = cross_validate(FamilySpec(p=2, max_degree=2, coeff_modulus=8))
    assert rep.total == 64
    assert rep.exact
    assert rep.minimal_count == brute_minimal_count(2, 2, 8)


def test_p3_reports_both_readings():
    rep = cross_validate(FamilySpec(p=3, max_degree=2))
    assert rep.total == 729
    assert set(rep.p3_reading_scores.values()) == {0}
    assert rep.resolved_reading is not None
    assert rep.minimal_count == brute_minimal_count(3, 2, 27)


def test_unsupported_prime_and_cap():
    with pytest.raises(UnsupportedPrime):
        cross_validate(FamilySpec(p=7, max_degree=1))
    with pytest.raises(FamilyTooLarge):
        cross_validate(FamilySpec(p=5, max_degree=9))
    with pytest.raises(FamilyTooLarge):
        find_minimal(FamilySpec(p=5, max_degree=3, cap=100), 1)


def test_find_minimal_first():
    assert find_minimal(FamilySpec(p=5, max_degree=1), 1) == [IntPoly([1, 1])]
    assert find_minimal(FamilySpec(p=2, max_degree=2, coeff_modulus=8), 1) == [IntPoly([1, 1])]
    assert find_minimal(FamilySpec(p=5, max_degree=1), 0) == []


def test_no_minimal_map_with_a1_divisible_by_5():
    found = find_minimal(FamilySpec(p=5, max_degree=2), 10**6)
    assert found
    assert all(f[1] % 5 != 0 for f in found)


def _strip_runtime(rep):
    return dataclasses.replace(rep, runtime=0.0, workers=0)


def test_workers_do_not_change_report():
    spec = FamilySpec(p=5, max_degree=2)
    assert _strip_runtime(cross_validate(spec, workers=1)) == _strip_runtime(cross_validate(spec, workers=2))
    sampled = FamilySpec(p=3, max_degree=3, samples=500, seed=9)
    assert _strip_runtime(cross_validate(sampled, workers=1)) == _strip_runtime(cross_validate(sampled, workers=3))


def test_sampling_is_seeded():
    a = list(FamilySpec(p=5, max_degree=4, samples=50, seed=1).members())
    b = list(FamilySpec(p=5, max_degree=4, samples=50, seed=1).members())
    c = list(FamilySpec(p=5, max_degree=4, samples=50, seed=2).members())
    assert a == b != c
    assert cross_validate(FamilySpec(p=5, max_degree=4, samples=50, seed=1)).total == 50


@pytest.mark.parametrize("p,degree", [(5, 2), (2, 3), (3, 2)])
def test_count_invariant_under_representative_shift(p, degree):
    m = p ** delta(p)
    base = cross_validate(FamilySpec(p=p, max_degree=degree))
    shifted = cross_validate(FamilySpec(p=p, max_degree=degree, coeff_min=-(m // 2)))
    assert base.minimal_count == shifted.minimal_count


def test_mismatches_replay():
    # the p = 5 table is not exact from degree 7 on
    rep = cross_validate(FamilySpec(p=5, max_degree=7, samples=20000, seed=7))
    assert rep.mismatch_count == len(rep.mismatches) > 0
    for m in rep.mismatches:
        assert Verdict.of(closed_form_verdict(m.poly, 5)) is m.closed_form
        assert Verdict.of(oracle_minimal(m.poly, 5)) is m.oracle
        assert m.closed_form is not m.oracle


def test_identity_suite_p5():
    rep = identity_suite(5, 2000, seed=42)
    assert rep.passed
    assert rep.checked["chain_rule"] > 0 and rep.checked["lift"] > 0
    assert rep.informational["chain_rule_without_full_cycle"] > 0


def test_identity_suite_p2():
    rep = identity_suite(2, 1000, seed=7)
    assert rep.passed
    assert rep.checked["conjugacy"] == 1000


def test_identity_suite_empty():
    rep = identity_suite(5, 0, seed=3)
    assert rep.passed and not any(rep.checked.values())
