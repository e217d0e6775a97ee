"""Cross-validation of the closed-form criteria against the brute-force oracle."""

from __future__ import annotations

import itertools
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .core import IntPoly, Prime, normalize, poly_derivative
from .criteria import (
    CLOSED_FORM_PRIMES,
    A0Reading,
    Verdict,
    chain_rule_product,
    closed_form,
    derivative_product,
    derived_terms,
)
from .dynamics import delta, full_cycle_check, lift_check, lift_conditions, oracle_minimal
from .errors import ConstantTermNotUnit, FamilyTooLarge, UnsupportedPrime

DEFAULT_CAP = 10**7
MAX_STORED_MISMATCHES = 1000


@dataclass(frozen=True)
class FamilySpec:
    """Polynomials c + a_1 x + ... + a_d x^d with a_i in [coeff_min, coeff_min + m).

    ``samples=None`` means exhaustive enumeration in lexicographic order of
    (a_1, ..., a_d); otherwise ``samples`` members are drawn with ``seed``.
    """

    p: int
    max_degree: int
    coeff_modulus: Optional[int] = None
    constant_term: int = 1
    samples: Optional[int] = None
    seed: int = 0
    coeff_min: int = 0
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        object.__setattr__(self, "p", Prime(self.p))
        if self.max_degree < 1:
            raise ValueError("max_degree must be >= 1")
        if self.coeff_modulus is None:
            object.__setattr__(self, "coeff_modulus", self.p ** delta(self.p))
        if self.coeff_modulus < 1:
            raise ValueError("coeff_modulus must be >= 1")
        if self.samples is not None and self.samples < 0:
            raise ValueError("samples must be >= 0")

    @property
    def exhaustive(self) -> bool:
        return self.samples is None

    @property
    def size(self) -> int:
        if self.exhaustive:
            return self.coeff_modulus**self.max_degree
        return self.samples

    def check_cap(self):
        if self.size > self.cap:
            raise FamilyTooLarge(
                f"family has {self.size} members, cap is {self.cap}"
            )

    def shards(self) -> list[list[tuple[int, ...]]] | list[int]:
        """Work units: leading-coefficient values (exhaustive) or sample chunks."""
        if self.exhaustive:
            return list(range(self.coeff_min, self.coeff_min + self.coeff_modulus))
        coeffs = list(self._sample_coeffs())
        step = max(1, -(-len(coeffs) // 64))
        return [coeffs[i:i + step] for i in range(0, len(coeffs), step)]

    def shard_members(self, shard) -> Iterator[tuple[int, ...]]:
        if not self.exhaustive:
            yield from shard
            return
        rng = range(self.coeff_min, self.coeff_min + self.coeff_modulus)
        for rest in itertools.product(rng, repeat=self.max_degree - 1):
            yield (self.constant_term, shard) + rest

    def members(self) -> Iterator[tuple[int, ...]]:
        for shard in self.shards():
            yield from self.shard_members(shard)

    def _sample_coeffs(self) -> Iterator[tuple[int, ...]]:
        rng = random.Random(self.seed)
        lo, hi = self.coeff_min, self.coeff_min + self.coeff_modulus - 1
        for _ in range(self.samples):
            yield (self.constant_term,) + tuple(
                rng.randint(lo, hi) for _ in range(self.max_degree)
            )


@dataclass(frozen=True)
class Mismatch:
    poly: IntPoly
    closed_form: Verdict
    oracle: Verdict
    a0_reading: Optional[A0Reading] = None


@dataclass
class CrossValReport:
    family: FamilySpec
    total: int
    minimal_count: int
    mismatches: list[Mismatch]
    mismatch_count: int
    p3_reading_scores: Optional[dict[A0Reading, int]] = None
    resolved_reading: Optional[A0Reading] = None
    runtime: float = 0.0
    workers: int = 1

    @property
    def exact(self) -> bool:
        return self.mismatch_count == 0


def _readings(p: int) -> tuple[Optional[A0Reading], ...]:
    return tuple(A0Reading) if p == 3 else (None,)


def closed_form_verdict(f: IntPoly, p: int, reading: Optional[A0Reading] = None) -> bool:
    try:
        g = normalize(f, p)
    except ConstantTermNotUnit:
        return False
    if reading is None:
        return closed_form(g, p).minimal
    return closed_form(g, p, reading).minimal


@dataclass
class _ShardResult:
    total: int = 0
    minimal: int = 0
    counts: dict = field(default_factory=dict)
    found: dict = field(default_factory=dict)


def _run_shard(spec: FamilySpec, shard) -> _ShardResult:
    readings = _readings(spec.p)
    res = _ShardResult(counts={r: 0 for r in readings}, found={r: [] for r in readings})
    level = delta(spec.p)
    for coeffs in spec.shard_members(shard):
        f = IntPoly(coeffs)
        truth = full_cycle_check(f, spec.p, level)
        res.total += 1
        res.minimal += truth
        for r in readings:
            cf = closed_form_verdict(f, spec.p, r)
            if cf != truth:
                res.counts[r] += 1
                if len(res.found[r]) < MAX_STORED_MISMATCHES:
                    res.found[r].append(Mismatch(f, Verdict.of(cf), Verdict.of(truth), r))
    return res


def _run_shard_star(args):
    return _run_shard(*args)


def cross_validate(spec: FamilySpec, workers: int = 1) -> CrossValReport:
    """Compare closed-form and oracle verdicts over every family member.

    The result does not depend on ``workers``: shards are merged in shard
    order and mismatch lists keep enumeration order.
    """
    if spec.p not in CLOSED_FORM_PRIMES:
        raise UnsupportedPrime(f"no closed-form criterion for p = {spec.p}")
    spec.check_cap()
    t0 = time.perf_counter()
    shards = spec.shards()
    if workers > 1 and len(shards) > 1:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_run_shard_star, [(spec, s) for s in shards]))
    else:
        parts = [_run_shard(spec, s) for s in shards]

    readings = _readings(spec.p)
    counts = {r: sum(part.counts[r] for part in parts) for r in readings}
    found = {r: [m for part in parts for m in part.found[r]][:MAX_STORED_MISMATCHES] for r in readings}

    scores = resolved = None
    if spec.p == 3:
        scores = counts
        resolved = next((r for r in readings if counts[r] == 0), None)
        chosen = [resolved] if resolved is not None else list(readings)
    else:
        chosen = [None]

    return CrossValReport(
        family=spec,
        total=sum(part.total for part in parts),
        minimal_count=sum(part.minimal for part in parts),
        mismatches=[m for r in chosen for m in found[r]],
        mismatch_count=sum(counts[r] for r in chosen),
        p3_reading_scores=scores,
        resolved_reading=resolved,
        runtime=time.perf_counter() - t0,
        workers=workers,
    )


def find_minimal(spec: FamilySpec, limit: int) -> list[IntPoly]:
    """First ``limit`` family members that the oracle calls minimal."""
    spec.check_cap()
    out = []
    if limit <= 0:
        return out
    for coeffs in spec.members():
        f = IntPoly(coeffs)
        if oracle_minimal(f, spec.p):
            out.append(f)
            if len(out) >= limit:
                break
    return out


@dataclass
class IdentityReport:
    p: int
    samples: int
    seed: int
    violations: dict[str, int]
    checked: dict[str, int]
    informational: dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not any(self.violations.values())


def random_poly(rng: random.Random, p: int, max_degree: int = 8, bound: int = 100, unit_constant: bool = True) -> IntPoly:
    d = rng.randint(1, max_degree)
    coeffs = [rng.randint(-bound, bound) for _ in range(d + 1)]
    if unit_constant:
        while coeffs[0] % p == 0:
            coeffs[0] = rng.randint(-bound, bound)
    return IntPoly(coeffs)


def identity_suite(p: int, samples: int, seed: int = 0) -> IdentityReport:
    """Check structural theorems on random polynomials; count violations.

    chain_rule:  (f^5)'(0) = a_1 D_1 D_2 D_-2 D_-1 mod 5 when f is a full
                 cycle mod 5 (p = 5 only)
    residue_product: prod of f'(x) over x in Z/5Z = a_1 D_1 D_2 D_-2 D_-1
    conjugacy:   oracle verdict of f equals that of its normalization
    projection:  full cycle at level n implies full cycle at level n - 1
    lift:        at a level-n full cycle, the lifting test at 0 predicts
                 level n + 1, and agrees with the test at random points

    ``informational`` counts how often the chain-rule identity fails when
    the full-cycle hypothesis is dropped; that is not a violation, the
    orbit of 0 then skips residues.
    """
    p = Prime(p)
    rng = random.Random(seed)
    names = ["chain_rule", "residue_product", "conjugacy", "projection", "lift"]
    unrestricted = 0
    bad = dict.fromkeys(names, 0)
    seen = dict.fromkeys(names, 0)
    top = max(n for n in range(1, 6) if p**n <= 625)

    for _ in range(samples):
        f = random_poly(rng, p)
        g = normalize(f, p)
        if p == 5:
            expected = derivative_product(derived_terms(g, 5))
            along_orbit = chain_rule_product(g, 5) != expected
            unrestricted += along_orbit
            if full_cycle_check(g, 5, 1):
                seen["chain_rule"] += 1
                bad["chain_rule"] += along_orbit
            dg = poly_derivative(g)
            seen["residue_product"] += 1
            bad["residue_product"] += math.prod(dg(x) for x in range(5)) % 5 != expected
        seen["conjugacy"] += 1
        bad["conjugacy"] += oracle_minimal(f, p) != oracle_minimal(g, p)

        full = {n: full_cycle_check(f, p, n) for n in range(1, top + 1)}
        for n in range(2, top + 1):
            seen["projection"] += 1
            bad["projection"] += full[n] and not full[n - 1]
        for n in range(1, top):
            if not full[n]:
                continue
            seen["lift"] += 1
            at_zero = lift_check(f, p, n)
            wrong = at_zero != full[n + 1]
            for _ in range(3):
                x = rng.randrange(p ** (n + 1))
                wrong |= all(lift_conditions(f, p, n, x)) != at_zero
            bad["lift"] += wrong
    info = {"chain_rule_without_full_cycle": unrestricted} if p == 5 else {}
    return IdentityReport(p, samples, seed, bad, seen, info)
