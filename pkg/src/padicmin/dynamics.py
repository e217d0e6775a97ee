"""Finite-level dynamics of the induced map f_n : Z/p^nZ -> Z/p^nZ."""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import IntPoly, poly_derivative, poly_eval_mod
from .errors import PreconditionViolated


@dataclass(frozen=True)
class LevelPolicy:
    """Level at which minimality on all of Z_p is decided.

    Full-cycle at level ``delta`` is equivalent to minimality on Z_p:
    delta = 3 for p in {2, 3} and 2 otherwise.  The closed-form criteria
    only exist for p <= 5; for larger primes this level is all there is.
    """

    p: int
    delta: int

    @classmethod
    def for_prime(cls, p: int) -> LevelPolicy:
        return cls(p, 3 if p in (2, 3) else 2)


def delta(p: int) -> int:
    return LevelPolicy.for_prime(p).delta


@dataclass(frozen=True)
class OrbitTrace:
    start: int
    sequence: tuple[int, ...]
    preperiod: int
    period: int
    p: int
    n: int

    @property
    def cycle(self) -> tuple[int, ...]:
        return self.sequence[self.preperiod:]

    @property
    def is_full_cycle(self) -> bool:
        return self.preperiod == 0 and self.period == self.p**self.n


@dataclass
class Component:
    cycle: list[int]
    tails: list[int] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.cycle) + len(self.tails)


@dataclass
class CycleDecomposition:
    p: int
    n: int
    components: list[Component]

    @property
    def is_single_full_cycle(self) -> bool:
        return (
            len(self.components) == 1
            and not self.components[0].tails
            and len(self.components[0].cycle) == self.p**self.n
        )


def orbit(f: IntPoly, start: int, p: int, n: int) -> OrbitTrace:
    """Iterate f from ``start`` mod p^n until a value repeats."""
    m = p**n
    x = start % m
    seen: dict[int, int] = {}
    seq = []
    while x not in seen:
        seen[x] = len(seq)
        seq.append(x)
        x = poly_eval_mod(f, x, p, n)
    pre = seen[x]
    return OrbitTrace(start % m, tuple(seq), pre, len(seq) - pre, p, n)


def full_cycle_check(f: IntPoly, p: int, n: int) -> bool:
    """True iff f_n is a single cycle through all p^n residues.

    Walks the orbit of 0: it is a full cycle exactly when the first return
    to 0 happens after p^n steps.
    """
    m = p**n
    x = 0
    for step in range(1, m + 1):
        x = poly_eval_mod(f, x, p, n)
        if x == 0:
            return step == m
    return False


def successor_table(f: IntPoly, p: int, n: int) -> list[int]:
    return [poly_eval_mod(f, x, p, n) for x in range(p**n)]


def minimal_decomposition(f: IntPoly, p: int, n: int) -> CycleDecomposition:
    """Split Z/p^nZ into the weakly connected components of x -> f(x).

    Each component holds exactly one cycle (rotated to start at its smallest
    element) plus the tail points that eventually fall into it.  Components
    are ordered by their smallest cycle element.
    """
    succ = successor_table(f, p, n)
    m = len(succ)
    comp_of = [-1] * m
    on_path = [False] * m
    cycles: list[list[int]] = []
    members: list[list[int]] = []

    for root in range(m):
        if comp_of[root] != -1:
            continue
        path = []
        x = root
        while comp_of[x] == -1 and not on_path[x]:
            on_path[x] = True
            path.append(x)
            x = succ[x]
        if comp_of[x] == -1:
            # closed a new cycle on the current path
            k = path.index(x)
            cyc = path[k:]
            lo = cyc.index(min(cyc))
            cycles.append(cyc[lo:] + cyc[:lo])
            members.append([])
            cid = len(cycles) - 1
        else:
            cid = comp_of[x]
        for y in path:
            on_path[y] = False
            comp_of[y] = cid
            members[cid].append(y)

    comps = []
    for cyc, mem in zip(cycles, members):
        in_cycle = set(cyc)
        comps.append(Component(cyc, sorted(y for y in mem if y not in in_cycle)))
    comps.sort(key=lambda c: c.cycle[0])
    return CycleDecomposition(p, n, comps)


def oracle_minimal(f: IntPoly, p: int) -> bool:
    """Brute-force verdict: full cycle on Z/p^delta Z."""
    return full_cycle_check(f, p, delta(p))


def lift_conditions(f: IntPoly, p: int, n: int, x: int = 0) -> tuple[bool, bool]:
    """The two lifting conditions at a point x, as (displacement, derivative).

    displacement: f^(p^n)(x) - x is not divisible by p^(n+1).
    derivative:   (f^(p^n))'(x) = prod_i f'(f^i(x)) is 1 mod p.
    """
    df = poly_derivative(f)
    steps = p**n
    y = x % p ** (n + 1)
    prod = 1
    for _ in range(steps):
        prod = prod * poly_eval_mod(df, y, p, 1) % p
        y = poly_eval_mod(f, y, p, n + 1)
    return (y - x) % p ** (n + 1) != 0, prod == 1


def lift_check(f: IntPoly, p: int, n: int) -> bool:
    """Whether a level-n full cycle of f lifts to a level-(n+1) full cycle."""
    if not full_cycle_check(f, p, n):
        raise PreconditionViolated(f"f is not a full cycle modulo {p}^{n}")
    moved, slope = lift_conditions(f, p, n, 0)
    return moved and slope
