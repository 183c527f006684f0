"""Multiple point spaces of corank-1 map germs.

A corank-1 germ ``f: (C^n, 0) -> (C^p, 0)`` is kept in the normal form
``f(x, z) = (x, h_n(x, z), ..., h_p(x, z))``.  Its ``k``-th multiple point
space lives in ``C^(n+k-1)`` with coordinates ``(x, z1, ..., zk)`` and is cut
out by iterated divided differences of the ``h_j``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .poly import Polynomial, PolynomialError
from .stdbasis import IdealPresentation, local_quotient_dim


class DividedDifferenceError(ArithmeticError):
    """A divided difference left a remainder (cannot happen for polynomials)."""


@dataclass(frozen=True)
class MapGerm:
    """Corank-1 germ ``(x, h_n, ..., h_p)`` in ``x_vars + (z_var,)``."""

    n: int
    p: int
    x_vars: Tuple[str, ...]
    z_var: str
    components: Tuple[Polynomial, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "x_vars", tuple(self.x_vars))
        object.__setattr__(self, "components", tuple(self.components))
        if not (self.p > self.n >= 1):
            raise ValueError(f"need p > n >= 1, got n={self.n}, p={self.p}")
        if len(self.x_vars) != self.n - 1:
            raise ValueError(f"need {self.n - 1} unfolding variables, got {len(self.x_vars)}")
        if len(self.components) != self.p - self.n + 1:
            raise ValueError(f"need {self.p - self.n + 1} components, got {len(self.components)}")
        allowed = set(self.x_vars) | {self.z_var}
        if self.z_var in self.x_vars:
            raise ValueError("the corank variable cannot also be an unfolding variable")
        for h in self.components:
            extra = set(h.variables) - allowed
            if extra:
                raise ValueError(f"component {h} uses unknown variables {sorted(extra)}")
            if h.constant_term() != 0:
                raise ValueError(f"component {h} does not vanish at the origin")

    @property
    def source_vars(self) -> Tuple[str, ...]:
        return self.x_vars + (self.z_var,)

    def full_components(self) -> Tuple[Polynomial, ...]:
        return tuple(Polynomial.var(x) for x in self.x_vars) + self.components

    def point_vars(self, k: int) -> Tuple[str, ...]:
        """Coordinates ``(x, z1, ..., zk)`` of the k-th multiple point space."""
        zs = tuple(f"{self.z_var}{i}" for i in range(1, k + 1))
        clash = set(zs) & set(self.x_vars)
        if clash:
            raise ValueError(f"multiple point variables {sorted(clash)} clash with unfolding variables")
        return self.x_vars + zs

    def __str__(self) -> str:
        src = ",".join(self.source_vars)
        comps = ", ".join(str(c) for c in self.full_components())
        return f"({src}) -> ({comps})"


# partitions -----------------------------------------------------------------


@dataclass(frozen=True)
class PartitionStats:
    alpha: Dict[int, int]
    sign: int
    beta: Fraction
    covering_degree: int


@dataclass(frozen=True, order=True)
class Partition:
    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts or any(r < 1 for r in parts):
            raise ValueError("a partition needs at least one positive part")
        object.__setattr__(self, "parts", tuple(sorted(parts, reverse=True)))

    @property
    def k(self) -> int:
        return sum(self.parts)

    @property
    def m(self) -> int:
        return len(self.parts)

    @property
    def alpha(self) -> Dict[int, int]:
        return dict(sorted(Counter(self.parts).items()))

    @property
    def sign(self) -> int:
        return -1 if (self.k - sum(self.alpha.values())) % 2 else 1

    @property
    def covering_degree(self) -> int:
        out = 1
        for i, a in self.alpha.items():
            out *= factorial(a) * i**a
        return out

    @property
    def beta(self) -> Fraction:
        return Fraction(self.sign, self.covering_degree)

    def stats(self) -> PartitionStats:
        return PartitionStats(self.alpha, self.sign, self.beta, self.covering_degree)

    def blocks(self) -> List[Tuple[int, ...]]:
        """1-based z indices grouped by block, in part order."""
        out, start = [], 1
        for r in self.parts:
            out.append(tuple(range(start, start + r)))
            start += r
        return out

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"

    @classmethod
    def parse(cls, text: str) -> "Partition":
        return cls(tuple(int(t) for t in text.strip("() ").split(",") if t.strip()))


def partitions(k: int) -> List[Partition]:
    """All partitions of ``k``, ordered lexicographically by parts.

    >>> [str(P) for P in partitions(3)]
    ['(1,1,1)', '(2,1)', '(3)']
    """
    if k < 1:
        raise ValueError("k must be positive")

    def gen(rest: int, largest: int):
        if rest == 0:
            yield ()
            return
        for r in range(min(rest, largest), 0, -1):
            for tail in gen(rest - r, r):
                yield (r,) + tail

    return sorted(Partition(p) for p in gen(k, k))


# divided differences --------------------------------------------------------


def _divided_difference(h: Polynomial, a: str, b: str) -> Polynomial:
    """``(h - h[a:=b]) / (a - b)`` by exact division."""
    num = h - h.subs({a: Polynomial.var(b)})
    try:
        return num.exact_div(Polynomial.var(a) - Polynomial.var(b))
    except PolynomialError as exc:
        raise DividedDifferenceError(str(exc)) from None


def divided_differences(f: MapGerm, k: int) -> List[Polynomial]:
    """The ``(k-1)(p-n+1)`` generators of ``I_k(f)``, level by level.

    Generator ``Delta_i^(j)`` sits at position ``(i-1)*(p-n+1) + (j-n)``.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    vs = f.point_vars(k)
    zs = vs[len(f.x_vars):]
    out: List[Polynomial] = []
    level = [h.rename({f.z_var: zs[0]}) for h in f.components]
    for i in range(1, k):
        # Delta_i lives in (x, z1, ..., z_{i+1})
        level = [_divided_difference(d, zs[i - 1], zs[i]) for d in level]
        out.extend(level)
    return out


def ideal_Ik(f: MapGerm, k: int) -> IdealPresentation:
    return IdealPresentation.of(divided_differences(f, k), f.point_vars(k))


def partition_generators(f: MapGerm, P: Partition) -> List[Polynomial]:
    """The ``k - m`` linear generators of ``I(P)``."""
    zs = f.point_vars(P.k)[len(f.x_vars):]
    gens = []
    for block in P.blocks():
        for i, j in zip(block, block[1:]):
            gens.append(Polynomial.var(zs[i - 1]) - Polynomial.var(zs[j - 1]))
    return gens


def ideal_IkP(f: MapGerm, k: int, P: Partition) -> IdealPresentation:
    if P.k != k:
        raise ValueError(f"partition {P} is not a partition of {k}")
    return IdealPresentation.of(divided_differences(f, k) + partition_generators(f, P), f.point_vars(k))


def expected_dim(f: MapGerm, k: int) -> int:
    return f.p - k * (f.p - f.n)


def expected_dim_P(f: MapGerm, k: int, P: Partition) -> int:
    return f.p - k * (f.p - f.n + 1) + P.m


# determinacy ----------------------------------------------------------------


@dataclass(frozen=True)
class StratumCheck:
    k: int
    partition: Partition
    expected_dim: int
    status: str  # "empty", "point", "ok", "too-big", "not-isolated"
    local_dim: Optional[int]

    @property
    def passed(self) -> bool:
        return self.status in ("empty", "point", "ok")


@dataclass(frozen=True)
class DeterminacyReport:
    germ: MapGerm
    checks: Tuple[StratumCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[StratumCheck]:
        return [c for c in self.checks if not c.passed]


def _check_stratum(f: MapGerm, k: int, P: Partition, seed: int) -> StratumCheck:
    from .milnor import generic_linear_form

    ideal = ideal_IkP(f, k, P)
    e = expected_dim_P(f, k, P)
    q = local_quotient_dim(ideal)
    if q.value == 0:
        return StratumCheck(k, P, e, "empty", 0)
    if e <= 0:
        status = "point" if q.is_finite else "not-isolated"
        return StratumCheck(k, P, e, status, q.value)
    for attempt in range(3):
        forms = [generic_linear_form(ideal.ambient_vars, seed, 7919 * attempt + i).polynomial for i in range(e)]
        cut = local_quotient_dim(ideal.extend(forms))
        if cut.is_finite:
            return StratumCheck(k, P, e, "ok", cut.value)
    return StratumCheck(k, P, e, "too-big", None)


def determinacy_dimension_check(f: MapGerm, seed: int = 0) -> DeterminacyReport:
    """Check the multiple point dimensions required by finite determinacy.

    Strata with non-positive expected dimension must be empty or the origin
    alone; the others must become zero-dimensional after cutting with as
    many generic hyperplanes as their expected dimension.
    """
    checks = []
    for k in range(2, f.n + 2):
        for P in partitions(k):
            checks.append(_check_stratum(f, k, P, seed))
    return DeterminacyReport(f, tuple(checks))
