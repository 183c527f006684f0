"""Image Milnor numbers and the count of stratified critical points.

For a corank-1 germ ``f: (C^n, 0) -> (C^(n+1), 0)`` the image Milnor number
comes from the multiple point spaces ``D^k(f, P)``:

    mu_I(f) = sum_k (-1)^(n-k+1) sum_{|P|=k} beta(P) (1 + (-1)^dim mu(D^k(f, P)))

and the number of critical points of a generic linear form on the
disentanglement is assembled partition by partition, either from degrees
(zero-dimensional strata) or from Lê-Greuel dimensions (positive-dimensional
strata), each divided by the covering degree of the partition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .milnor import (
    GenericForm,
    IcisPresentation,
    NotICISError,
    agreed_minimum,
    generic_linear_form,
    le_greuel_dimension,
    milnor_number_icis,
)
from .multipoints import (
    MapGerm,
    Partition,
    determinacy_dimension_check,
    expected_dim_P,
    ideal_IkP,
    partitions,
)
from .poly import Polynomial
from .stdbasis import IdealPresentation, local_quotient_dim

SLICE_SEEDS = 3


class InconsistencyError(ArithmeticError):
    """An aggregate that must be a non-negative integer is not."""


class NotFinitelyDeterminedError(ValueError):
    def __init__(self, germ: MapGerm, failures):
        self.germ = germ
        self.failures = failures
        where = ", ".join(f"D^{c.k}{c.partition} ({c.status})" for c in failures)
        super().__init__(f"{germ.name or germ} is not finitely determined (necessary-condition failure at {where})")


def _require_hypersurface_germ(f: MapGerm) -> None:
    if f.p != f.n + 1:
        raise ValueError(f"image Milnor numbers need p = n + 1, got n={f.n}, p={f.p}")


def require_finitely_determined(f: MapGerm, seed: int = 0) -> None:
    report = determinacy_dimension_check(f, seed)
    if not report.passed:
        raise NotFinitelyDeterminedError(f, report.failures)


def _as_integer(total: Fraction, what: str) -> int:
    if total.denominator != 1 or total < 0:
        raise InconsistencyError(f"non-integer total for {what}: {total}")
    return int(total)


# transverse slice -----------------------------------------------------------


@dataclass(frozen=True)
class SliceResult:
    """A germ ``f`` rewritten as an unfolding of its transverse slice ``g``.

    ``unfolded`` is ``f`` after the linear change of unfolding coordinates
    that turns the slicing form into the first coordinate; ``g`` is its
    restriction to that coordinate being 0.  Row ``i`` of ``source_change``
    expresses the old ``x_i`` in the new coordinates.
    """

    g: MapGerm
    form: Optional[GenericForm]
    source_change: Tuple[Tuple[Fraction, ...], ...]
    unfolded: MapGerm


def transverse_slice(f: MapGerm, seed: int = 0, attempt: int = 0) -> SliceResult:
    """Slice ``f`` by a generic hyperplane in the unfolding coordinates."""
    _require_hypersurface_germ(f)
    if f.n < 2:
        raise ValueError("a transverse slice needs n >= 2")
    xs = f.x_vars
    form = generic_linear_form(xs, seed, attempt)
    c = form.coefficients
    a = [ci / c[0] for ci in c]  # scaling does not move the hyperplane
    # x1 = x1' - sum_{j>1} a_j x_j, other coordinates unchanged
    change = [[Fraction(0)] * len(xs) for _ in xs]
    change[0][0] = Fraction(1)
    for j in range(1, len(xs)):
        change[0][j] = -a[j]
        change[j][j] = Fraction(1)
    x1 = Polynomial.var(xs[0])
    for j in range(1, len(xs)):
        x1 = x1 - Polynomial.var(xs[j]) * a[j]
    unfolded = MapGerm(
        f.n, f.p, xs, f.z_var, tuple(h.subs({xs[0]: x1}) for h in f.components), f.name
    )
    g = MapGerm(
        f.n - 1,
        f.p - 1,
        xs[1:],
        f.z_var,
        tuple(h.subs({xs[0]: 0}) for h in unfolded.components),
        f"{f.name}|slice" if f.name else "",
    )
    return SliceResult(g, form, tuple(tuple(r) for r in change), unfolded)


# Marar's formula ------------------------------------------------------------


@dataclass(frozen=True)
class MararTerm:
    k: int
    partition: Partition
    dim: int
    status: str  # "excluded", "empty" or "icis"
    mu: Optional[int]
    deg: Optional[int]
    beta: Fraction
    contribution: Fraction


@dataclass(frozen=True)
class MararBreakdown:
    germ: MapGerm
    terms: Tuple[MararTerm, ...]
    total: int


def image_milnor_number(f: MapGerm, seed: int = 0, check: bool = True) -> MararBreakdown:
    """Image Milnor number of ``f`` with its partition-by-partition breakdown.

    >>> from imilnor.parse import parse_polynomial as P
    >>> E6 = MapGerm(1, 2, (), "z", (P("z^3"), P("z^4")))
    >>> image_milnor_number(E6).total
    3
    """
    _require_hypersurface_germ(f)
    if check:
        require_finitely_determined(f, seed)
    n = f.n
    terms = []
    for k in range(2, n + 2):
        sign_k = -1 if (n - k + 1) % 2 else 1
        for P in partitions(k):
            e = expected_dim_P(f, k, P)
            if e < 0:
                terms.append(MararTerm(k, P, e, "excluded", None, None, P.beta, Fraction(0)))
                continue
            ideal = ideal_IkP(f, k, P)
            q = local_quotient_dim(ideal)
            if q.value == 0:
                terms.append(MararTerm(k, P, e, "empty", None, 0, P.beta, Fraction(0)))
                continue
            if e == 0:
                if not q.is_finite:
                    raise NotICISError(f"D^{k}{P} is not zero-dimensional")
                deg, mu = q.value, q.value - 1
            else:
                deg, mu = None, milnor_number_icis(IcisPresentation(ideal, e), seed)
            chi = 1 + (-1) ** e * mu
            terms.append(MararTerm(k, P, e, "icis", mu, deg, P.beta, sign_k * P.beta * chi))
    total = sum((t.contribution for t in terms), Fraction(0))
    return MararBreakdown(f, tuple(terms), _as_integer(total, f"image Milnor number of {f.name or f}"))


def stable_slice(f: MapGerm, seed: int = 0) -> Tuple[SliceResult, int]:
    """Transverse slice with the smallest image Milnor number among agreeing draws.

    A non-generic slicing hyperplane can only make the slice more degenerate,
    so the minimum over agreeing draws is taken as the generic value.
    """
    results: Dict[int, Tuple[SliceResult, int]] = {}

    def evaluate(form: GenericForm) -> Optional[int]:
        sl = transverse_slice(f, seed, form.attempt)
        try:
            mu = image_milnor_number(sl.g, seed).total
        except (NotFinitelyDeterminedError, NotICISError):
            return None
        results[form.attempt] = (sl, mu)
        return mu

    if f.n == 2:
        # one unfolding coordinate: every slicing form cuts the same hyperplane
        sl = transverse_slice(f, seed)
        return sl, image_milnor_number(sl.g, seed).total
    mu, form = agreed_minimum(evaluate, f.x_vars, seed)
    return results[form.attempt]


def slice_mu_values(f: MapGerm, seeds: Sequence[int]) -> List[int]:
    """Image Milnor numbers of slices drawn from several seeds."""
    return [image_milnor_number(transverse_slice(f, s).g, s).total for s in seeds]


# curves -----------------------------------------------------------------------


def multiplicity_m0(f: MapGerm) -> int:
    """Multiplicity of a parametrized plane curve: the lowest order of its components."""
    if f.n != 1:
        raise ValueError("multiplicity_m0 is defined for curve germs (n = 1)")
    orders = [h.order() for h in f.components if not h.is_zero()]
    if not orders:
        raise ValueError("the zero germ has no multiplicity")
    return min(orders)


def fold_count(f: MapGerm, seed: int = 0) -> int:
    """Critical points of ``p o f`` at the origin for a generic linear ``p``."""
    z = f.z_var
    targets = [f"y{i}" for i in range(1, len(f.components) + 1)]

    def evaluate(form: GenericForm) -> Optional[int]:
        composite = sum((h * c for h, c in zip(f.components, form.coefficients)), Polynomial())
        q = local_quotient_dim(IdealPresentation.of([composite.diff(z)], [z]))
        return q.value

    value, _ = agreed_minimum(evaluate, targets, seed)
    return value


# critical point count ---------------------------------------------------------


@dataclass(frozen=True)
class SigmaTerm:
    k: int
    partition: Optional[Partition]
    dim: int
    kind: str  # "points", "critical", "fold", "excluded", "empty"
    value: int
    covering_degree: int
    contribution: Fraction


@dataclass(frozen=True)
class SigmaCount:
    germ: MapGerm
    terms: Tuple[SigmaTerm, ...]
    total: int
    slice: Optional[SliceResult] = None

    def contribution(self, k: int, parts: Sequence[int]) -> Fraction:
        P = Partition(tuple(parts))
        return sum((t.contribution for t in self.terms if t.k == k and t.partition == P), Fraction(0))


def algebraic_sigma_count(f: MapGerm, seed: int = 0, check: bool = True) -> SigmaCount:
    """Number of critical points of a generic linear form on the disentanglement.

    Zero-dimensional strata contribute ``deg / covering degree``; positive
    dimensional ones contribute the Lê-Greuel dimension for the projection
    to the first unfolding coordinate, divided by the covering degree.  For
    curves the smooth stratum adds ``mu(p o f) = m0 - 1`` fold points.
    """
    _require_hypersurface_germ(f)
    if check:
        require_finitely_determined(f, seed)
    terms: List[SigmaTerm] = []
    sl = None
    if f.n == 1:
        target = f
    else:
        sl, _ = stable_slice(f, seed)
        target = sl.unfolded
    for k in range(2, f.n + 2):
        for P in partitions(k):
            e = expected_dim_P(target, k, P)
            cov = P.covering_degree
            if e < 0:
                terms.append(SigmaTerm(k, P, e, "excluded", 0, cov, Fraction(0)))
                continue
            ideal = ideal_IkP(target, k, P)
            q = local_quotient_dim(ideal)
            if q.value == 0:
                terms.append(SigmaTerm(k, P, e, "empty", 0, cov, Fraction(0)))
                continue
            if e == 0:
                if not q.is_finite:
                    raise NotICISError(f"D^{k}{P} is not zero-dimensional")
                terms.append(SigmaTerm(k, P, e, "points", q.value, cov, Fraction(q.value, cov)))
            else:
                proj = Polynomial.var(target.x_vars[0])
                crit = le_greuel_dimension(ideal, proj)
                if not crit.is_finite:
                    raise NotICISError(f"projection is not a Morse function on D^{k}{P}")
                terms.append(SigmaTerm(k, P, e, "critical", crit.value, cov, Fraction(crit.value, cov)))
    if f.n == 1:
        folds = fold_count(f, seed)
        terms.append(SigmaTerm(1, Partition((1,)), 1, "fold", folds, 1, Fraction(folds)))
    total = sum((t.contribution for t in terms), Fraction(0))
    return SigmaCount(f, tuple(terms), _as_integer(total, f"critical point count of {f.name or f}"), sl)


def double_point_count(f: MapGerm) -> int:
    """Transverse double points of a stabilised curve: ``deg D^2(f) / 2``."""
    if f.n != 1:
        raise ValueError("double_point_count is defined for curve germs (n = 1)")
    q = local_quotient_dim(ideal_IkP(f, 2, Partition((1, 1))))
    if not q.is_finite or q.value % 2:
        raise InconsistencyError(f"double point space of {f.name or f} has degree {q.value}")
    return q.value // 2


@dataclass(frozen=True)
class TypeCounts:
    cross_caps: int
    tacnodes: int
    triple_points: int


def algebraic_type_counts(f: MapGerm, sigma_total: int) -> TypeCounts:
    """Cross caps, tacnodes and triple points of a surface germ, from degrees."""
    if f.n != 2:
        raise ValueError("stable type counts are defined for n = 2")
    C = local_quotient_dim(ideal_IkP(f, 2, Partition((2,)))).value
    deg3 = local_quotient_dim(ideal_IkP(f, 3, Partition((1, 1, 1)))).value
    if C is None or deg3 is None or deg3 % 6:
        raise InconsistencyError("cross cap or triple point degree is not consistent")
    T = deg3 // 6
    return TypeCounts(C, sigma_total - C - T, T)


# verification -------------------------------------------------------------------


@dataclass
class VerificationReport:
    germ: MapGerm
    lhs: int
    lhs_parts: Dict[str, int]
    rhs_algebraic: int
    rhs_numeric: Optional[int] = None
    type_counts: Optional[TypeCounts] = None
    marar: Optional[MararBreakdown] = None
    sigma: Optional[SigmaCount] = None
    slice: Optional[SliceResult] = None
    numeric_detail: Dict[str, int] = field(default_factory=dict)

    @property
    def algebraic_pass(self) -> bool:
        return self.lhs == self.rhs_algebraic

    @property
    def numeric_pass(self) -> Optional[bool]:
        return None if self.rhs_numeric is None else self.lhs == self.rhs_numeric

    @property
    def passed(self) -> bool:
        return self.algebraic_pass and self.numeric_pass is not False

    @property
    def formula(self) -> str:
        if self.germ.n == 1:
            return "mu_I(f) + m0(f) - 1 = #Sigma"
        return "mu_I(f) + mu_I(g) = #Sigma"


def verify_le_greuel(f: MapGerm, seed: int = 0, family=None) -> VerificationReport:
    """Check ``mu_I(f) + mu_I(g) = #Sigma`` (or its curve version) for ``f``.

    The right-hand side always comes from :func:`algebraic_sigma_count`;
    when an explicit stabilisation ``family`` is given, the stabilisation
    route supplies a second, independent value.
    """
    _require_hypersurface_germ(f)
    require_finitely_determined(f, seed)
    marar = image_milnor_number(f, seed, check=False)
    sigma = algebraic_sigma_count(f, seed, check=False)
    if f.n == 1:
        m0 = multiplicity_m0(f)
        parts = {"mu_image": marar.total, "m0": m0}
        lhs = marar.total + m0 - 1
        sl = None
    else:
        sl, mu_g = stable_slice(f, seed)
        parts = {"mu_image": marar.total, "mu_slice": mu_g}
        lhs = marar.total + mu_g
    report = VerificationReport(f, lhs, parts, sigma.total, marar=marar, sigma=sigma, slice=sl)
    if f.n == 2:
        report.type_counts = algebraic_type_counts(f, sigma.total)
    if family is not None:
        from . import stabilisation

        if f.n == 1:
            cc = stabilisation.curve_counts(family, seed)
            report.rhs_numeric = cc.sigma_total
            report.numeric_detail = {"double_points": cc.double_points, "folds": cc.fold_count}
        elif f.n == 2:
            tc = stabilisation.typed_counts(family)
            report.rhs_numeric = tc.sigma_total
            report.numeric_detail = {
                "raw_critical": tc.raw_critical,
                "cross_caps": tc.cross_caps,
                "tacnodes": tc.tacnodes,
                "triple_points": tc.triple_points,
            }
    return report
