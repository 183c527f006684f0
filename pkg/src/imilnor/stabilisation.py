"""Critical point counts read off an explicit stabilisation.

The double point curve of ``f_s = (x, h1_s, h2_s)`` is projected to the
source as the zero set of ``lambda_s = Res_{z2}(P_s, Q_s)``, where ``P_s`` and
``Q_s`` are the divided differences of ``h1_s`` and ``h2_s``.  Critical points
of the projection ``x1`` on it are counted by local intersection multiplicity
of the ``s = 0`` system, which is what survives in a small neighbourhood of
the origin.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .image import InconsistencyError, double_point_count, fold_count
from .milnor import NonIsolatedError
from .multipoints import MapGerm, Partition, _divided_difference, ideal_IkP
from .poly import Polynomial, jacobian_maximal_minors, sylvester_resultant
from .stdbasis import IdealPresentation, local_quotient_dim


class TriplePointsPresent(ValueError):
    """Typed split requested for a germ whose stabilisation has triple points."""

    def __init__(self, cross_caps: int, triple_points: int):
        self.cross_caps = cross_caps
        self.triple_points = triple_points
        super().__init__(f"triple points present ({triple_points}); typed split unsupported")


@dataclass(frozen=True)
class StabilisationFamily:
    base: MapGerm
    s_var: str
    components: Tuple[Polynomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        b = self.base
        if len(self.components) != len(b.components):
            raise ValueError(f"stabilisation needs {len(b.components)} components, got {len(self.components)}")
        if self.s_var in b.source_vars:
            raise ValueError(f"parameter {self.s_var!r} clashes with a source variable")
        allowed = set(b.source_vars) | {self.s_var}
        for h, h0 in zip(self.components, b.components):
            extra = set(h.variables) - allowed
            if extra:
                raise ValueError(f"stabilisation component {h} uses unknown variables {sorted(extra)}")
            if h.subs({self.s_var: 0}) != h0:
                raise ValueError(f"stabilisation component {h} does not restrict to {h0} at {self.s_var}=0")

    def at(self, value) -> MapGerm:
        b = self.base
        return MapGerm(b.n, b.p, b.x_vars, b.z_var, tuple(h.subs({self.s_var: value}) for h in self.components), b.name)


@dataclass(frozen=True)
class DoublePointCurve:
    lam: Polynomial
    P: Polynomial
    Q: Polynomial
    variables: Tuple[str, ...]


def _resultant(a: Polynomial, b: Polynomial, v: str) -> Polynomial:
    """Resultant, with the usual conventions when one side is constant in ``v``."""
    da, db = a.degree(v), b.degree(v)
    if da >= 1 and db >= 1:
        return sylvester_resultant(a, b, v)
    if a.is_zero() or b.is_zero():
        # the common zeros project onto V(other side) when it is free of v
        other, dother = (b, db) if a.is_zero() else (a, da)
        return other if dother == 0 else Polynomial()
    if da == 0:
        return a ** max(db, 0)
    return b ** da


def double_point_curve(F: StabilisationFamily) -> DoublePointCurve:
    """``lambda_s`` in the source coordinates ``(x, z)`` and the parameter."""
    b = F.base
    if b.p != b.n + 1 or b.n < 2:
        raise ValueError("double point curves are computed for germs C^n -> C^(n+1) with n >= 2")
    z1, z2 = b.point_vars(2)[-2:]
    h1, h2 = (h.rename({b.z_var: z1}) for h in F.components)
    P = _divided_difference(h1, z1, z2)
    Q = _divided_difference(h2, z1, z2)
    lam = _resultant(P, Q, z2).rename({z1: b.z_var})
    return DoublePointCurve(lam, P, Q, b.source_vars + (F.s_var,))


def critical_system(lam: Polynomial, base: MapGerm) -> IdealPresentation:
    """``lambda = 0`` together with the Jacobian minors of ``(lambda, x1)``."""
    vs = base.source_vars
    minors = jacobian_maximal_minors([lam, Polynomial.var(base.x_vars[0])], vs)
    return IdealPresentation.of([lam] + minors, vs)


def raw_critical_count(F: StabilisationFamily) -> int:
    """Critical points of ``x1`` on the double point curve converging to 0."""
    curve = double_point_curve(F)
    lam0 = curve.lam.subs({F.s_var: 0})
    if lam0.is_zero():
        raise NonIsolatedError("the double point curve of the base germ is identically zero")
    q = local_quotient_dim(critical_system(lam0, F.base))
    if not q.is_finite:
        raise NonIsolatedError("critical points of the projection are not isolated at the origin")
    return q.value


@dataclass(frozen=True)
class TypedCounts:
    cross_caps: int
    tacnodes: int
    triple_points: int
    raw_critical: int

    @property
    def sigma_total(self) -> int:
        return self.cross_caps + self.tacnodes + self.triple_points


def typed_counts(F: StabilisationFamily) -> TypedCounts:
    """Cross caps, tacnodes and triple points of a stabilised surface germ.

    Each cross cap shows up once among the raw critical points and each
    tacnode twice.
    """
    b = F.base
    if b.n != 2:
        raise ValueError("typed counts are defined for surface germs (n = 2)")
    C = local_quotient_dim(ideal_IkP(b, 2, Partition((2,)))).value
    deg3 = local_quotient_dim(ideal_IkP(b, 3, Partition((1, 1, 1)))).value
    if C is None or deg3 is None or deg3 % 6:
        raise InconsistencyError("cross cap or triple point degree is not finite and consistent")
    T = deg3 // 6
    if T:
        raise TriplePointsPresent(C, T)
    raw = raw_critical_count(F)
    if (raw - C) % 2 or raw < C:
        raise InconsistencyError(f"{raw} critical points cannot split into {C} cusps and tacnode pairs")
    return TypedCounts(C, (raw - C) // 2, T, raw)


@dataclass(frozen=True)
class CurveCounts:
    double_points: int
    fold_count: int

    @property
    def sigma_total(self) -> int:
        return self.double_points + self.fold_count


def curve_counts(F: StabilisationFamily, seed: int = 0) -> CurveCounts:
    b = F.base
    if b.n != 1:
        raise ValueError("curve counts are defined for curve germs (n = 1)")
    return CurveCounts(double_point_count(b), fold_count(b, seed))
