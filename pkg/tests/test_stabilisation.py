import pytest

from imilnor.image import algebraic_sigma_count, stable_slice
from imilnor.milnor import IcisPresentation, NonIsolatedError, milnor_number_icis
from imilnor.multipoints import MapGerm, Partition, ideal_IkP
from imilnor.poly import sylvester_resultant
from imilnor.stdbasis import local_quotient_dim
from imilnor.stabilisation import (
    StabilisationFamily,
    TriplePointsPresent,
    curve_counts,
    double_point_curve,
    raw_critical_count,
    typed_counts,
)
from conftest import P

F4 = MapGerm(2, 3, ("x",), "z", (P("z^2"), P("z^5 + x^3*z")), "F4")
F4_FAMILY = StabilisationFamily(F4, "s", (P("z^2"), P("z^5 + x*s*z^3 + (x^3 - 5*x*s - s)*z")))
# a second, simpler stabilisation of the same germ
F4_OTHER = StabilisationFamily(F4, "s", (P("z^2"), P("z^5 + x^3*z + s*z")))


def proportional(a, b):
    m, c = next(iter(a.items()))
    return b.terms.get(m) is not None and a * b.terms[m] == b * c


def test_f4_lambda_matches_closed_form():
    lam = double_point_curve(F4_FAMILY).lam
    assert proportional(lam, P("-s - 5*s*x + x^3 + s*x*z^2 + z^4"))
    assert proportional(lam.subs({"s": 0}), P("x^3 + z^4"))


def test_lambda_at_zero_is_base_resultant(catalog):
    for spec in catalog.values():
        F = spec.family()
        if F is None or spec.n != 2:
            continue
        lam0 = double_point_curve(F).lam.subs({"s": 0})
        base = double_point_curve(StabilisationFamily(F.base, "s", F.base.components)).lam
        assert proportional(lam0, base), spec.name


def test_f4_counts():
    assert raw_critical_count(F4_FAMILY) == 9
    tc = typed_counts(F4_FAMILY)
    assert (tc.cross_caps, tc.tacnodes, tc.triple_points, tc.sigma_total) == (3, 3, 0, 6)


def test_raw_count_independent_of_family():
    assert raw_critical_count(F4_FAMILY) == raw_critical_count(F4_OTHER) == 9
    assert not proportional(double_point_curve(F4_FAMILY).lam, double_point_curve(F4_OTHER).lam)


def test_cross_cap_and_immersion(catalog):
    tc = typed_counts(catalog["crosscap"].family())
    assert (tc.cross_caps, tc.tacnodes, tc.triple_points, tc.raw_critical) == (1, 0, 0, 1)
    tc = typed_counts(catalog["immersion"].family())
    assert (tc.cross_caps, tc.tacnodes, tc.triple_points, tc.raw_critical) == (0, 0, 0, 0)


def test_degenerate_cross_cap_projection():
    # for (x, z^2, x*z) the double point curve is x = 0, which the projection x is constant on
    base = MapGerm(2, 3, ("x",), "z", (P("z^2"), P("x*z")))
    F = StabilisationFamily(base, "s", base.components)
    assert proportional(double_point_curve(F).lam, P("x"))
    with pytest.raises(NonIsolatedError):
        raw_critical_count(F)


def test_triple_points_refused(catalog):
    with pytest.raises(TriplePointsPresent) as err:
        typed_counts(StabilisationFamily(catalog["H2"].germ(), "s", catalog["H2"].germ().components))
    assert err.value.triple_points == 1


def test_curve_counts(catalog):
    cc = curve_counts(catalog["E6"].family())
    assert (cc.double_points, cc.fold_count, cc.sigma_total) == (3, 2, 5)
    cc = curve_counts(catalog["cusp"].family())
    assert (cc.double_points, cc.fold_count, cc.sigma_total) == (1, 1, 2)
    for k in (1, 2, 3):
        cc = curve_counts(catalog[f"A{k}"].family())
        assert (cc.double_points, cc.fold_count, cc.sigma_total) == (k, 1, k + 1)


def _mu_or_empty(ideal, dim):
    if local_quotient_dim(ideal).value == 0:
        return 0
    return milnor_number_icis(IcisPresentation(ideal, dim))


def test_raw_count_is_sum_of_double_point_milnor_numbers(catalog):
    for spec in catalog.values():
        F = spec.family()
        if F is None or spec.n != 2:
            continue
        f = spec.germ()
        g = stable_slice(f)[0].g
        mu_f = _mu_or_empty(ideal_IkP(f, 2, Partition((1, 1))), 1)
        mu_g = _mu_or_empty(ideal_IkP(g, 2, Partition((1, 1))), 0)
        assert raw_critical_count(F) == mu_f + mu_g, spec.name


def test_totals_agree_with_algebraic_route(catalog):
    for spec in catalog.values():
        F = spec.family()
        if F is None:
            continue
        sigma = algebraic_sigma_count(spec.germ()).total
        if spec.n == 1:
            assert curve_counts(F).sigma_total == sigma, spec.name
        else:
            assert typed_counts(F).sigma_total == sigma, spec.name


def test_family_validation():
    with pytest.raises(ValueError, match="restrict"):
        StabilisationFamily(F4, "s", (P("z^2 + x"), P("z^5 + x^3*z")))
    with pytest.raises(ValueError, match="clashes"):
        StabilisationFamily(F4, "x", F4.components)
    assert F4_FAMILY.at(0) == F4


def test_resultant_strictness():
    with pytest.raises(ValueError):
        sylvester_resultant(P("1 + x"), P("z2"), "z2")


def test_degenerate_fold_family_resultant_verbatim():
    base = MapGerm(2, 3, ("x",), "z", (P("z^2"), P("x*z")))
    F = StabilisationFamily(base, "s", (P("z^2"), P("x*z + s*z")))
    assert double_point_curve(F).lam == P("x + s")
