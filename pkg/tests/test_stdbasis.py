import random

import pytest
from hypothesis import given, settings, strategies as st

from imilnor.poly import Polynomial
from imilnor.stdbasis import (
    GLOBAL,
    LOCAL,
    IdealPresentation,
    ResourceLimitError,
    contains_unit_locally,
    global_quotient_dim,
    is_zero_dim_at_origin,
    leading_monomials,
    limits,
    local_quotient_dim,
    normal_form,
    standard_basis,
)
from conftest import P


def ideal(*gens, vars=None):
    return IdealPresentation.of([P(g) for g in gens], vars)


def test_cusp_double_point_basis():
    I = ideal("z1+z2", "z1^2+z1*z2+z2^2")
    lms = leading_monomials(I, LOCAL)
    assert sorted(map(str, lms)) in (["z1", "z2^2"], ["z1^2", "z2"])
    assert local_quotient_dim(I).value == 2


def test_principal_ideal():
    assert standard_basis(ideal("x"), LOCAL) == [P("x")]


def test_f4_critical_system_leading_terms():
    I = ideal("x^3+z^4", "4*z^3", vars=["x", "z"])
    assert sorted(map(str, leading_monomials(I, LOCAL))) == ["x^3", "z^3"]
    assert local_quotient_dim(ideal("x^3+z^4", "z^3")).value == 9


def test_f4_cross_cap_scheme():
    I = ideal("z1-z2", "z1+z2", "z1^4+z1^3*z2+z1^2*z2^2+z1*z2^3+z2^4+x^3", vars=["x", "z1", "z2"])
    assert local_quotient_dim(I).value == 3


def test_global_examples():
    assert global_quotient_dim(ideal("x^2-1")).value == 2
    assert global_quotient_dim(ideal("z1^2+z1*z2+z2^2", "z1^3+z1^2*z2+z1*z2^2+z2^3")).value == 6
    assert global_quotient_dim(ideal("x", "z")).value == 1


def test_local_sees_only_the_origin():
    # x^2 - x vanishes at 0 and 1; only the origin counts locally
    assert local_quotient_dim(ideal("x^2-x")).value == 1
    assert global_quotient_dim(ideal("x^2-x")).value == 2
    assert local_quotient_dim(ideal("x^2-1")).value == 0
    assert contains_unit_locally(ideal("1+x"))


def test_infinite_dimension():
    I = ideal("x*z", vars=["x", "z"])
    assert local_quotient_dim(I).value is None
    assert not is_zero_dim_at_origin(I)
    assert is_zero_dim_at_origin(ideal("x^2", "z^3"))


def test_staircase_monomials():
    q = local_quotient_dim(ideal("x^2", "z^3"))
    assert sorted(map(str, q.standard_monomials())) == sorted(["1", "x", "z", "x*z", "z^2", "x*z^2"])


def test_resource_limit():
    I = ideal("x^5+z^7+x*z^3", "x^4*z+z^6", "x^3+z^3+x*z")
    with pytest.raises(ResourceLimitError):
        with limits(1):
            local_quotient_dim(I)


@st.composite
def zero_dim_ideals(draw):
    """Two generators in x, z with pure powers plus perturbations: always finite locally."""
    a = draw(st.integers(2, 4))
    b = draw(st.integers(2, 4))
    rng = random.Random(draw(st.integers(0, 10**6)))
    x, z = Polynomial.var("x"), Polynomial.var("z")

    def noise():
        out = Polynomial()
        for _ in range(2):
            i, j = rng.randint(0, 3), rng.randint(0, 3)
            if i + j >= 2:
                out = out + Polynomial.monomial({"x": i, "z": j}, rng.randint(-3, 3))
        return out

    return IdealPresentation.of([x**a + noise(), z**b + noise()], ["x", "z"])


@settings(max_examples=25, deadline=None)
@given(zero_dim_ideals(), st.sampled_from([LOCAL, GLOBAL]))
def test_normal_form_idempotent_and_generators_reduce(I, kind):
    G = standard_basis(I, kind)
    vs = I.ambient_vars
    for g in I.generators:
        assert normal_form(g, G, kind, vs).is_zero()
    f = P("x^3*z + 2*x*z^2 - z + 7")
    nf = normal_form(f, G, kind, vs)
    assert normal_form(nf, G, kind, vs) == nf


@settings(max_examples=25, deadline=None)
@given(zero_dim_ideals())
def test_local_at_most_global(I):
    loc = local_quotient_dim(I).value
    glo = global_quotient_dim(I).value
    if loc is not None and glo is not None:
        assert loc <= glo


def _priorities(vs, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < 3:
        perm = list(vs)
        rng.shuffle(perm)
        if perm not in out:
            out.append(perm)
    return out


@pytest.mark.parametrize(
    "gens",
    [
        ["z1+z2", "z1^4+z1^3*z2+z1^2*z2^2+z1*z2^3+z2^4+x^3", "x*z1 + z2^2"],
        ["x^3+z^4", "z^3", "y^2 - x*z"],
        ["x^2+y^2+z^3", "x*y - z^2", "x + y^3 + z*y"],
    ],
)
def test_local_dim_invariant_under_variable_priority(gens):
    I = ideal(*gens)
    dims = {local_quotient_dim(I, perm).value for perm in _priorities(I.ambient_vars, 7)}
    assert len(dims) == 1


@pytest.mark.parametrize("degs", [(2, 3), (3, 3), (2, 2, 2), (1, 2, 3)])
def test_bezout_for_homogeneous_complete_intersections(degs):
    vs = ["x", "y", "z"][: len(degs)]
    rng = random.Random(sum(degs))
    gens = []
    for i, d in enumerate(degs):
        # a pure power keeps the intersection at the origin only
        g = Polynomial.var(vs[i]) ** d
        for j, v in enumerate(vs):
            if j > i:
                g = g + Polynomial.var(v) ** d * rng.randint(1, 5)
        gens.append(g)
    I = IdealPresentation.of(gens, vs)
    expected = 1
    for d in degs:
        expected *= d
    assert local_quotient_dim(I).value == expected
    assert global_quotient_dim(I).value == expected
