import itertools
import random
from fractions import Fraction
from math import factorial

import pytest

from imilnor.multipoints import (
    MapGerm,
    Partition,
    _divided_difference,
    determinacy_dimension_check,
    divided_differences,
    expected_dim,
    expected_dim_P,
    ideal_Ik,
    ideal_IkP,
    partition_generators,
    partitions,
)
from imilnor.poly import Polynomial
from imilnor.stdbasis import LOCAL, normal_form, standard_basis
from conftest import P


def germ(n, p, comps, xs=None):
    xs = xs if xs is not None else (("x",) if n == 2 else tuple(f"x{i}" for i in range(1, n)))
    return MapGerm(n, p, xs, "z", tuple(P(c) for c in comps))


CUSP = germ(1, 2, ["z^2", "z^3"])
E6 = germ(1, 2, ["z^3", "z^4"])
F4 = germ(2, 3, ["z^2", "z^5 + x^3*z"])


def random_germs(count=20, seed=2024):
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = 1 + i % 2
        xs = ("x",) if n == 2 else ()
        comps = []
        for _ in range(2):
            h = Polynomial()
            for _ in range(rng.randint(1, 4)):
                exps = {"z": rng.randint(1, 6)}
                if xs:
                    exps["x"] = rng.randint(0, 3)
                h = h + Polynomial.monomial(exps, rng.randint(-5, 5) or 1)
            comps.append(h)
        out.append(MapGerm(n, n + 1, xs, "z", tuple(comps), f"random{i}"))
    return out


def all_germs(catalog):
    return [s.germ() for s in catalog.values()] + random_germs()


def test_cusp_divided_differences():
    assert divided_differences(CUSP, 2) == [P("z1+z2"), P("z1^2+z1*z2+z2^2")]


def test_f4_divided_differences():
    d = divided_differences(F4, 2)
    assert d == [P("z1+z2"), P("z1^4+z1^3*z2+z1^2*z2^2+z1*z2^3+z2^4+x^3")]
    d3 = divided_differences(F4, 3)
    assert d3[2] == Polynomial.const(1)


def test_partition_ideals():
    I = ideal_IkP(F4, 2, Partition((2,)))
    assert set(I.generators) == {P("z1+z2"), P("z1^4+z1^3*z2+z1^2*z2^2+z1*z2^3+z2^4+x^3"), P("z1-z2")}
    assert ideal_IkP(CUSP, 2, Partition((1, 1))) == ideal_Ik(CUSP, 2)
    assert Polynomial.const(1) in ideal_IkP(F4, 3, Partition((1, 1, 1))).generators


def test_expected_dims():
    assert expected_dim_P(F4, 2, Partition((1, 1))) == 1
    assert expected_dim_P(F4, 2, Partition((2,))) == 0
    assert expected_dim_P(E6, 2, Partition((2,))) == -1
    assert expected_dim(F4, 2) == 1


def test_partition_stats():
    assert [(str(Q), Q.beta, Q.covering_degree) for Q in partitions(2)] == [
        ("(1,1)", Fraction(1, 2), 2),
        ("(2)", Fraction(-1, 2), 2),
    ]
    assert [Q.beta for Q in partitions(3)] == [Fraction(1, 6), Fraction(-1, 2), Fraction(1, 3)]
    (one,) = partitions(1)
    assert (one.beta, one.covering_degree) == (1, 1)
    assert Partition.parse("1,2") == Partition((2, 1))
    assert Partition((2, 1, 1)).blocks() == [(1, 2), (3,), (4,)]


@pytest.mark.parametrize("k", range(1, 9))
def test_partition_counts_and_stats_arithmetic(k):
    parts = partitions(k)
    # Euler's pentagonal recurrence gives the partition numbers independently
    p = [1]
    for m in range(1, k + 1):
        total, j = 0, 1
        while True:
            for g in (j * (3 * j - 1) // 2, j * (3 * j + 1) // 2):
                if g <= m:
                    total += (-1) ** (j + 1) * p[m - g]
            if j * (3 * j - 1) // 2 > m:
                break
            j += 1
        p.append(total)
    assert len(parts) == p[k]
    assert sum(abs(Q.beta) * Q.covering_degree for Q in parts) == p[k]
    # class equation of S_k: conjugacy class sizes k!/cov sum to k!
    assert sum(Fraction(factorial(k), Q.covering_degree) for Q in parts) == factorial(k)


@pytest.mark.parametrize("k", range(2, 9))
def test_sign_identity(k):
    for n in range(1, 6):
        for Q in partitions(k):
            # with p = n + 1 the partition stratum has dimension (n + 1) - 2k + m
            e = (n + 1) - 2 * k + Q.m
            assert (-1) ** (n - k + 1) * Q.sign * (-1) ** e == 1


def test_reconstruction_identity(catalog):
    for f in all_germs(catalog):
        d = divided_differences(f, 2)
        z1, z2 = Polynomial.var("z1"), Polynomial.var("z2")
        for h, d1 in zip(f.components, d):
            lhs = h.rename({"z": "z1"}) - h.rename({"z": "z2"})
            assert lhs == (z1 - z2) * d1


def test_recursion_identity(catalog):
    for f in all_germs(catalog):
        k = 4
        d = divided_differences(f, k)
        c = len(f.components)
        for i in range(1, k - 1):
            a, b = f"z{i}", f"z{i + 1}"
            nxt = f"z{i + 2}"
            for j in range(c):
                cur = d[(i - 1) * c + j]
                later = d[i * c + j]
                # cur lives in z1..z_{i+1}; swap its last point for the next one
                lhs = cur - cur.subs({b: Polynomial.var(nxt)})
                assert lhs == (Polynomial.var(b) - Polynomial.var(nxt)) * later
                assert later == _divided_difference(cur, b, nxt)


def test_sk_stability(catalog):
    for f in [s.germ() for s in catalog.values()]:
        for k in (2, 3):
            I = ideal_Ik(f, k)
            vs = I.ambient_vars
            G = standard_basis(I, LOCAL)
            zs = [f"z{i}" for i in range(1, k + 1)]
            for a, b in itertools.combinations(zs, 2):
                swap = {a: Polynomial.var(b), b: Polynomial.var(a)}
                for g in I.generators:
                    assert normal_form(g.subs(swap), G, LOCAL, vs).is_zero(), (f, k, a, b, g)


def test_determinacy_examples():
    assert determinacy_dimension_check(E6).passed
    report = determinacy_dimension_check(F4)
    assert report.passed
    statuses = {(c.k, c.partition.parts): c.status for c in report.checks}
    assert statuses[(2, (1, 1))] == "ok"
    assert statuses[(2, (2,))] == "point"
    assert statuses[(3, (1, 1, 1))] == "empty"
    bad = germ(2, 3, ["z^2", "0"])
    failed = determinacy_dimension_check(bad)
    assert not failed.passed
    assert any(c.k == 2 and c.partition.parts == (1, 1) for c in failed.failures)


def test_map_germ_validation():
    with pytest.raises(ValueError):
        germ(1, 2, ["z^2"])
    with pytest.raises(ValueError):
        germ(1, 2, ["z^2", "1 + z"])
    clash = MapGerm(2, 3, ("z2",), "z", (P("z^2"), P("z^3")))
    with pytest.raises(ValueError, match="clash"):
        clash.point_vars(2)
    assert str(E6) == "(z) -> (z^3, z^4)"
    assert partition_generators(F4, Partition((3,))) == [P("z1-z2"), P("z2-z3")]
