import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nlcheck.binary import binary_proportional
from nlcheck.cycles import (
    CycleError,
    Line,
    boundary_vanishes,
    c12_symbol,
    c23_symbol,
    c31_symbol,
    delta_symbol,
    divisor_forms,
    independence_test,
    order_matrix,
    parse_symbol,
    restrict_to_line,
)
from nlcheck.fields import Cyclotomic, Q
from nlcheck.parse import parse_poly
from nlcheck.suite import fermat, random_transversal, tij_member

QQ = Q()


def P(text, field=QQ):
    return parse_poly(text, field)


@pytest.fixture(scope="module")
def surfaces():
    return random_transversal(QQ, 4, random.Random("cycle-tests"), 3)


@pytest.fixture(scope="module")
def t12():
    return tij_member(QQ, 42)


# -- lines and restrictions --------------------------------------------------


def test_line_parametrization():
    line = Line.from_forms(P("z1"), P("z0-2*z3"))
    for s, t in ((QQ(1), QQ(0)), (QQ(0), QQ(1)), (QQ(3), QQ(-5))):
        pt = line.point(s, t)
        assert pt[1].is_zero() and pt[0] == QQ(2) * pt[3]
        assert line.params_of(pt) == (s, t)
    with pytest.raises(CycleError):
        Line.from_forms(P("z1"), P("2*z1"))


def test_restrict_to_coordinate_line():
    line = Line.from_forms(P("z1"), P("z2"))
    g = restrict_to_line(fermat(QQ, 4), line)
    assert g.degree == 4
    assert sum(1 for c in g.coeffs if not c.is_zero()) == 2


def test_divisor_forms_examples():
    F = fermat(QQ, 4)
    div = divisor_forms(F, 1, P("z3"), P("z2"))
    assert div.curve == 1 and div.positive[1].degree == 4
    same = divisor_forms(F, 2, P("z0+z1"), P("z0+z1"))
    assert binary_proportional(same.positive[1], same.negative[1]).factor.is_one()
    with pytest.raises(CycleError):
        divisor_forms(F, 1, P("z1"), P("z2"))
    with pytest.raises(CycleError):
        divisor_forms(P("z1*z0^3+z2*z3^3"), 1, P("z2"), P("z3"))


def test_parse_symbol_round_trip():
    s = parse_symbol(["(z3)/(z2)", "1", "(z0+2*z3)/(z1)"], QQ, "s")
    assert s.components[1] is None
    again = parse_symbol(s.texts(), QQ)
    assert again.texts() == s.texts()
    with pytest.raises(CycleError):
        parse_symbol(["(z3^2)/(z2^2)", "1", "1"], QQ)


# -- boundaries --------------------------------------------------------------


def test_delta_boundary_vanishes(surfaces):
    delta = delta_symbol(QQ)
    assert all(boundary_vanishes(delta, F) for F in surfaces)


def test_c12_boundary(t12, surfaces):
    c12 = c12_symbol(t12.spec.w)
    assert boundary_vanishes(c12, t12.F)
    assert not boundary_vanishes(c12, surfaces[0])


def test_fermat_cyclotomic_symbols():
    K = Cyclotomic(8)
    F = fermat(K, 4)
    w, v, u = (P(t, K) for t in ("z0-zeta(8)*z3", "z0-zeta(8)*z1", "z0-zeta(8)*z2"))
    syms = [delta_symbol(K), c12_symbol(w), c23_symbol(v), c31_symbol(u)]
    assert all(boundary_vanishes(s, F) for s in syms)
    assert independence_test(syms, F)


@settings(max_examples=20)
@given(seed=st.integers(0, 10**6), factors=st.tuples(*[st.integers(-6, 6).filter(bool)] * 3))
def test_boundary_ignores_constant_rescaling(seed, factors):
    F = random_transversal(QQ, 4, random.Random(seed), 1)[0]
    delta = delta_symbol(QQ).scaled([QQ(x) for x in factors])
    assert boundary_vanishes(delta, F)


# -- order matrix ------------------------------------------------------------


def test_delta_order_rows_count_points(surfaces):
    # each component of delta has a divisor of degree 0 made of d zeros and d poles,
    # counted with the degree of each closed point
    d = 4

    def degree(key):
        return 1 if key[0] == "pt" else len(key[2]) - 1

    for F in surfaces:
        M, cols = order_matrix([delta_symbol(QQ)], F)
        row = M[0]
        for i in (1, 2, 3):
            entries = [(row[k], degree(key)) for k, (curve, key) in enumerate(cols) if curve == i]
            assert sum(x * deg for x, deg in entries) == 0
            assert sum(abs(x) * deg for x, deg in entries) == 2 * d


# -- independence ------------------------------------------------------------


def test_independence_examples(t12):
    F = t12.F
    delta = delta_symbol(QQ)
    c12 = c12_symbol(t12.spec.w)
    assert independence_test([delta, c12], F)
    assert not independence_test([delta, delta], F)
    # delta / (2 delta) is the constant 1/2 on every curve; delta / (-delta) is -1
    assert independence_test([delta, delta.scaled([QQ(2)] * 3)], F)
    assert not independence_test([delta, delta.scaled([QQ(-1)] * 3)], F)
    assert independence_test([], F)


@settings(max_examples=10)
@given(st.permutations([0, 1, 2]))
def test_independence_does_not_depend_on_order(order):
    t12 = tij_member(QQ, 42)
    delta = delta_symbol(QQ)
    syms = [delta, c12_symbol(t12.spec.w), delta.scaled([QQ(3)] * 3)]
    assert independence_test([syms[k] for k in order], t12.F) == independence_test(syms, t12.F)
