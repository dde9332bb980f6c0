from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import FIELDS, hpolys, scalars
from nlcheck.binary import BinaryForm, UnsupportedField, binary_factor, binary_proportional
from nlcheck.fields import Cyclotomic, FieldMismatch, NotRepresentable, PrimeField, Q, parse_field, root_of_unity_test
from nlcheck.parse import ParseError, format_poly, parse_poly
from nlcheck.poly import (
    HPoly,
    SingularMatrix,
    monomials,
    multiply,
    partial,
    restrict_line,
    substitute_linear,
    var,
)

QQ = Q()
K8 = Cyclotomic(8)


# -- fields ------------------------------------------------------------------


def test_field_tags_round_trip():
    for tag in ("q", "zeta:8", "zeta:5", "fp:65537"):
        assert parse_field(tag).tag == tag
    with pytest.raises(ValueError):
        parse_field("fp:65536")


def test_rational_payload_in_lowest_terms():
    x = QQ(Fraction(6, -4))
    assert x.to_fraction() == Fraction(-3, 2)


def test_prime_field_payload_range():
    F = PrimeField(7)
    assert F(-1).val == 6
    assert (F(3) * F(5)).val == 1


def test_cyclotomic_reduction():
    z = K8.zeta()
    assert z**4 == K8(-1)
    assert (z**8).is_one()
    assert K8.zeta(3) == z**3


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatch):
        K8.zeta() + Cyclotomic(5).zeta()


@pytest.mark.parametrize(
    "c, expected",
    [(QQ(-1), 2), (QQ(1), 1), (QQ(Fraction(1, 2)), None), (K8.zeta(3), 8), (K8.zeta(2), 4), (K8(2), None)],
)
def test_root_of_unity_examples(c, expected):
    assert root_of_unity_test(c) == expected


def test_root_of_unity_zero_rejected():
    with pytest.raises(ValueError):
        root_of_unity_test(QQ(0))


@given(st.integers(0, 23), st.booleans())
def test_root_of_unity_order_is_minimal(k, negate):
    K = Cyclotomic(12)
    c = K.zeta(k)
    if negate:
        c = -c
    order = root_of_unity_test(c)
    assert order is not None
    assert (c**order).is_one()
    assert all(not (c**m).is_one() for m in range(1, order))


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: f.tag)
@given(data=st.data())
def test_field_axioms(field, data):
    a, b, c = (data.draw(scalars(field)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if not a.is_zero():
        assert (a * a.inverse()).is_one()


# -- polynomials -------------------------------------------------------------


def test_parse_examples():
    F = parse_poly("z0^4+z1^4+z2^4+z3^4", QQ)
    assert F.degree == 4 and len(F.terms) == 4
    Z = parse_poly("0", QQ, 3)
    assert Z.is_zero() and Z.degree == 3
    G = parse_poly("zeta(8)*z0*z1^2 - 1/2*z3^3", K8)
    assert G.degree == 3 and len(G.terms) == 2


@pytest.mark.parametrize(
    "text, field",
    [("z0^2+z1", QQ), ("z0*zeta(8)", QQ), ("z0 +* z1", QQ), ("zeta(5)*z0", K8), ("z4", QQ)],
)
def test_parse_errors(text, field):
    with pytest.raises((ParseError, NotRepresentable)):
        parse_poly(text, field)


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as exc:
        parse_poly("z0 + + z1", QQ)
    assert exc.value.pos == 5


def test_parse_degree_mismatch():
    with pytest.raises(ParseError):
        parse_poly("z0^2", QQ, 3)


def test_multiply_examples():
    z0, z1, z2, z3 = (var(i, QQ) for i in range(4))
    assert multiply(z0 + z1, z0 - z1) == z0**2 - z1**2
    zero = HPoly.zero(QQ, 2)
    prod = multiply(z0**3, zero)
    assert prod.is_zero() and prod.degree == 5
    assert multiply(z1**2 - z2 * z3, z1**2 + z2 * z3) == parse_poly("z1^4-z2^2*z3^2", QQ)


def test_partial_examples():
    assert partial(parse_poly("z0^4+z1^4", QQ), 0) == parse_poly("4*z0^3", QQ)
    assert partial(parse_poly("z2*z3", QQ), 0).is_zero()
    assert partial(HPoly.constant(QQ, 5), 2).is_zero()


def test_euler_identity_example():
    F = parse_poly("z0^2*z1+z3^3", QQ)
    total = HPoly.zero(QQ, 3)
    for i in range(4):
        total = total + multiply(var(i, QQ), partial(F, i))
    assert total == F.scale(QQ(3))


def test_restrict_line_examples():
    fermat = parse_poly("z0^4+z1^4+z2^4+z3^4", QQ)
    assert restrict_line(fermat, 1, 2).coeffs == tuple(QQ(x) for x in (1, 0, 0, 0, 1))
    A = parse_poly("z0^3+z1^3+z2^3+z3^3+z0*z3^2", QQ)
    F = multiply(var(0, QQ), A) + parse_poly("z1^4-z2^2*z3^2", QQ)
    # independent oracle: keep only terms free of z1 and z2
    kept = HPoly(QQ, 4, {m: c for m, c in F.terms.items() if m[1] == 0 and m[2] == 0})
    line = restrict_line(F, 1, 2)
    assert line.coeffs == tuple(kept.coeff((4 - k, 0, 0, k)) for k in range(5))
    assert restrict_line(HPoly.zero(QQ, 3), 1, 2).is_zero()


def test_substitute_linear_examples():
    I = [[QQ(int(i == j)) for j in range(4)] for i in range(4)]
    F = parse_poly("z0^2*z1+z2*z3^2", QQ)
    assert substitute_linear(F, I) == F
    P = [row[:] for row in I]
    P[0], P[1] = I[1], I[0]
    assert substitute_linear(parse_poly("z0^2*z1", QQ), P) == parse_poly("z0*z1^2", QQ)
    S = [[QQ(0)] * 4 for _ in range(4)]
    with pytest.raises(SingularMatrix):
        substitute_linear(F, S)


def test_substitute_sends_w_to_z0():
    # z0 -> z0 - z3 turns w = z0 + z3 into z0; compare with direct substitution
    T = [[QQ(int(i == j)) for j in range(4)] for i in range(4)]
    T[0][3] = QQ(-1)
    w = parse_poly("z0+z3", QQ)
    assert substitute_linear(w, T) == var(0, QQ)
    F = parse_poly("z0^3+z0*z1*z3-z3^3", QQ)
    z0, z1, z3 = var(0, QQ), var(1, QQ), var(3, QQ)
    u = z0 - z3
    direct = u**3 + multiply(multiply(u, z1), z3) - z3**3
    assert substitute_linear(F, T) == direct


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: f.tag)
@given(data=st.data())
def test_ring_axioms(field, data):
    f, g, h = data.draw(hpolys(field, 2)), data.draw(hpolys(field, 2)), data.draw(hpolys(field, 1))
    assert multiply(multiply(f, g), h) == multiply(f, multiply(g, h))
    assert multiply(f + g, h) == multiply(f, h) + multiply(g, h)
    assert multiply(f, g) == multiply(g, f)


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: f.tag)
@given(data=st.data(), degree=st.integers(0, 5))
def test_euler_identity(field, data, degree):
    f = data.draw(hpolys(field, degree))
    parts = [multiply(var(i, field), partial(f, i)) for i in range(4)]
    if degree == 0:
        # derivatives of constants are the degree-0 zero, so z_i * df/dz_i is zero in degree 1
        assert all(p.is_zero() for p in parts)
        return
    total = HPoly.zero(field, degree)
    for p in parts:
        total = total + p
    assert total == f.scale(field(degree))


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: f.tag)
@given(data=st.data(), degree=st.integers(0, 4))
def test_parse_print_round_trip(field, data, degree):
    f = data.draw(hpolys(field, degree))
    text = format_poly(f)
    g = parse_poly(text, field, degree)
    assert g == f
    assert format_poly(g) == text


@given(data=st.data(), i=st.integers(1, 3), j=st.integers(1, 3))
def test_restrict_line_multiplicative(data, i, j):
    if i == j:
        return
    f, g = data.draw(hpolys(QQ, 2)), data.draw(hpolys(QQ, 3))
    assert restrict_line(multiply(f, g), i, j) == restrict_line(f, i, j) * restrict_line(g, i, j)


# -- binary forms ------------------------------------------------------------


def _bf(field, coeffs):
    return BinaryForm(field, (0, 3), tuple(field(c) for c in coeffs))


def test_binary_proportional_examples():
    assert binary_proportional(_bf(QQ, (2, 0, 0, 2)), _bf(QQ, (1, 0, 0, 1))).factor == QQ(2)
    assert binary_proportional(_bf(QQ, (1, 0, 0, 0)), _bf(QQ, (0, 0, 0, 1))) is None
    fermat = parse_poly("z0^4+z1^4+z2^4+z3^4", QQ)
    D = restrict_line(partial(fermat, 0), 1, 2)
    assert binary_proportional(_bf(QQ, (4, 0, 0, 0)), D).factor == QQ(1)
    both = binary_proportional(_bf(QQ, (0, 0)), _bf(QQ, (0, 0)))
    assert both.factor.is_zero() and both.both_zero


def _expand(content, factors):
    out = None
    for g, mult in factors:
        for _ in range(mult):
            out = g if out is None else out * g
    return out.scale(content)


def test_binary_factor_examples():
    f = _bf(QQ, (1, 0, 0, 0, 1))
    content, facs = binary_factor(f)
    assert content == QQ(1) and [(g.degree, m) for g, m in facs] == [(4, 1)]
    content, facs = binary_factor(_bf(K8, (1, 0, 0, 0, 1)))
    assert sorted(g.degree for g, _ in facs) == [1, 1, 1, 1]
    assert _expand(content, facs) == _bf(K8, (1, 0, 0, 0, 1))
    # z0^2 z3 with coefficients ordered z0^3, z0^2 z3, z0 z3^2, z3^3
    content, facs = binary_factor(_bf(QQ, (0, 1, 0, 0)))
    assert sorted(m for _, m in facs) == [1, 2]
    with pytest.raises(UnsupportedField):
        binary_factor(_bf(PrimeField(7), (1, 0, 1)))


@pytest.mark.parametrize("field", [QQ, K8], ids=lambda f: f.tag)
@given(data=st.data())
def test_binary_factor_reassembles(field, data):
    coeffs = data.draw(st.lists(scalars(field, -4, 4), min_size=2, max_size=6))
    f = BinaryForm(field, (0, 3), tuple(coeffs))
    if f.is_zero():
        return
    content, facs = binary_factor(f)
    assert _expand(content, facs) == f
    for a in range(len(facs)):
        for b in range(a + 1, len(facs)):
            ga, gb = facs[a][0], facs[b][0]
            assert ga.degree != gb.degree or binary_proportional(ga, gb) is None
