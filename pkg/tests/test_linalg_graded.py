import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import hpolys
from nlcheck.fields import Cyclotomic, PrimeField, Q
from nlcheck.graded import (
    GeneratorMismatch,
    IdealSpec,
    ci_series_coeff,
    hilbert,
    ideal_piece,
    is_complete_intersection,
    monomial_quotient_count,
)
from nlcheck.linalg import (
    AmbientMismatch,
    Subspace,
    intersect,
    kernel,
    membership,
    modular_rank,
    quotient_dim,
    rank,
    rank_crosscheck,
    rref,
    rref_reference,
    span,
    span_vectors,
    subspace_equal,
    subspace_sum,
)
from nlcheck.parse import parse_poly
from nlcheck.poly import HPoly, ambient_dim, monomials, var

QQ = Q()


def P(text, field=QQ):
    return parse_poly(text, field)


# -- linalg ------------------------------------------------------------------


def test_span_examples():
    assert span([P("z0^2"), P("z0^2"), P("z1^2")], 2).rank == 2
    empty = span([], 3, QQ)
    assert empty.rank == 0 and empty.degree == 3
    full = span([HPoly.monomial(QQ, m) for m in monomials(4)], 4)
    assert full.rank == 35 == comb(7, 3)


def test_span_rejects_wrong_degree():
    with pytest.raises(ValueError):
        span([P("z0^3")], 2)


def test_kernel_examples():
    n = ambient_dim(3)
    k = kernel(QQ, [{0: QQ(1)}], n, 3)
    assert k.codim == 1
    assert kernel(QQ, [{}], n, 3).rank == n
    with pytest.raises(AmbientMismatch):
        kernel(QQ, [{n: QQ(1)}], n)


def test_random_functionals_kernel_with_modular_crosscheck():
    rng = random.Random(7)
    n = ambient_dim(3)
    rows = [{j: QQ(rng.randint(-9, 9)) for j in range(n)} for _ in range(5)]
    assert kernel(QQ, rows, n, 3).rank == 15
    q_rank = rank(QQ, rows, n, certify=False)
    report = rank_crosscheck(rows, n, q_rank, rng=rng)
    assert report["q_rank"] == q_rank
    assert set(report["modular"].values()) == {q_rank}


def test_quotient_dim_examples():
    assert quotient_dim(Subspace.full(QQ, 35, 4)) == 0
    assert quotient_dim(Subspace.zero(QQ, 35, 4)) == 35
    J = IdealSpec.of(P("z0^3"), P("z1^4"), P("z2^4"), P("z3^4"))
    assert quotient_dim(ideal_piece(J, 4)) == 35 - 7


def test_subspace_examples():
    a = span([P("z0^2"), P("z1^2")], 2)
    b = span([P("z1^2"), P("z0^2")], 2)
    assert subspace_equal(a, b)
    assert membership(P("z0^2+z1^2"), a)
    assert not membership(P("z2^2"), a)
    with pytest.raises(AmbientMismatch):
        subspace_sum(a, span([P("z0^3")], 3))


def test_modular_rank_bounds_rational_rank():
    rows = [{0: QQ(2), 1: QQ(4)}, {0: QQ(1), 1: QQ(2)}]
    assert rank(QQ, rows, 2) == 1
    assert modular_rank(QQ, [{0: QQ(3)}], 1, 3) == 0
    assert rank(QQ, [{0: QQ(3)}], 1) == 1


def _random_rows(rng, field, nrows, ncols, density=0.5):
    rows = []
    for _ in range(nrows):
        row = {}
        for j in range(ncols):
            if rng.random() < density:
                c = field(rng.randint(-3, 3))
                if not c.is_zero():
                    row[j] = c
        rows.append(row)
    return rows


@pytest.mark.parametrize("field", [QQ, Cyclotomic(5), PrimeField(101)], ids=lambda f: f.tag)
@given(seed=st.integers(0, 10**6), nrows=st.integers(0, 7), ncols=st.integers(1, 7))
def test_rref_matches_reference(field, seed, nrows, ncols):
    rng = random.Random(seed)
    rows = _random_rows(rng, field, nrows, ncols)
    if field.kind == "cyclotomic":
        z = field.zeta()
        rows = [{j: c * z ** rng.randint(0, 4) for j, c in r.items()} for r in rows]
    assert rref(field, rows, ncols) == rref_reference(field, rows, ncols)


@given(seed=st.integers(0, 10**6), nrows=st.integers(0, 8))
def test_rank_nullity(seed, nrows):
    rng = random.Random(seed)
    n = ambient_dim(2)
    rows = _random_rows(rng, QQ, nrows, n, 0.3)
    assert kernel(QQ, rows, n).rank + rank(QQ, rows, n) == n


@given(seed=st.integers(0, 10**6))
def test_echelon_idempotence(seed):
    rng = random.Random(seed)
    S = span_vectors(QQ, ambient_dim(2), _random_rows(rng, QQ, 4, ambient_dim(2)), 2)
    assert subspace_equal(span(S.basis_polys(), 2), S)
    again = span_vectors(QQ, S.ambient, S.rows, 2)
    assert again.pivots == S.pivots and again.rows == S.rows


@given(seed=st.integers(0, 10**6))
def test_dimension_formula(seed):
    rng = random.Random(seed)
    n = ambient_dim(2)
    a = span_vectors(QQ, n, _random_rows(rng, QQ, rng.randint(0, 7), n, 0.25), 2)
    b = span_vectors(QQ, n, _random_rows(rng, QQ, rng.randint(0, 7), n, 0.25), 2)
    assert subspace_sum(a, b).rank + intersect(a, b).rank == a.rank + b.rank


# -- graded ------------------------------------------------------------------


FERMAT_JAC = IdealSpec.of(P("z0^3"), P("z1^4"), P("z2^4"), P("z3^4"))


def test_ideal_piece_examples():
    z0 = IdealSpec.of(var(0, QQ))
    piece = ideal_piece(z0, 2)
    assert piece.rank == 4
    assert subspace_equal(piece, span([P("z0^2"), P("z0*z1"), P("z0*z2"), P("z0*z3")], 2))
    assert quotient_dim(ideal_piece(FERMAT_JAC, 11)) == 1
    assert ideal_piece(FERMAT_JAC, 2).rank == 0


def test_hilbert_examples():
    table = tuple(hilbert(FERMAT_JAC, l) for l in range(12))
    assert table == (1, 4, 10, 19, 28, 34, 34, 28, 19, 10, 4, 1)
    # oracle: coefficients of (1+t+t^2)(1+t+t^2+t^3)^3, expanded independently
    poly = [1, 1, 1]
    for _ in range(3):
        nxt = [0] * (len(poly) + 3)
        for i, c in enumerate(poly):
            for k in range(4):
                nxt[i + k] += c
        poly = nxt
    assert table == tuple(poly)
    assert hilbert(FERMAT_JAC, 12) == 0
    assert hilbert(IdealSpec.of(P("z0^2+z1*z3")), 0) == 1


def _brute_count(caps, l):
    return sum(
        1
        for m in monomials(l)
        if all(c is None or e < c for e, c in zip(m, caps))
    )


def test_monomial_quotient_count_examples():
    assert monomial_quotient_count((1, 3, 4, 4), 4) == 10 == comb(6, 2) - 5
    assert monomial_quotient_count((1, 4, 5, 5), 5) == 16 == comb(7, 2) - 5
    assert monomial_quotient_count((None, None, None, None), 6) == comb(9, 3)
    assert monomial_quotient_count((float("inf"),) * 4, 2) == 10


@given(st.tuples(*[st.one_of(st.none(), st.integers(1, 5))] * 4), st.integers(0, 10))
def test_monomial_quotient_count_matches_enumeration(caps, l):
    assert monomial_quotient_count(caps, l) == _brute_count(caps, l)


def test_ci_series_examples():
    assert ci_series_coeff((3, 4, 4, 4), 4) == 28
    assert ci_series_coeff((1, 3, 4, 4), 4) == 10 == monomial_quotient_count((1, 3, 4, 4), 4)
    assert ci_series_coeff((2, 5, 7, 3), 0) == 1
    assert ci_series_coeff((3, 4, 4, 4), 12) == 0


@given(st.tuples(*[st.integers(1, 5)] * 4), st.integers(0, 16))
def test_monomial_count_equals_series_for_power_ideals(degrees, l):
    assert monomial_quotient_count(degrees, l) == ci_series_coeff(degrees, l)


def test_is_complete_intersection_examples():
    assert is_complete_intersection(FERMAT_JAC, (3, 4, 4, 4))
    # every generator vanishes at [0:0:0:1]
    dependent = IdealSpec.of(P("z0^3"), P("z1^4"), P("z2^4"), P("z0*z1*z2*z3"))
    assert not is_complete_intersection(dependent, (3, 4, 4, 4))
    d = 4
    mono = IdealSpec.of(P("z0"), P("z1^3"), P("z2^4"), P("z3^4"))
    assert is_complete_intersection(mono, (1, d - 1, d, d))
    assert all(hilbert(mono, l) == monomial_quotient_count((1, 3, 4, 4), l) for l in range(12))
    with pytest.raises(GeneratorMismatch):
        is_complete_intersection(mono, (1, 1, 1, 1))


def test_supplier_form_of_ci_test():
    supplier = lambda l: ideal_piece(FERMAT_JAC, l)  # noqa: E731
    assert is_complete_intersection(supplier, (3, 4, 4, 4))
    assert not is_complete_intersection(supplier, (3, 4, 4, 5))


@given(st.permutations([0, 1, 2, 3]))
def test_ci_symmetric_under_generator_order(order):
    gens = FERMAT_JAC.generators
    degrees = FERMAT_JAC.degrees
    I = IdealSpec(QQ, tuple(gens[k] for k in order))
    assert is_complete_intersection(I, tuple(degrees[k] for k in order))


@given(data=st.data())
def test_ideal_piece_monotone(data):
    g = data.draw(hpolys(QQ, 2, 4))
    h = data.draw(hpolys(QQ, 3, 4))
    gens = [x for x in (g, h) if not x.is_zero()]
    if not gens:
        return
    I = IdealSpec(QQ, tuple(gens))
    lower = ideal_piece(I, 3)
    upper = ideal_piece(I, 4)
    for f in lower.basis_polys():
        for i in range(4):
            assert membership(f.mul_mono(tuple(int(k == i) for k in range(4))), upper)
