import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nlcheck.fields import Cyclotomic, Q
from nlcheck.families import (
    FamilyMember,
    GammaDatum,
    PQFamilySpec,
    PreconditionError,
    SpecError,
    TijFamilySpec,
    binary_projection_dim,
    build_pq,
    canonical_form,
    case1_chain,
    classify_with_witness,
    euler_constraint_space,
    euler_ode_kernel,
    family_codim,
    format_spec_block,
    gamma_space,
    parse_spec_block,
    pq_gamma_datum,
    sigma_space,
    sigma_space_check,
    support_line_recover,
    tangent_ideal_pq,
    threshold_check,
)
from nlcheck.linalg import membership, span, subspace_equal
from nlcheck.parse import parse_poly
from nlcheck.poly import HPoly, monomials, multiply, partial, var
from nlcheck.suite import CLASSIFY_SHAPES, fermat, pq_reference_member, random_pq_spec, random_transversal, tij_member

QQ = Q()


def P(text, field=QQ):
    return parse_poly(text, field)


@pytest.fixture(scope="module")
def pq_member():
    return pq_reference_member(QQ)


# -- construction ------------------------------------------------------------


def test_build_pq_expands_product():
    spec = PQFamilySpec(QQ, (1, 2, 3), 1, 1, 2, 1, (1, -1), var(0, QQ), P("z0^3+z1^3+z2^3+z3^3"))
    F = build_pq(spec, check=False).F
    expected = P("z0^4+z0*z1^3+z0*z2^3+z0*z3^3") + multiply(P("z1^2-z2*z3"), P("z1^2+z2*z3"))
    assert F == expected


def test_build_pq_with_permuted_sigma():
    spec = PQFamilySpec(QQ, (3, 1, 2), 2, 1, 1, 2, (5,), var(0, QQ), HPoly.zero(QQ, 2))
    assert build_pq(spec, check=False).F == P("2*z3^3-5*z1^2*z2")


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(r=3, cs=(1, -1)),  # wrong number of c_nu
        dict(c=0),
        dict(p=2, q=2),
        dict(sigma=(1, 1, 2)),
        dict(w=P("z1+z2")),
    ],
)
def test_pq_spec_rejects_bad_parameters(kwargs):
    base = dict(field=QQ, sigma=(1, 2, 3), p=1, q=1, r=2, c=1, cs=(1, -1), w=var(0, QQ), A=P("z0^3"))
    base.update(kwargs)
    with pytest.raises(SpecError):
        PQFamilySpec(**base)


def test_tij_spec_rejects_zero_coefficient():
    with pytest.raises(SpecError):
        TijFamilySpec(QQ, (1, 2), var(0, QQ), P("z0^3"), P("z3^2"), 0, 1)
    with pytest.raises(SpecError):
        TijFamilySpec(QQ, (1, 3), var(0, QQ), P("z0^3"), P("z3^2"), 1, 1)


# -- tangent spaces ----------------------------------------------------------


def test_tangent_ideal_examples(pq_member):
    T = tangent_ideal_pq(pq_member)
    assert T.codim == 10
    assert membership(pq_member.F, T)
    w = pq_member.spec.w
    assert all(membership(multiply(w, HPoly.monomial(QQ, m)), T) for m in monomials(3))
    assert family_codim(pq_member) == 10


def test_tij_codim_matches_expected_value():
    # Expected 2d - 1 = 7 at d = 4 when w may vary.  Letting w vary adds the
    # directions z_k * A, which reduce the codimension to 2d - 4.
    member = tij_member(QQ, 42)
    assert family_codim(member) == 7


@pytest.mark.parametrize("d", [4, 5])
def test_tij_codim_with_fixed_w(d):
    member = tij_member(QQ, 42, d)
    assert family_codim(member, vary_w=False) == 2 * d - 1
    assert family_codim(member) == 2 * d - 4


def test_sigma_space_both_routes(pq_member):
    assert sigma_space_check(pq_member)
    assert sigma_space_check(pq_member, direct=True)
    assert subspace_equal(sigma_space(pq_member), sigma_space(pq_member, direct=True))


def test_sigma_space_shrinks_off_the_family(pq_member):
    F = pq_member.F + P("z1*z2*z3^2")
    perturbed = FamilyMember(pq_member.spec, F, None)
    assert sigma_space(perturbed).dim == 1
    assert not sigma_space_check(perturbed)


# -- Euler constraints -------------------------------------------------------


def test_gamma_space_generic_and_member(pq_member):
    F = random_transversal(QQ, 4, random.Random(1), 1)[0]
    generic = gamma_space(F, P("z0+z1"))
    assert (generic.dim_phi, generic.dim) == (6, 0)
    member = gamma_space(pq_member.F, pq_member.spec.w)
    assert member.dim >= 1
    assert member.dim_phi == 6 - member.dim


def test_pq_gamma_datum_and_constraint_space(pq_member):
    g = pq_gamma_datum(pq_member.spec)
    assert g.gamma == (QQ(0), QQ(1), QQ(-1))
    assert g.L.is_zero()
    S = euler_constraint_space(pq_member.F, pq_member.spec.w, g)
    assert membership(pq_member.F, S)
    assert membership(P("z1^2*z2*z3"), S)
    assert not membership(P("z1^3*z2"), S)
    with pytest.raises(ValueError):
        euler_constraint_space(pq_member.F, pq_member.spec.w, GammaDatum((QQ(0),) * 3, HPoly.zero(QQ, 1)))


def test_euler_constraint_space_oracle(pq_member):
    # a monomial z^m lies in the space exactly when the weight m2 - m3 vanishes or z0 divides it
    g = pq_gamma_datum(pq_member.spec)
    S = euler_constraint_space(pq_member.F, pq_member.spec.w, g)
    for m in monomials(4):
        expected = m[2] == m[3] or m[0] > 0
        assert membership(HPoly.monomial(QQ, m), S) == expected


# -- support lines and classification ----------------------------------------


def test_support_line_examples():
    line = support_line_recover(P("z1^4-z1^2*z2*z3-2*z2^2*z3^2"))
    assert (line.sigma, line.p, line.q, line.r) == ((1, 2, 3), 1, 1, 2)
    assert sorted(x.to_fraction() for x in line.roots) == [-1, 2]
    over_q = support_line_recover(P("z1^4+z2^4"))
    assert (over_q.p, over_q.q, over_q.r) == (1, 0, 4) and over_q.partial
    K = Cyclotomic(8)
    full = support_line_recover(P("z1^4+z2^4", K))
    assert not full.partial and len(full.roots) == 4
    assert support_line_recover(P("z1^4+z2^3*z3+z3^4")) is None


def test_support_line_preconditions():
    with pytest.raises(PreconditionError):
        support_line_recover(P("z0*z1^3+z2^4"))
    with pytest.raises(PreconditionError):
        support_line_recover(P("z1^3*z2+z1*z2^3"))
    with pytest.raises(PreconditionError):
        support_line_recover(HPoly.zero(QQ, 4))


def test_classify_examples(pq_member):
    got = classify_with_witness(pq_member.F, pq_member.spec.w)
    want = canonical_form(pq_member.spec)
    assert (got.sigma, got.p, got.q, got.r, got.cs) == (want.sigma, want.p, want.q, want.r, want.cs)
    assert build_pq(got, check=False).F == pq_member.F
    assert classify_with_witness(fermat(QQ, 4), var(0, QQ)) is None
    assert classify_with_witness(pq_member.F, P("z0+z3")) is None


@settings(max_examples=25)
@given(seed=st.integers(0, 10**6), shape=st.sampled_from(CLASSIFY_SHAPES))
def test_classify_round_trip(seed, shape):
    p, q, d = shape
    spec = random_pq_spec(QQ, p, q, d, random.Random(seed))
    F = build_pq(spec, check=False).F
    got = classify_with_witness(F, spec.w)
    assert got is not None
    got, want = canonical_form(got), canonical_form(spec)
    assert (got.sigma, got.p, got.q, got.r, got.cs) == (want.sigma, want.p, want.q, want.r, want.cs)
    # the rebuilt form agrees with F up to the scale absorbed into c
    rebuilt = build_pq(got, check=False).F
    m = next(iter(F.terms))
    assert rebuilt.scale(F.coeff(m) / rebuilt.coeff(m)) == F


# -- operator kernels --------------------------------------------------------


def test_euler_ode_kernel_examples():
    z0, z2 = var(0, QQ), var(2, QQ)
    K = euler_ode_kernel(0, z0, z2, 3)
    assert K.dim == 1 and subspace_equal(K, span([z2**3], 3, QQ))
    ell = z2 - z0
    assert subspace_equal(euler_ode_kernel(3, ell, z2, 3), span([ell**3], 3, QQ))
    assert euler_ode_kernel(5, ell, z2, 3).dim == 0
    with pytest.raises(ValueError):
        euler_ode_kernel(1, var(1, QQ), z2, 3)


@given(a=st.integers(-3, 8), m=st.integers(0, 6))
def test_euler_ode_kernel_solves_equation(a, m):
    z0, z2 = var(0, QQ), var(2, QQ)
    ell = z2 - z0
    K = euler_ode_kernel(a, ell, z2, m)
    assert K.dim == (1 if 0 <= a <= m else 0)
    for G in K.basis_polys():
        lhs = G.scale(QQ(a)) + multiply(ell, partial(G, 0)) if m else G.scale(QQ(a))
        assert lhs.is_zero()


@pytest.mark.parametrize("d", [4, 5, 6])
def test_case1_chain(d):
    sol = case1_chain(QQ, d)
    assert sol.kernel_dim == 1
    assert sol.total == (var(0, QQ) - var(2, QQ)) ** d


def test_binary_projection_dim():
    S = span([P("z0^3"), P("z0*z1^2"), P("z2^3")], 3, QQ)
    assert binary_projection_dim(S) == 2
    assert binary_projection_dim(span([P("z2*z3")], 2, QQ)) == 0


# -- thresholds --------------------------------------------------------------


def test_threshold_examples():
    assert threshold_check(4).floor == 10
    assert (threshold_check(4).t1, threshold_check(3).t1) == (True, False)
    assert (threshold_check(6).t2, threshold_check(5).t2) == (True, False)
    assert (threshold_check(10).t3, threshold_check(9).t3) == (True, False)
    with pytest.raises(ValueError):
        threshold_check(0)


@given(st.integers(1, 60))
def test_thresholds_monotone(d):
    a, b = threshold_check(d), threshold_check(d + 1)
    assert (a.t1 <= b.t1) and (a.t2 <= b.t2) and (a.t3 <= b.t3)
    assert a.t3 <= a.t2 <= a.t1


# -- spec blocks -------------------------------------------------------------


def test_spec_block_round_trip(pq_member):
    text = format_spec_block(pq_member.spec)
    again = parse_spec_block(text)
    assert format_spec_block(again) == text
    assert build_pq(again, check=False).F == pq_member.F
    tij = tij_member(QQ, 7).spec
    assert format_spec_block(parse_spec_block(format_spec_block(tij))) == format_spec_block(tij)


def test_spec_block_errors():
    with pytest.raises(SpecError):
        parse_spec_block("family = pq\np = 1\n")
    with pytest.raises(SpecError):
        parse_spec_block("field = zeta:8\np=1\nq=0\nr=4\ncs=1,2,3,4\nw=z0\nA=z0^3", QQ)
    with pytest.raises(SpecError):
        parse_spec_block("p=1\nq=0\nr=4\ncs=1,2,3,4\nw=z0\nA=z0^3+")
