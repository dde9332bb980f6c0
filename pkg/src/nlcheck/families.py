"""Special families of surfaces and the linear algebra of their tangent spaces.

Two shapes of equation are modelled:

* ``(p, q)`` members:  ``F = w*A + prod_nu (c*z_s1^(p+q) - c_nu * z_s2^p * z_s3^q)``
  where ``(s1, s2, s3)`` is a permutation of ``(1, 2, 3)`` and ``d = r*(p+q)``;
* ``T_ij`` members:    ``F = w*A + z_i*z_j*B + c_i*z_i^d + c_j*z_j^d``.

Besides constructors this module holds the Euler-type constraint spaces, the
recovery of a ``(p, q)`` structure from the support of a ternary form, and the
small ODE-like kernels that pin down the shape of such equations.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import comb, gcd
from typing import Sequence

from .binary import BinaryForm, binary_factor
from .fields import Field, Scalar
from .jacobian import JacobianRing, mult_kernel, omega_F, xi_F
from .linalg import Subspace, kernel, rank, reduce_vector, span, span_vectors, subspace_equal, subspace_sum
from .parse import ParseError, format_poly, format_scalar, parse_poly
from .poly import (
    HPoly,
    NotDivisible,
    ambient_dim,
    divide_exact,
    monomials,
    multiply,
    partial,
    substitute_linear,
    var,
)

__all__ = [
    "SpecError",
    "PQFamilySpec",
    "TijFamilySpec",
    "GammaDatum",
    "FamilyMember",
    "pq_product",
    "build_pq",
    "build_tij",
    "tangent_ideal_pq",
    "family_codim",
    "tij_codim_detail",
    "sigma_space",
    "sigma_space_check",
    "GammaSpace",
    "gamma_space",
    "pq_gamma_datum",
    "euler_constraint_space",
    "SupportLine",
    "support_line_recover",
    "classify_with_witness",
    "canonical_form",
    "euler_ode_kernel",
    "case1_chain",
    "binary_projection_dim",
    "ThresholdResult",
    "threshold_check",
    "parse_spec_block",
    "format_spec_block",
]

PAIRS = ((1, 2), (2, 3), (3, 1))


class SpecError(ValueError):
    """Family parameters violate their invariants."""


def _is_perm(sigma) -> bool:
    return sorted(sigma) == [1, 2, 3]


@dataclass(frozen=True)
class PQFamilySpec:
    field: Field
    sigma: tuple
    p: int
    q: int
    r: int
    c: Scalar
    cs: tuple
    w: HPoly
    A: HPoly

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(self.sigma))
        object.__setattr__(self, "c", self.field(self.c))
        object.__setattr__(self, "cs", tuple(self.field(x) for x in self.cs))
        if not _is_perm(self.sigma):
            raise SpecError(f"sigma {self.sigma} is not a permutation of (1, 2, 3)")
        if self.p < 0 or self.q < 0 or self.p + self.q == 0:
            raise SpecError("p, q must be non-negative and not both zero")
        if gcd(self.p, self.q) != 1:
            raise SpecError(f"p = {self.p} and q = {self.q} are not coprime")
        if self.r < 1:
            raise SpecError("r must be positive")
        if len(self.cs) != self.r:
            raise SpecError(f"expected {self.r} values c_nu, got {len(self.cs)}")
        if self.c.is_zero():
            raise SpecError("scale c must be nonzero")
        if self.w.degree != 1 or self.w.field != self.field:
            raise SpecError("w must be a linear form over the session field")
        if self.w.coeff((1, 0, 0, 0)).is_zero():
            raise SpecError("w must involve z0 (w not in span{z1, z2, z3})")
        if self.A.field != self.field:
            raise SpecError("A is over a different field")
        d = self.r * (self.p + self.q)
        if self.A.degree != d - 1 and not (self.A.is_zero() and d >= 1):
            raise SpecError(f"deg A = {self.A.degree} but d = r(p+q) = {d}")

    @property
    def d(self) -> int:
        return self.r * (self.p + self.q)


@dataclass(frozen=True)
class TijFamilySpec:
    field: Field
    pair: tuple
    w: HPoly
    A: HPoly
    B: HPoly
    ci: Scalar
    cj: Scalar

    def __post_init__(self):
        object.__setattr__(self, "pair", tuple(self.pair))
        object.__setattr__(self, "ci", self.field(self.ci))
        object.__setattr__(self, "cj", self.field(self.cj))
        if self.pair not in PAIRS:
            raise SpecError(f"pair must be one of {PAIRS}")
        if self.ci.is_zero() or self.cj.is_zero():
            raise SpecError("c_i and c_j must be nonzero")
        if self.w.degree != 1:
            raise SpecError("w must be linear")
        d = self.A.degree + 1
        if self.B.degree != d - 2 and not self.B.is_zero():
            raise SpecError(f"deg B must be {d - 2}")

    @property
    def d(self) -> int:
        return self.A.degree + 1


@dataclass(frozen=True)
class GammaDatum:
    """``(gamma_1, gamma_2, gamma_3)`` together with a linear ``L`` taken modulo ``w``."""

    gamma: tuple
    L: HPoly

    def is_zero(self) -> bool:
        return all(g.is_zero() for g in self.gamma) and self.L.is_zero()


@dataclass(frozen=True, eq=False)
class FamilyMember:
    spec: object
    F: HPoly
    ring: JacobianRing | None


# ---------------------------------------------------------------------------
# constructors


def pq_product(spec: PQFamilySpec) -> HPoly:
    f = spec.field
    s1, s2, s3 = spec.sigma
    head = [0, 0, 0, 0]
    head[s1] = spec.p + spec.q
    tail = [0, 0, 0, 0]
    tail[s2] += spec.p
    tail[s3] += spec.q
    out = HPoly.constant(f, 1)
    for cn in spec.cs:
        factor = HPoly(f, spec.p + spec.q, {tuple(head): spec.c}) - HPoly(f, spec.p + spec.q, {tuple(tail): cn})
        out = multiply(out, factor)
    return out


def build_pq(spec: PQFamilySpec, check: bool = True) -> FamilyMember:
    F = multiply(spec.w, spec.A) + pq_product(spec)
    return FamilyMember(spec, F, JacobianRing.build(F) if check else None)


def build_tij(spec: TijFamilySpec, check: bool = True) -> FamilyMember:
    f = spec.field
    i, j = spec.pair
    d = spec.d
    zi, zj = var(i, f), var(j, f)
    F = multiply(spec.w, spec.A) + multiply(multiply(zi, zj), spec.B) + (zi**d).scale(spec.ci) + (zj**d).scale(spec.cj)
    return FamilyMember(spec, F, JacobianRing.build(F) if check else None)


def _ring(member: FamilyMember) -> JacobianRing:
    if member.ring is None:
        return JacobianRing.build(member.F)
    return member.ring


def _multiples(g: HPoly, k: int) -> list[HPoly]:
    return [g.mul_mono(m) for m in monomials(k)]


def tangent_ideal_pq(member: FamilyMember) -> Subspace:
    """``w * P^(d-1) + J_F^d``."""
    R = _ring(member)
    d = R.d
    wpart = span(_multiples(member.spec.w, d - 1), d, R.field)
    return subspace_sum(wpart, R.piece(d))


@dataclass(frozen=True)
class TijCodim:
    full: int  # includes perturbations of w
    fixed_w: int  # w held fixed


def tij_codim_detail(member: FamilyMember) -> TijCodim:
    spec = member.spec
    f = spec.field
    d = spec.d
    i, j = spec.pair
    zi, zj = var(i, f), var(j, f)
    fixed = _multiples(spec.w, d - 1) + _multiples(multiply(zi, zj), d - 2) + [zi**d, zj**d]
    moving = [spec.A.mul_mono(m) for m in monomials(1)]
    n = ambient_dim(d)
    fixed_rank = span(fixed, d, f).rank
    full_rank = span(fixed + moving, d, f).rank
    return TijCodim(n - full_rank, n - fixed_rank)


def family_codim(member: FamilyMember, vary_w: bool = True) -> int:
    """Codimension in ``P^d`` of the tangent image of the family at ``member``.

    For ``(p, q)`` members this is ``dim P^d / (w P^(d-1) + J_F^d)``.  For ``T_ij``
    members it is the corank of the differential of ``(w, A, B, c_i, c_j) -> F``;
    with ``vary_w=False`` the linear form ``w`` is held fixed.
    """
    if isinstance(member.spec, PQFamilySpec):
        return tangent_ideal_pq(member).codim
    detail = tij_codim_detail(member)
    return detail.full if vary_w else detail.fixed_w


def sigma_space(member: FamilyMember, direct: bool = False) -> Subspace:
    """``{y in P^(d-1) : y*x = 0 in R^(2d-1) for all x in w P^(d-1) + J_F^d}``.

    By duality it is enough to ask ``y*w = 0`` in ``R^d``; ``direct=True`` tests
    every basis element of the tangent ideal instead.
    """
    R = _ring(member)
    d = R.d
    if not direct:
        return mult_kernel(R, member.spec.w)
    T = tangent_ideal_pq(member)
    J = R.piece(2 * d - 1)
    free = J.free_columns()
    rows = []
    ys = monomials(d - 1)
    for x in T.basis_polys():
        block = [dict() for _ in free]
        pos = {s: k for k, s in enumerate(free)}
        for j, y in enumerate(ys):
            nf = reduce_vector(x.mul_mono(y).to_vector(), J)
            for s, c in nf.items():
                block[pos[s]][j] = c
        rows.extend(b for b in block if b)
    return kernel(R.field, rows, len(ys), d - 1)


def sigma_space_check(member: FamilyMember, direct: bool = False) -> bool:
    R = _ring(member)
    expected = span([omega_F(R), xi_F(member.spec)], R.d - 1, R.field)
    return expected.rank == 2 and subspace_equal(sigma_space(member, direct), expected)


# ---------------------------------------------------------------------------
# Euler-type constraints


def _w_pivot(w: HPoly) -> int:
    for k in range(4):
        if not w.coeff(tuple(int(i == k) for i in range(4))).is_zero():
            return k
    raise ValueError("w must be nonzero")


def _complement_vars(w: HPoly) -> list[int]:
    k = _w_pivot(w)
    return [i for i in range(4) if i != k]


def _euler_image(F: HPoly, gamma: Sequence, L: HPoly) -> HPoly:
    f = F.field
    out = multiply(L, partial(F, 0)) if not L.is_zero() else HPoly.zero(f, F.degree)
    for i, g in zip((1, 2, 3), gamma):
        g = f(g)
        if not g.is_zero():
            out = out + multiply(var(i, f), partial(F, i)).scale(g)
    return out


@dataclass(frozen=True)
class GammaSpace:
    dim_phi: int
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)


def gamma_space(F, w: HPoly) -> GammaSpace:
    """Image rank of ``J_F^d`` in ``P^d / w P^(d-1)`` and the kernel ``Gamma`` of the 6-term map."""
    F = F.F if isinstance(F, JacobianRing) else F
    f = F.field
    d = F.degree
    W = span(_multiples(w, d - 1), d, f)
    comp = _complement_vars(w)
    images = []
    for i in (1, 2, 3):
        images.append(reduce_vector(multiply(var(i, f), partial(F, i)).to_vector(), W))
    dF0 = partial(F, 0)
    for k in comp:
        images.append(reduce_vector(multiply(var(k, f), dF0).to_vector(), W))
    cols = sorted({s for v in images for s in v})
    rows = [{k: v[s] for k, v in enumerate(images) if s in v} for s in cols]
    ker = kernel(f, rows, 6)
    basis = []
    for row in ker.rows:
        gamma = tuple(row.get(k, f.zero) for k in range(3))
        L = HPoly.zero(f, 1)
        for k, v in zip(comp, range(3, 6)):
            c = row.get(v)
            if c is not None:
                L = L + var(k, f).scale(c)
        basis.append(GammaDatum(gamma, L))
    return GammaSpace(6 - ker.rank, tuple(basis))


def pq_gamma_datum(spec: PQFamilySpec) -> GammaDatum:
    """The Euler datum carried by a ``(p, q)`` member: ``gamma = q e_s2 - p e_s3``."""
    f = spec.field
    s1, s2, s3 = spec.sigma
    gamma = [f.zero] * 3
    gamma[s2 - 1] = f(spec.q)
    gamma[s3 - 1] = f(-spec.p)
    w = spec.w
    num = _euler_image(w, gamma, HPoly.zero(f, 1))
    L = num.scale(-partial(w, 0).coeff((0, 0, 0, 0)).inverse())
    return GammaDatum(tuple(gamma), L)


def euler_constraint_space(F, w: HPoly, g: GammaDatum) -> Subspace:
    """``{G in P^d : sum gamma_i z_i dG/dz_i + L dG/dz0 in w P^(d-1)}``."""
    F = F.F if isinstance(F, JacobianRing) else F
    if g.is_zero():
        raise ValueError("Gamma datum must be nonzero")
    f = F.field
    d = F.degree
    W = span(_multiples(w, d - 1), d, f)
    images = [reduce_vector(_euler_image(HPoly.monomial(f, m), g.gamma, g.L).to_vector(), W) for m in monomials(d)]
    cols = sorted({s for v in images for s in v})
    rows = [{k: v[s] for k, v in enumerate(images) if s in v} for s in cols]
    return kernel(f, rows, ambient_dim(d), d)


# ---------------------------------------------------------------------------
# support-line recovery and classification


@dataclass(frozen=True)
class SupportLine:
    sigma: tuple
    p: int
    q: int
    r: int
    scale: Scalar
    roots: tuple | None
    factors: tuple = ()

    @property
    def partial(self) -> bool:
        return self.roots is None


class PreconditionError(ValueError):
    pass


def _primitive(v: Sequence[int]) -> tuple:
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return tuple(x // g for x in v)


def support_line_recover(C: HPoly, gamma: Sequence | None = None) -> SupportLine | None:
    """Read ``C = b0 * prod(z_s1^(p+q) - rho_nu z_s2^p z_s3^q)`` off the support of ``C``."""
    f = C.field
    d = C.degree
    if C.is_zero():
        raise PreconditionError("C must be nonzero")
    if any(m[0] for m in C.terms):
        raise PreconditionError("C must not involve z0")
    for i in (1, 2, 3):
        if all(m[i] > 0 for m in C.terms):
            raise PreconditionError(f"C is divisible by z{i}")
    if gamma is not None:
        if not _euler_image(C, gamma, HPoly.zero(f, 1)).is_zero():
            raise PreconditionError("the Euler combination of C does not vanish")
    support = {(m[1], m[2], m[3]) for m in C.terms}
    found = []
    for k in (1, 2, 3):
        vertex = tuple(d if i == k else 0 for i in (1, 2, 3))
        if vertex not in support:
            continue
        others = [s for s in support if s != vertex]
        if not others:
            continue  # a pure power: no line direction
        dirs = {_primitive(tuple(a - b for a, b in zip(s, vertex))) for s in others}
        if len(dirs) != 1:
            continue
        v = dirs.pop()
        rest = [i for i in (1, 2, 3) if i != k]
        s2, s3 = rest
        p, q = v[s2 - 1], v[s3 - 1]
        if p < 0 or q < 0 or -v[k - 1] != p + q:
            continue
        if s2 > s3:
            s2, s3, p, q = s3, s2, q, p
        if d % (p + q):
            continue
        r = d // (p + q)
        found.append((k, s2, s3, p, q, r))
    if not found:
        return None
    # two vertices only happen when p + q = 1; keep the smaller one as s1
    k, s2, s3, p, q, r = min(found)
    b = []
    for j in range(r + 1):
        m = [0, 0, 0, 0]
        m[k] = d - j * (p + q)
        m[s2] += j * p
        m[s3] += j * q
        b.append(C.coeff(tuple(m)))
    if sum(1 for x in b if not x.is_zero()) != len(C.terms):
        return None
    # sum b_j X^(r-j) Y^j with X = z_s1^(p+q), Y = z_s2^p z_s3^q; roots rho with X = rho*Y
    form = BinaryForm(f, (k, s2), tuple(b))
    scale = b[0]
    roots = None
    factors = ()
    if f.kind in ("Q", "cyclotomic"):
        _, facs = binary_factor(form)
        factors = tuple(facs)
        if all(g.degree == 1 for g, _ in facs):
            roots = []
            for g, mult in facs:
                # g = g0 X^... : coeffs (g0, 1) means g0*X + Y, i.e. X = -Y/g0 ... normalise below
                g0, g1 = g.coeffs
                if g0.is_zero():
                    return None  # root X = 0 means C divisible by a variable
                roots.extend([-g1 / g0] * mult)
            roots = tuple(sorted(roots, key=format_scalar))
    return SupportLine((k, s2, s3), p, q, r, scale, roots, factors)


def _coordinate_change_to_w(w: HPoly):
    """Matrix ``T`` with ``z = T u`` such that ``w(T u) = u0`` and ``z_i = u_i`` for ``i >= 1``."""
    f = w.field
    a = [w.coeff(tuple(int(i == k) for i in range(4))) for k in range(4)]
    if a[0].is_zero():
        raise ValueError("w must involve z0")
    inv = a[0].inverse()
    T = [[f.zero] * 4 for _ in range(4)]
    T[0][0] = inv
    for k in (1, 2, 3):
        T[0][k] = -a[k] * inv
        T[k][k] = f.one
    return T


def classify_with_witness(F: HPoly, w: HPoly) -> PQFamilySpec | None:
    """Recover a ``(p, q)`` structure of ``F`` with respect to the linear form ``w``.

    On success ``F = b0 * build_pq(spec).F`` where ``b0`` is the coefficient of
    ``z_s1^d`` in ``F`` restricted to ``w = 0``; the returned spec uses ``c = 1``.
    """
    f = F.field
    d = F.degree
    if w.degree != 1 or w.coeff((1, 0, 0, 0)).is_zero():
        return None
    Ft = substitute_linear(F, _coordinate_change_to_w(w))
    C = HPoly(f, d, {m: c for m, c in Ft.terms.items() if m[0] == 0})
    if C.is_zero():
        return None
    try:
        line = support_line_recover(C)
    except PreconditionError:
        return None
    if line is None or line.roots is None:
        return None
    inv = line.scale.inverse()
    try:
        A = divide_exact(F.scale(inv) - C.scale(inv), w)
    except NotDivisible:
        return None
    return PQFamilySpec(f, line.sigma, line.p, line.q, line.r, f.one, line.roots, w, A)


def canonical_form(spec: PQFamilySpec) -> PQFamilySpec:
    """Normalise so that ``s2 < s3`` and, for ``p + q = 1``, ``s1`` is the smaller variable.

    Scales ``c`` to 1 (roots become ``c_nu / c``) and absorbs nothing else.
    """
    f = spec.field
    s1, s2, s3 = spec.sigma
    p, q = spec.p, spec.q
    roots = [x / spec.c for x in spec.cs]
    scale = spec.c ** spec.r
    if p + q == 1:
        other = s2 if p == 1 else s3
        if other < s1 and all(not x.is_zero() for x in roots):
            # prod(z_s1 - rho z_o) = prod(-rho) * prod(z_o - rho^-1 z_s1)
            for x in roots:
                scale = scale * (-x)
            roots = [x.inverse() for x in roots]
            rem = ({1, 2, 3} - {s1, other}).pop()
            s1, s2, s3, p, q = other, s1, rem, 1, 0
    if s2 > s3:
        s2, s3, p, q = s3, s2, q, p
    A = spec.A.scale(scale.inverse())
    w = spec.w
    roots = tuple(sorted(roots, key=format_scalar))
    return PQFamilySpec(f, (s1, s2, s3), p, q, spec.r, f.one, roots, w, A)


# ---------------------------------------------------------------------------
# operator kernels


def euler_ode_kernel(a, ell: HPoly, u: HPoly, m: int) -> Subspace:
    """Kernel of ``G -> a*G + ell * dG/dz0`` on forms of degree ``m`` in ``z0`` and ``u``.

    ``u`` must be free of ``z0`` and ``ell`` must lie in ``span{z0, u}``.
    """
    f = u.field
    a = f(a)
    if u.degree != 1 or ell.degree != 1:
        raise ValueError("ell and u must be linear")
    e0_mono = (1, 0, 0, 0)
    if not u.coeff(e0_mono).is_zero() or u.is_zero():
        raise ValueError("u must be nonzero and free of z0")
    e0 = ell.coeff(e0_mono)
    rest = ell - var(0, f).scale(e0)
    e1 = _ratio(rest, u)
    if e1 is None:
        raise ValueError("ell must lie in span{z0, u}")
    # basis b_k = z0^(m-k) u^k ; op(b_k) = (a + (m-k) e0) b_k + (m-k) e1 b_(k+1)
    n = m + 1
    cols: list[dict] = []
    for k in range(n):
        col = {}
        diag = a + e0 * (m - k)
        if not diag.is_zero():
            col[k] = diag
        off = e1 * (m - k)
        if k + 1 < n and not off.is_zero():
            col[k + 1] = off
        cols.append(col)
    rows = [{k: col[i] for k, col in enumerate(cols) if i in col} for i in range(n)]
    ker = kernel(f, rows, n)
    z0 = var(0, f)
    basis_polys = [multiply(z0 ** (m - k), u**k) for k in range(n)]
    gens = []
    for row in ker.rows:
        g = HPoly.zero(f, m)
        for k, c in row.items():
            g = g + basis_polys[k].scale(c)
        gens.append(g)
    return span(gens, m, f)


def _ratio(g: HPoly, h: HPoly) -> Scalar | None:
    """``c`` with ``g = c*h`` (``h != 0``), else ``None``."""
    if g.is_zero():
        return g.field.zero
    m = next(iter(h.terms))
    c = g.coeff(m) / h.terms[m]
    return c if (g - h.scale(c)).is_zero() else None


@dataclass(frozen=True)
class ChainSolution:
    kernel_dim: int
    B: tuple  # B_nu in z0, u, normalised so that B_0 has z0^d coefficient 1
    total: HPoly  # sum L^nu B_nu


def case1_chain(field: Field, d: int, L: HPoly | None = None, u: HPoly | None = None) -> ChainSolution:
    """Solve ``d B_nu - z0 dB_nu/dz0 + dB_(nu-1)/dz0 = 0`` for ``nu = 0..d`` as one linear system.

    ``B_nu`` ranges over forms of degree ``d - nu`` in ``z0`` and ``u``.
    """
    u = var(1, field) if u is None else u
    L = var(2, field) if L is None else L
    z0 = var(0, field)
    # unknown block nu has coordinates k = 0..d-nu for z0^(d-nu-k) u^k
    offsets = []
    n = 0
    for nu in range(d + 1):
        offsets.append(n)
        n += d - nu + 1
    equations = []
    for nu in range(d + 1):
        deg = d - nu
        for k in range(deg + 1):
            # coefficient of z0^(deg-k) u^k in the nu-th equation
            row = {}
            coef = d - (deg - k)
            if coef:
                row[offsets[nu] + k] = field(coef)
            if nu >= 1:
                # d/dz0 of z0^(deg+1-k) u^k in B_(nu-1)
                e = deg + 1 - k
                if e:
                    row[offsets[nu - 1] + k] = field(e)
            if row:
                equations.append(row)
    ker = kernel(field, equations, n)
    if ker.rank != 1:
        return ChainSolution(ker.rank, (), HPoly.zero(field, d))
    sol = ker.rows[0]
    lead = sol.get(offsets[0])
    if lead is None or lead.is_zero():
        return ChainSolution(1, (), HPoly.zero(field, d))
    sol = {k: c / lead for k, c in sol.items()}
    Bs = []
    total = HPoly.zero(field, d)
    for nu in range(d + 1):
        deg = d - nu
        B = HPoly.zero(field, deg)
        for k in range(deg + 1):
            c = sol.get(offsets[nu] + k)
            if c is not None:
                B = B + multiply(z0 ** (deg - k), u**k).scale(c)
        Bs.append(B)
        total = total + multiply(L**nu, B)
    return ChainSolution(1, tuple(Bs), total)


def binary_projection_dim(S: Subspace) -> int:
    """Rank of ``S`` after substituting ``z2 = z3 = 0``."""
    if S.degree is None:
        raise ValueError("subspace must be attached to a graded piece")
    d = S.degree
    vecs = []
    for g in S.basis_polys():
        vecs.append({m[1]: c for m, c in g.terms.items() if m[2] == 0 and m[3] == 0})
    return rank(S.field, vecs, d + 1)


@dataclass(frozen=True)
class ThresholdResult:
    d: int
    floor: int
    t1: bool
    t2: bool
    t3: bool


def threshold_check(d: int) -> ThresholdResult:
    if d < 1:
        raise ValueError("degree must be positive")
    floor = comb(d + 2, 2) - 5
    unit = 2 * d - 1
    return ThresholdResult(d, floor, floor > unit, floor > 2 * unit, floor > 3 * unit)


# ---------------------------------------------------------------------------
# key-value spec blocks


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if "".join(cur).strip():
        parts.append("".join(cur).strip())
    return parts


def _scalar(text: str, field: Field) -> Scalar:
    return parse_poly(text, field, 0).coeff((0, 0, 0, 0))


def parse_spec_block(text: str, field: Field | None = None):
    """Parse ``key = value`` lines into a :class:`PQFamilySpec` or :class:`TijFamilySpec`."""
    from .fields import parse_field

    kv = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        sep = "=" if "=" in line else ":"
        if sep not in line:
            raise SpecError(f"line {lineno}: expected key = value")
        k, v = line.split(sep, 1)
        kv[k.strip().lower()] = v.strip()
    if field is None:
        field = parse_field(kv.get("field", "q"))
    elif "field" in kv and parse_field(kv["field"]) != field:
        raise SpecError(f"spec field {kv['field']} conflicts with session field {field.tag}")
    try:
        family = kv.get("family", "tij" if "pair" in kv else "pq").lower()
        if family == "pq":
            sigma = tuple(int(x) for x in _split_top(kv.get("sigma", "1,2,3")))
            p, q, r = int(kv["p"]), int(kv["q"]), int(kv["r"])
            d = r * (p + q)
            return PQFamilySpec(
                field,
                sigma,
                p,
                q,
                r,
                _scalar(kv.get("c", "1"), field),
                tuple(_scalar(x, field) for x in _split_top(kv["cs"])),
                parse_poly(kv["w"], field, 1),
                parse_poly(kv["a"], field, d - 1),
            )
        if family == "tij":
            pair = tuple(int(x) for x in _split_top(kv["pair"]))
            A = parse_poly(kv["a"], field)
            d = A.degree + 1
            return TijFamilySpec(
                field,
                pair,
                parse_poly(kv["w"], field, 1),
                A,
                parse_poly(kv.get("b", "0"), field, d - 2),
                _scalar(kv.get("ci", "1"), field),
                _scalar(kv.get("cj", "1"), field),
            )
    except KeyError as exc:
        raise SpecError(f"missing key {exc.args[0]!r}") from None
    except ParseError as exc:
        raise SpecError(f"bad polynomial: {exc}") from None
    raise SpecError(f"unknown family {family!r}")


def format_spec_block(spec) -> str:
    lines = [f"field = {spec.field.tag}"]
    if isinstance(spec, PQFamilySpec):
        lines += [
            "family = pq",
            "sigma = " + ",".join(map(str, spec.sigma)),
            f"p = {spec.p}",
            f"q = {spec.q}",
            f"r = {spec.r}",
            f"c = {format_scalar(spec.c)}",
            "cs = " + ", ".join(format_scalar(x) for x in spec.cs),
            f"w = {format_poly(spec.w)}",
            f"A = {format_poly(spec.A)}",
        ]
    else:
        lines += [
            "family = tij",
            "pair = " + ",".join(map(str, spec.pair)),
            f"w = {format_poly(spec.w)}",
            f"A = {format_poly(spec.A)}",
            f"B = {format_poly(spec.B)}",
            f"ci = {format_scalar(spec.ci)}",
            f"cj = {format_scalar(spec.cj)}",
        ]
    return "\n".join(lines) + "\n"
