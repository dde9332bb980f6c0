"""Twisted Jacobian rings, the socle functional and annihilator ideals.

For a surface ``F`` of degree ``d`` the ideal is generated by

    dF/dz0,  z1 dF/dz1,  z2 dF/dz2,  z3 dF/dz3        (degrees d-1, d, d, d)

and ``F`` is *transversal* when the quotient ring vanishes in degree ``4d-4``.
The quotient is then Gorenstein with one-dimensional socle in degree
``N = 4d-5``, and the functional ``tau`` on ``P^N`` reads off the socle
coordinate of the normal form.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb

from .fields import Field, Scalar
from .graded import IdealSpec, ci_series_coeff, hilbert, ideal_piece, is_complete_intersection, monomial_quotient_count
from .linalg import Subspace, kernel, membership, quotient_dim, rank, reduce_vector, span
from .poly import HPoly, _index_table, ambient_dim, monomials, multiply, partial, var

__all__ = [
    "JacobianRing",
    "NotTransversal",
    "Degenerate",
    "jacobian_ideal",
    "tangent_pair",
    "pairing_matrix",
    "pairing_perfect",
    "lam_star",
    "annihilator_piece",
    "annihilator_supplier",
    "annihilator_by_product",
    "omega_F",
    "xi_F",
    "eta_F",
    "kappa_F",
    "mult_kernel",
    "Th31Result",
    "th31_check",
    "OtwinowskaResult",
    "otwinowska_check",
]


class NotTransversal(ValueError):
    def __init__(self, message: str, degree: int | None = None, value: int | None = None):
        super().__init__(message)
        self.degree = degree
        self.value = value


class Degenerate(ValueError):
    """The functional ``x -> tau(lam * x)`` vanishes identically."""


def jacobian_ideal(F: HPoly) -> IdealSpec:
    gens = [partial(F, 0)] + [multiply(var(i, F.field), partial(F, i)) for i in (1, 2, 3)]
    if any(g.is_zero() for g in gens):
        raise NotTransversal("a Jacobian generator vanishes identically", 4 * F.degree - 4)
    return IdealSpec(F.field, tuple(gens))


@dataclass(frozen=True, eq=False)
class JacobianRing:
    """Quotient ``P / J_F`` of a transversal surface.

    Graded pieces, normal forms and ``tau`` are computed on first use and
    memoised on the instance; nothing observable changes after construction.
    """

    F: HPoly
    ideal: IdealSpec
    _memo: dict = dc_field(default_factory=dict, repr=False)

    @classmethod
    def build(cls, F: HPoly) -> "JacobianRing":
        d = F.degree
        if d < 4:
            raise ValueError(f"surface degree must be at least 4, got {d}")
        I = jacobian_ideal(F)
        top = 4 * d - 4
        h = hilbert(I, top)
        if h != 0:
            raise NotTransversal(
                f"quotient by the Jacobian ideal has dimension {h} in degree {top}", top, h
            )
        return cls(F, I)

    # -- basic data ----------------------------------------------------------
    @property
    def field(self) -> Field:
        return self.F.field

    @property
    def d(self) -> int:
        return self.F.degree

    @property
    def socle_degree(self) -> int:
        return 4 * self.d - 5

    @property
    def pairing_degree(self) -> int:
        """Degree ``3d-4`` on which the functional ``lam*`` lives."""
        return 3 * self.d - 4

    def _memoize(self, key, fn):
        try:
            return self._memo[key]
        except KeyError:
            v = self._memo[key] = fn()
            return v

    def piece(self, l: int) -> Subspace:
        """``J_F ∩ P^l`` in reduced echelon form."""
        return self._memoize(("piece", l), lambda: ideal_piece(self.ideal, l))

    def hilbert(self, l: int) -> int:
        if ("piece", l) in self._memo:
            return quotient_dim(self._memo[("piece", l)])
        return self._memoize(("hilbert", l), lambda: hilbert(self.ideal, l))

    def standard_columns(self, l: int) -> list[int]:
        """Indices of monomials whose classes form a basis of ``R^l``."""
        return self.piece(l).free_columns()

    def standard_monomials(self, l: int) -> list:
        basis = monomials(l)
        return [basis[j] for j in self.standard_columns(l)]

    def normal_form(self, f: HPoly) -> HPoly:
        """Representative of the class of ``f`` supported on standard monomials."""
        if f.is_zero():
            return f
        return HPoly.from_vector(self.field, f.degree, reduce_vector(f.to_vector(), self.piece(f.degree)))

    def is_zero_class(self, f: HPoly) -> bool:
        return f.is_zero() or membership(f, self.piece(f.degree))

    # -- socle functional --------------------------------------------------------
    @property
    def tau(self) -> dict:
        """``tau`` as a coefficient vector on ``P^(4d-5)`` (index -> scalar)."""
        return self._memoize("tau", self._compute_tau)

    def _compute_tau(self) -> dict:
        J = self.piece(self.socle_degree)
        free = J.free_columns()
        if len(free) != 1:
            raise NotTransversal(f"socle has dimension {len(free)}", self.socle_degree, len(free))
        s = free[0]
        vec = {s: self.field.one}
        for p, row in zip(J.pivots, J.rows):
            c = row.get(s)
            if c is not None and not c.is_zero():
                vec[p] = -c
        return vec

    def tau_mono(self, m) -> Scalar:
        return self.tau.get(_index_table(self.socle_degree)[tuple(m)], self.field.zero)

    def tau_of(self, f: HPoly) -> Scalar:
        if f.is_zero():
            return self.field.zero
        if f.degree != self.socle_degree:
            raise ValueError(f"tau is defined on degree {self.socle_degree}")
        idx = _index_table(self.socle_degree)
        tau = self.tau
        total = self.field.zero
        for m, c in f.terms.items():
            t = tau.get(idx[m])
            if t is not None:
                total = total + c * t
        return total


# ---------------------------------------------------------------------------


def tangent_pair(G: HPoly, lam: HPoly, R: JacobianRing) -> HPoly:
    """Normal form of ``G * lam`` in ``R^(2d-1)``."""
    d = R.d
    if G.degree != d or lam.degree != d - 1:
        raise ValueError(f"expected degrees ({d}, {d - 1}), got ({G.degree}, {lam.degree})")
    return R.normal_form(multiply(G, lam))


def pairing_matrix(R: JacobianRing, l: int) -> list[dict]:
    """Rows ``x``, columns ``y``: ``tau(x*y)`` on standard monomials of ``R^l`` and ``R^(N-l)``."""
    N = R.socle_degree
    xs = R.standard_monomials(l)
    ys = R.standard_monomials(N - l)
    rows = []
    for x in xs:
        row = {}
        for k, y in enumerate(ys):
            v = R.tau_mono((x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]))
            if not v.is_zero():
                row[k] = v
        rows.append(row)
    return rows


def pairing_perfect(R: JacobianRing, l: int) -> bool:
    N = R.socle_degree
    if not 0 <= l <= N:
        raise ValueError(f"pairing degree must lie in 0..{N}")
    nx = len(R.standard_columns(l))
    ny = len(R.standard_columns(N - l))
    if nx != ny:
        return False
    return rank(R.field, pairing_matrix(R, l), ny) == nx


def lam_star(R: JacobianRing, lam: HPoly) -> dict:
    """The functional ``u -> tau(lam*u)`` on ``P^(3d-4)`` as a coefficient vector."""
    if lam.degree != R.d - 1:
        raise ValueError(f"lam must have degree {R.d - 1}")
    key = ("lam*", lam)
    if key in R._memo:
        return R._memo[key]
    out = {}
    terms = list(lam.terms.items())
    for k, u in enumerate(monomials(R.pairing_degree)):
        acc = R.field.zero
        for t, c in terms:
            v = R.tau_mono((t[0] + u[0], t[1] + u[1], t[2] + u[2], t[3] + u[3]))
            if not v.is_zero():
                acc = acc + c * v
        if not acc.is_zero():
            out[k] = acc
    R._memo[key] = out
    return out


def annihilator_piece(R: JacobianRing, lam: HPoly, l: int) -> Subspace:
    """``{x in P^l : tau(lam*x*y) = 0 for all y in P^(3d-4-l)}``."""
    star = lam_star(R, lam)
    if not star:
        raise Degenerate("lam lies in the degree d-1 piece of the Jacobian ideal")
    M = R.pairing_degree
    if l > M:
        return Subspace.full(R.field, ambient_dim(l), l)
    key = ("ann", lam, l)
    if key in R._memo:
        return R._memo[key]
    idx = _index_table(M)
    xs = monomials(l)
    rows = []
    for y in monomials(M - l):
        row = {}
        for j, x in enumerate(xs):
            v = star.get(idx[(x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3])])
            if v is not None:
                row[j] = v
        if row:
            rows.append(row)
    out = kernel(R.field, rows, len(xs), l)
    R._memo[key] = out
    return out


def annihilator_supplier(R: JacobianRing, lam: HPoly):
    return lambda l: annihilator_piece(R, lam, l)


def annihilator_by_product(R: JacobianRing, lam: HPoly, l: int | None = None) -> Subspace:
    """``{x in P^l : lam*x = 0 in R^(l+d-1)}``; equals the annihilator piece for ``l = d``."""
    l = R.d if l is None else l
    target = l + lam.degree
    J = R.piece(target)
    free = J.free_columns()
    pos = {s: k for k, s in enumerate(free)}
    rows = [dict() for _ in free]
    for j, x in enumerate(monomials(l)):
        nf = reduce_vector(lam.mul_mono(x).to_vector(), J)
        for s, c in nf.items():
            rows[pos[s]][j] = c
    return kernel(R.field, rows, ambient_dim(l), l)


# ---------------------------------------------------------------------------
# distinguished elements of P^(d-1)


def omega_F(R: JacobianRing) -> HPoly:
    return partial(R.F, 0)


def kappa_F(R: JacobianRing) -> HPoly:
    return partial(R.F, 1)


def _euler_pair(f: HPoly, i: int, j: int, a: int, b: int) -> HPoly:
    """``a * z_i * df/dz_i - b * z_j * df/dz_j``."""
    field = f.field
    return multiply(var(i, field), partial(f, i)).scale(a) - multiply(var(j, field), partial(f, j)).scale(b)


def xi_F(spec) -> HPoly:
    """Second distinguished element of a ``(p, q)`` family member.

    ``spec`` needs ``sigma``, ``p``, ``q``, ``w`` and ``A``.
    """
    s2, s3 = spec.sigma[1], spec.sigma[2]
    w, A = spec.w, spec.A
    if w.degree != 1:
        raise ValueError("w must be linear")
    first = _euler_pair(A, s2, s3, spec.q, spec.p)
    second = _euler_pair(w, s2, s3, spec.q, spec.p)
    dw0 = partial(w, 0)
    return multiply(dw0, first) - multiply(partial(A, 0), second)


def eta_F(w: HPoly, A: HPoly, L: HPoly) -> HPoly:
    """``A + z1 dA/dz1 + z2 dA/dz2 + L dA/dz0`` for a surface ``wA + sum b_mu z3^mu (L - z0)^(d-mu)``."""
    if w.degree != 1 or L.degree != 1:
        raise ValueError("w and L must be linear")
    field = A.field
    out = A
    for i in (1, 2):
        out = out + multiply(var(i, field), partial(A, i))
    return out + multiply(L, partial(A, 0))


def mult_kernel(R: JacobianRing, w: HPoly) -> Subspace:
    """``{y in P^(d-1) : w*y lies in J_F}``."""
    if w.is_zero():
        raise ValueError("w must be nonzero")
    return annihilator_by_product(R, w, R.d - 1)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Th31Result:
    dim: int
    floor: int
    equality: bool
    ci_certified: bool


def th31_check(R: JacobianRing, lam: HPoly) -> Th31Result:
    d = R.d
    dim = quotient_dim(annihilator_piece(R, lam, d))
    floor = comb(d + 2, 2) - 5
    equality = dim == floor
    ci = equality and is_complete_intersection(annihilator_supplier(R, lam), (1, d - 1, d, d))
    return Th31Result(dim, floor, equality, bool(ci))


@dataclass(frozen=True)
class OtwinowskaResult:
    lhs: int
    rhs: int
    holds: bool


def otwinowska_check(R: JacobianRing, lam: HPoly, l: int) -> OtwinowskaResult:
    d = R.d
    if not 1 <= l <= 3 * d - 4:
        raise ValueError(f"l must lie in 1..{3 * d - 4}")
    lhs = quotient_dim(annihilator_piece(R, lam, l))
    rhs = monomial_quotient_count((1, d - 1, d, d), l)
    return OtwinowskaResult(lhs, rhs, lhs >= rhs)
