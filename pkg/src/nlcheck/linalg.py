"""Exact linear algebra on coefficient vectors.

Vectors are sparse ``{column: Scalar}`` maps.  A :class:`Subspace` is stored in
reduced row echelon form, which is unique, so equality of subspaces is equality
of their echelon data.

Backends: FLINT's ``fmpq_mat`` over Q (fraction-free internally), ``nmod_mat``
over prime fields, and the regular representation over a cyclotomic field
(each K-row becomes phi(n) rational rows, see :func:`_rref_cyclotomic`).  A
plain Gauss-Jordan implementation, :func:`rref_reference`, is kept as an
independent oracle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import flint

from .fields import Field, FieldMismatch, PrimeField, Scalar, _is_prime
from .poly import HPoly, ambient_dim, monomials

__all__ = [
    "Subspace",
    "AmbientMismatch",
    "RankDisagreement",
    "rref",
    "rref_reference",
    "rank",
    "matrix_rank",
    "modular_rank",
    "span",
    "span_vectors",
    "kernel",
    "quotient_dim",
    "subspace_equal",
    "membership",
    "subspace_sum",
    "intersect",
    "reduce_vector",
    "rank_crosscheck",
    "CERT_PRIME",
]

Vector = dict  # column -> Scalar

# Prime used for the one-sided rank certificate: rank mod p <= rank over Q.
CERT_PRIME = 2**62 - 57


class AmbientMismatch(ValueError):
    pass


class RankDisagreement(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# backends


def _fmpq(x: Fraction):
    return flint.fmpq(x.numerator, x.denominator)


def _from_fmpq(q) -> Fraction:
    return Fraction(int(q.p), int(q.q))


def _scan_pivots(E, rank: int, ncols: int) -> list[int]:
    pivots = []
    j = 0
    for i in range(rank):
        while E[i, j] == 0:
            j += 1
        pivots.append(j)
        j += 1
    return pivots


def _rref_q(field: Field, rows: Sequence[Vector], ncols: int):
    M = flint.fmpq_mat(len(rows), ncols)
    cache: dict = {}
    for i, r in enumerate(rows):
        for j, c in r.items():
            v = cache.get(c.val)
            if v is None:
                v = cache[c.val] = _fmpq(c.val)
            M[i, j] = v
    E, rk = M.rref()
    pivots = _scan_pivots(E, rk, ncols)
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    one = field.one
    out = []
    for i, p in enumerate(pivots):
        row = {p: one}
        for j in free:
            if j > p:
                x = E[i, j]
                if x != 0:
                    row[j] = field(_from_fmpq(x))
        out.append(row)
    return pivots, out


def _rref_fp(field: Field, rows: Sequence[Vector], ncols: int):
    p = field.n
    M = flint.nmod_mat(len(rows), ncols, p)
    for i, r in enumerate(rows):
        for j, c in r.items():
            M[i, j] = c.val
    E, rk = M.rref()
    pivots = _scan_pivots(E, rk, ncols)
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    out = []
    for i, piv in enumerate(pivots):
        row = {piv: field.one}
        for j in free:
            if j > piv:
                x = int(E[i, j])
                if x:
                    row[j] = field(x)
        out.append(row)
    return pivots, out


def _rref_cyclotomic(field: Field, rows: Sequence[Vector], ncols: int):
    """Row reduce over K = Q(zeta_n) through a rational matrix.

    Column ``(j, c)`` of the rational matrix carries coordinate ``c`` of entry
    ``j``; each K-row ``r`` contributes the rows ``zeta^k * r``.  Their rational
    span is the K-span, and the rational echelon rows pivoting at ``(j, 0)`` are
    exactly the K-echelon rows.
    """
    if all(c.is_rational() for r in rows for c in r.values()):
        q = Field("Q")
        piv, out = _rref_q(q, [{j: q(c.val[0]) for j, c in r.items()} for r in rows], ncols)
        return piv, [{j: field(c.val) for j, c in r.items()} for r in out]
    phi = field.degree
    zetas = [field.zeta(k) for k in range(phi)]
    M = flint.fmpq_mat(len(rows) * phi, ncols * phi)
    for i, r in enumerate(rows):
        for k, z in enumerate(zetas):
            ri = i * phi + k
            for j, c in r.items():
                v = c * z if k else c
                for comp, x in enumerate(v.val):
                    if x:
                        M[ri, j * phi + comp] = _fmpq(x)
    E, rk = M.rref()
    qpiv = _scan_pivots(E, rk, ncols * phi)
    kpiv = [(i, qp // phi) for i, qp in enumerate(qpiv) if qp % phi == 0]
    kpivset = {j for _, j in kpiv}
    pivots, out = [], []
    for i, j0 in kpiv:
        row = {j0: field.one}
        for j in range(j0 + 1, ncols):
            if j in kpivset:
                continue
            coords = [_from_fmpq(E[i, j * phi + c]) for c in range(phi)]
            if any(coords):
                row[j] = field.from_coords(coords)
        pivots.append(j0)
        out.append(row)
    return pivots, out


def rref_reference(field: Field, rows: Sequence[Vector], ncols: int):
    """Textbook Gauss-Jordan over any field (slow; used as an oracle)."""
    work = [dict(r) for r in rows if any(not c.is_zero() for c in r.values())]
    pivots: list[int] = []
    done: list[Vector] = []
    for col in range(ncols):
        k = next((i for i, r in enumerate(work) if col in r and not r[col].is_zero()), None)
        if k is None:
            continue
        r = work.pop(k)
        inv = r[col].inverse()
        r = {j: c * inv for j, c in r.items() if not c.is_zero()}
        for others in (work, done):
            for idx, o in enumerate(others):
                t = o.get(col)
                if t is not None and not t.is_zero():
                    n = dict(o)
                    for j, c in r.items():
                        v = n.get(j, field.zero) - t * c
                        if v.is_zero():
                            n.pop(j, None)
                        else:
                            n[j] = v
                    others[idx] = n
        pivots.append(col)
        done.append(r)
    return pivots, done


def rref(field: Field, rows: Sequence[Vector], ncols: int):
    """Reduced row echelon form: (pivot columns, rows) with unit pivots."""
    rows = [r for r in rows if r]
    if not rows or ncols == 0:
        return [], []
    for r in rows:
        for c in r.values():
            if c.field != field:
                raise FieldMismatch(f"{c.field.tag} entry in a {field.tag} matrix")
    if field.kind == "Q":
        return _rref_q(field, rows, ncols)
    if field.kind == "fp":
        return _rref_fp(field, rows, ncols)
    return _rref_cyclotomic(field, rows, ncols)


def modular_rank(field: Field, rows: Sequence[Vector], ncols: int, p: int) -> int | None:
    """Rank of the reduction mod ``p`` of a rational matrix (``None`` if a denominator vanishes)."""
    if field.kind != "Q":
        raise ValueError("modular reduction is defined for rational matrices")
    M = flint.nmod_mat(len(rows), ncols, p)
    for i, r in enumerate(rows):
        for j, c in r.items():
            x = c.val
            if x.denominator % p == 0:
                return None
            M[i, j] = x.numerator * pow(x.denominator, -1, p) % p
    return M.rank()


def rank(field: Field, rows: Sequence[Vector], ncols: int, certify: bool = True) -> int:
    """Exact rank.  Over Q a full modular rank is accepted as a certificate."""
    rows = [r for r in rows if r]
    if not rows or ncols == 0:
        return 0
    if field.kind == "fp":
        M = flint.nmod_mat(len(rows), ncols, field.n)
        for i, r in enumerate(rows):
            for j, c in r.items():
                M[i, j] = c.val
        return M.rank()
    if field.kind == "Q":
        full = min(len(rows), ncols)
        if certify:
            mr = modular_rank(field, rows, ncols, CERT_PRIME)
            if mr == full:
                return full
        M = flint.fmpq_mat(len(rows), ncols)
        for i, r in enumerate(rows):
            for j, c in r.items():
                M[i, j] = _fmpq(c.val)
        return M.rank()
    return len(rref(field, rows, ncols)[0])


def matrix_rank(field: Field, M: Sequence[Sequence]) -> int:
    rows = [{j: field(x) for j, x in enumerate(r) if not field(x).is_zero()} for r in M]
    ncols = max((len(r) for r in M), default=0)
    return rank(field, rows, ncols)


# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Subspace:
    """Linear subspace of ``field^ambient`` in reduced row echelon form.

    ``degree`` records the graded piece ``P^degree`` when the coordinates are
    coefficients of degree-``degree`` monomials in canonical order.
    """

    field: Field
    ambient: int
    pivots: tuple
    rows: tuple
    degree: int | None = None

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def codim(self) -> int:
        return self.ambient - len(self.pivots)

    def free_columns(self) -> list[int]:
        ps = set(self.pivots)
        return [j for j in range(self.ambient) if j not in ps]

    def basis_polys(self) -> list[HPoly]:
        if self.degree is None:
            raise ValueError("subspace is not attached to a graded piece")
        return [HPoly.from_vector(self.field, self.degree, r) for r in self.rows]

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return subspace_equal(self, other)

    def __hash__(self):
        return hash((self.field, self.ambient, self.pivots))

    def __repr__(self):
        deg = "" if self.degree is None else f", P^{self.degree}"
        return f"Subspace(rank {self.rank} in dim {self.ambient}{deg}, {self.field.tag})"

    @classmethod
    def zero(cls, field: Field, ambient: int, degree: int | None = None) -> "Subspace":
        return cls(field, ambient, (), (), degree)

    @classmethod
    def full(cls, field: Field, ambient: int, degree: int | None = None) -> "Subspace":
        return cls(field, ambient, tuple(range(ambient)), tuple({j: field.one} for j in range(ambient)), degree)


def span_vectors(field: Field, ambient: int, vectors: Iterable[Mapping[int, Scalar]],
                 degree: int | None = None) -> Subspace:
    rows = []
    for v in vectors:
        if any(j < 0 or j >= ambient for j in v):
            raise AmbientMismatch("vector index out of range")
        rows.append({j: c for j, c in v.items() if not c.is_zero()})
    piv, out = rref(field, rows, ambient)
    return Subspace(field, ambient, tuple(piv), tuple(out), degree)


def span(polys: Sequence[HPoly], l: int, field: Field | None = None) -> Subspace:
    """Span of degree-``l`` polynomials inside ``P^l``."""
    if field is None:
        if not polys:
            raise ValueError("field required for an empty span")
        field = polys[0].field
    vecs = []
    for f in polys:
        if f.field != field:
            raise FieldMismatch(f"{f.field.tag} polynomial in a {field.tag} span")
        if f.degree != l and not f.is_zero():
            raise AmbientMismatch(f"degree {f.degree} polynomial in P^{l}")
        vecs.append(f.to_vector() if f.degree == l else {})
    return span_vectors(field, ambient_dim(l), vecs, l)


def kernel(field: Field, functionals: Sequence[Mapping[int, Scalar]], ambient: int,
           degree: int | None = None) -> Subspace:
    """Common kernel of linear functionals given as coefficient vectors."""
    for v in functionals:
        if any(j < 0 or j >= ambient for j in v):
            raise AmbientMismatch("functional length does not match the ambient space")
    piv, rows = rref(field, [dict(v) for v in functionals], ambient)
    pivset = set(piv)
    basis = []
    for f in range(ambient):
        if f in pivset:
            continue
        v = {f: field.one}
        for p, r in zip(piv, rows):
            c = r.get(f)
            if c is not None and not c.is_zero():
                v[p] = -c
        basis.append(v)
    return span_vectors(field, ambient, basis, degree)


def quotient_dim(sub: Subspace) -> int:
    return sub.ambient - sub.rank


def _same_ambient(a: Subspace, b: Subspace):
    if a.field != b.field:
        raise FieldMismatch(f"{a.field.tag} vs {b.field.tag}")
    if a.ambient != b.ambient or (a.degree is not None and b.degree is not None and a.degree != b.degree):
        raise AmbientMismatch("subspaces live in different ambient spaces")


def subspace_equal(a: Subspace, b: Subspace) -> bool:
    _same_ambient(a, b)
    return a.pivots == b.pivots and a.rows == b.rows


def reduce_vector(v: Mapping[int, Scalar], a: Subspace) -> dict:
    """Normal form of ``v`` modulo ``a``: clears every pivot coordinate."""
    out = {j: c for j, c in v.items() if not c.is_zero()}
    for p, r in zip(a.pivots, a.rows):
        t = out.get(p)
        if t is None:
            continue
        for j, c in r.items():
            x = out.get(j)
            x = -(t * c) if x is None else x - t * c
            if x.is_zero():
                out.pop(j, None)
            else:
                out[j] = x
    return out


def membership(v, a: Subspace) -> bool:
    if isinstance(v, HPoly):
        if a.degree is not None and v.degree != a.degree and not v.is_zero():
            raise AmbientMismatch(f"degree {v.degree} polynomial tested against P^{a.degree}")
        v = v.to_vector() if v.degree == a.degree else {}
    return not reduce_vector(v, a)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _same_ambient(a, b)
    return span_vectors(a.field, a.ambient, list(a.rows) + list(b.rows), a.degree)


def _perp(a: Subspace) -> Subspace:
    return kernel(a.field, a.rows, a.ambient, a.degree)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """``a ∩ b`` as the annihilator of ``a^perp + b^perp``."""
    _same_ambient(a, b)
    both = list(_perp(a).rows) + list(_perp(b).rows)
    return kernel(a.field, both, a.ambient, a.degree)


def rank_crosscheck(rows: Sequence[Vector], ncols: int, q_rank: int, primes: Sequence[int] | None = None,
                    rng: random.Random | None = None) -> dict:
    """Compare a rational rank with ranks modulo primes.

    Retries on a fresh prime once on disagreement; a modular rank above the
    rational one is impossible and raises :class:`RankDisagreement`.
    """
    rng = rng or random.Random(0)
    primes = list(primes or [65537])
    report = {"q_rank": q_rank, "modular": {}}
    field = Field("Q")
    for p in primes:
        mr = modular_rank(field, rows, ncols, p)
        tries = 0
        while mr != q_rank:
            if mr is not None and mr > q_rank:
                raise RankDisagreement(f"rank mod {p} = {mr} exceeds rank over Q = {q_rank}")
            if tries >= 1:
                raise RankDisagreement(f"persistent rank disagreement at p = {p}")
            p = _random_prime(rng)
            mr = modular_rank(field, rows, ncols, p)
            tries += 1
        report["modular"][p] = mr
    return report


def _random_prime(rng: random.Random, lo: int = 10**6, hi: int = 2**31) -> int:
    while True:
        p = rng.randrange(lo, hi) | 1
        if _is_prime(p):
            return p
