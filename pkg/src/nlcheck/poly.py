"""Monomials and homogeneous polynomials in z0, z1, z2, z3.

Monomials are exponent 4-tuples.  The canonical basis order of a graded piece
is graded lexicographic with z0 > z1 > z2 > z3, so in degree 2 the basis starts
``z0^2, z0*z1, z0*z2, z0*z3, z1^2, ...``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb
from typing import Iterable, Mapping, Sequence

from .fields import Field, FieldMismatch, Scalar

__all__ = [
    "Mono",
    "HPoly",
    "monomials",
    "mono_index",
    "mono_degree",
    "ambient_dim",
    "var",
    "multiply",
    "partial",
    "restrict_line",
    "substitute_linear",
    "divide_exact",
    "change_field",
    "random_hpoly",
    "SingularMatrix",
    "NotDivisible",
]

Mono = tuple  # (a0, a1, a2, a3)
NVARS = 4


class SingularMatrix(ValueError):
    pass


class NotDivisible(ValueError):
    pass


def mono_degree(m: Mono) -> int:
    return sum(m)


@lru_cache(maxsize=None)
def monomials(l: int) -> tuple[Mono, ...]:
    """All degree-``l`` monomials in canonical order."""
    if l < 0:
        return ()
    out = []
    for a0 in range(l, -1, -1):
        for a1 in range(l - a0, -1, -1):
            for a2 in range(l - a0 - a1, -1, -1):
                out.append((a0, a1, a2, l - a0 - a1 - a2))
    return tuple(out)


@lru_cache(maxsize=None)
def _index_table(l: int) -> dict:
    return {m: k for k, m in enumerate(monomials(l))}


def mono_index(m: Mono) -> int:
    return _index_table(sum(m))[m]


def ambient_dim(l: int) -> int:
    return comb(l + 3, 3) if l >= 0 else 0


def mono_mul(a: Mono, b: Mono) -> Mono:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])


class HPoly:
    """Homogeneous polynomial of a declared degree.

    ``terms`` maps monomials of degree exactly ``degree`` to nonzero scalars of
    ``field``.  Instances are treated as immutable.
    """

    __slots__ = ("field", "degree", "terms")

    def __init__(self, field: Field, degree: int, terms: Mapping[Mono, Scalar] | None = None):
        if degree < 0:
            raise ValueError("degree must be non-negative")
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != NVARS or any(e < 0 for e in m):
                raise ValueError(f"bad monomial {m}")
            if sum(m) != degree:
                raise ValueError(f"monomial {m} has degree {sum(m)}, expected {degree}")
            c = field(c)
            if not c.is_zero():
                clean[m] = c
        self.field = field
        self.degree = degree
        self.terms = clean

    @classmethod
    def _raw(cls, field: Field, degree: int, terms: dict) -> "HPoly":
        obj = object.__new__(cls)
        obj.field = field
        obj.degree = degree
        obj.terms = terms
        return obj

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, field: Field, degree: int = 0) -> "HPoly":
        return cls._raw(field, degree, {})

    @classmethod
    def constant(cls, field: Field, c) -> "HPoly":
        return cls(field, 0, {(0, 0, 0, 0): c})

    @classmethod
    def monomial(cls, field: Field, m: Mono, c=1) -> "HPoly":
        return cls(field, sum(m), {tuple(m): c})

    @classmethod
    def from_vector(cls, field: Field, degree: int, vec: Mapping[int, Scalar]) -> "HPoly":
        basis = monomials(degree)
        return cls._raw(field, degree, {basis[k]: c for k, c in vec.items() if not c.is_zero()})

    def to_vector(self) -> dict:
        idx = _index_table(self.degree)
        return {idx[m]: c for m, c in self.terms.items()}

    # -- predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, HPoly):
            return NotImplemented
        return self.field == other.field and self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, self.degree, frozenset(self.terms.items())))

    def coeff(self, m: Mono) -> Scalar:
        return self.terms.get(tuple(m), self.field.zero)

    def sorted_terms(self) -> list:
        idx = _index_table(self.degree)
        return sorted(self.terms.items(), key=lambda t: idx[t[0]])

    def variables(self) -> set[int]:
        return {i for m in self.terms for i in range(NVARS) if m[i]}

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.terms.values())

    # -- arithmetic --------------------------------------------------------
    def _check(self, other: "HPoly"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field.tag} vs {other.field.tag}")

    def __add__(self, other: "HPoly") -> "HPoly":
        if not isinstance(other, HPoly):
            return NotImplemented
        self._check(other)
        if self.degree != other.degree:
            if self.is_zero():
                return other
            if other.is_zero():
                return self
            raise ValueError(f"cannot add degrees {self.degree} and {other.degree}")
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return HPoly._raw(self.field, self.degree, out)

    def __neg__(self) -> "HPoly":
        return HPoly._raw(self.field, self.degree, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "HPoly") -> "HPoly":
        if not isinstance(other, HPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "HPoly":
        c = self.field(c)
        if c.is_zero():
            return HPoly.zero(self.field, self.degree)
        return HPoly._raw(self.field, self.degree, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HPoly):
            return multiply(self, other)
        if isinstance(other, (int, Fraction, Scalar)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "HPoly":
        result = HPoly.constant(self.field, 1)
        for _ in range(k):
            result = multiply(result, self)
        return result

    def mul_mono(self, m: Mono) -> "HPoly":
        return HPoly._raw(self.field, self.degree + sum(m), {mono_mul(a, m): c for a, c in self.terms.items()})

    def evaluate(self, point: Sequence) -> Scalar:
        pt = [self.field(x) for x in point]
        total = self.field.zero
        for m, c in self.terms.items():
            t = c
            for x, e in zip(pt, m):
                if e:
                    t = t * x**e
            total = total + t
        return total

    # -- display -----------------------------------------------------------
    def __str__(self) -> str:
        from .parse import format_poly

        return format_poly(self)

    def __repr__(self) -> str:
        return f"HPoly({self.field.tag}, deg {self.degree}: {self})"


def var(i: int, field: Field) -> HPoly:
    m = [0, 0, 0, 0]
    m[i] = 1
    return HPoly._raw(field, 1, {tuple(m): field.one})


def linear_form(coeffs: Sequence, field: Field) -> HPoly:
    return HPoly(field, 1, {tuple(int(j == i) for j in range(4)): c for i, c in enumerate(coeffs)})


def multiply(f: HPoly, g: HPoly) -> HPoly:
    if f.field != g.field:
        raise FieldMismatch(f"{f.field.tag} vs {g.field.tag}")
    out: dict = {}
    for a, ca in f.terms.items():
        for b, cb in g.terms.items():
            m = (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])
            prev = out.get(m)
            out[m] = ca * cb if prev is None else prev + ca * cb
    out = {m: c for m, c in out.items() if not c.is_zero()}
    return HPoly._raw(f.field, f.degree + g.degree, out)


def partial(f: HPoly, i: int) -> HPoly:
    """Formal derivative in ``z_i``; a degree-0 input yields the degree-0 zero."""
    if f.degree == 0:
        return HPoly.zero(f.field, 0)
    out = {}
    for m, c in f.terms.items():
        e = m[i]
        if e:
            n = list(m)
            n[i] -= 1
            out[tuple(n)] = c * e
    out = {m: c for m, c in out.items() if not c.is_zero()}  # char p can kill terms
    return HPoly._raw(f.field, f.degree - 1, out)


def restrict_line(f: HPoly, i: int, j: int):
    """Set ``z_i = z_j = 0``; returns a form in the two surviving variables."""
    from .binary import BinaryForm

    if i == j:
        raise ValueError("restrict_line needs two distinct variables")
    a, b = [k for k in range(NVARS) if k not in (i, j)]
    coeffs = [f.field.zero] * (f.degree + 1)
    for m, c in f.terms.items():
        if m[i] == 0 and m[j] == 0:
            coeffs[m[b]] = c
    return BinaryForm(f.field, (a, b), tuple(coeffs))


def substitute_linear(f: HPoly, T: Sequence[Sequence]) -> HPoly:
    """Return ``f(T z)``: each ``z_i`` is replaced by ``sum_j T[i][j] z_j``."""
    from .linalg import matrix_rank

    field = f.field
    M = [[field(x) for x in row] for row in T]
    if len(M) != 4 or any(len(r) != 4 for r in M):
        raise ValueError("T must be 4x4")
    if matrix_rank(field, M) < 4:
        raise SingularMatrix("coordinate change is singular")
    forms = [linear_form(M[i], field) for i in range(4)]
    powers = [[HPoly.constant(field, 1)] for _ in range(4)]
    for i in range(4):
        for _ in range(f.degree):
            powers[i].append(multiply(powers[i][-1], forms[i]))
    total = HPoly.zero(field, f.degree)
    for m, c in f.terms.items():
        t = powers[0][m[0]]
        for i in range(1, 4):
            t = multiply(t, powers[i][m[i]])
        total = total + t.scale(c)
    return total


def divide_exact(f: HPoly, g: HPoly) -> HPoly:
    """Quotient ``f / g``; raises :class:`NotDivisible` if ``g`` does not divide ``f``."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.field != g.field:
        raise FieldMismatch(f"{f.field.tag} vs {g.field.tag}")
    qdeg = f.degree - g.degree
    if f.is_zero():
        return HPoly.zero(f.field, max(qdeg, 0))
    if qdeg < 0:
        raise NotDivisible("divisor has larger degree")
    lead_g = max(g.terms)  # lex order is a monomial order
    inv = g.terms[lead_g].inverse()
    rem = f
    quot: dict = {}
    while not rem.is_zero():
        lead = max(rem.terms)
        shift = tuple(x - y for x, y in zip(lead, lead_g))
        if any(e < 0 for e in shift):
            raise NotDivisible("nonzero remainder")
        c = rem.terms[lead] * inv
        quot[shift] = c
        rem = rem - g.mul_mono(shift).scale(c)
    return HPoly._raw(f.field, qdeg, quot)


def change_field(f: HPoly, field: Field) -> HPoly:
    """Reinterpret coefficients in ``field`` (Q embeds everywhere; Q reduces mod p)."""
    if f.field == field:
        return f
    out = {}
    for m, c in f.terms.items():
        if c.is_rational():
            v = field(c.to_fraction())
        else:
            v = field(c)
        if not v.is_zero():
            out[m] = v
    return HPoly._raw(field, f.degree, out)


def random_hpoly(field: Field, degree: int, rng: random.Random, lo: int = -9, hi: int = 9,
                 support: Iterable[Mono] | None = None) -> HPoly:
    """Polynomial with independent uniform integer coefficients in ``[lo, hi]``."""
    basis = monomials(degree) if support is None else tuple(support)
    return HPoly(field, degree, {m: rng.randint(lo, hi) for m in basis})
