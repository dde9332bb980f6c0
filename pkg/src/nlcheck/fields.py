"""Exact coefficient fields: the rationals, cyclotomic fields and prime fields.

A :class:`Field` is a small immutable tag; :class:`Scalar` pairs a field with a
payload:

* ``Q``            -- a :class:`fractions.Fraction` in lowest terms,
* ``Cyclotomic(n)``-- a tuple of ``phi(n)`` fractions, the coordinates of the
  element in the power basis ``1, zeta, ..., zeta^(phi(n)-1)`` with
  ``zeta = exp(2*pi*i/n)``,
* ``PrimeField(p)``-- an ``int`` in ``[0, p)``.

Arithmetic between different fields raises :class:`FieldMismatch`; there is no
silent embedding of one cyclotomic field into another.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

__all__ = [
    "Field",
    "Scalar",
    "FieldMismatch",
    "NotRepresentable",
    "Q",
    "Cyclotomic",
    "PrimeField",
    "parse_field",
    "root_of_unity_test",
]


class FieldMismatch(TypeError):
    """Operands live in different coefficient fields."""


class NotRepresentable(ValueError):
    """A value cannot be expressed in the requested field."""


@dataclass(frozen=True)
class Field:
    kind: str  # "Q" | "cyclotomic" | "fp"
    n: int = 0  # conductor for cyclotomic, characteristic for fp

    def __post_init__(self):
        if self.kind == "Q":
            if self.n != 0:
                raise ValueError("Q takes no modulus")
        elif self.kind == "cyclotomic":
            if self.n < 1:
                raise ValueError("cyclotomic conductor must be positive")
        elif self.kind == "fp":
            if self.n < 2 or not _is_prime(self.n):
                raise ValueError(f"{self.n} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    # -- descriptive -------------------------------------------------------
    @property
    def characteristic(self) -> int:
        return self.n if self.kind == "fp" else 0

    @property
    def degree(self) -> int:
        """Dimension over the prime field."""
        return euler_phi(self.n) if self.kind == "cyclotomic" else 1

    @property
    def tag(self) -> str:
        if self.kind == "Q":
            return "q"
        if self.kind == "cyclotomic":
            return f"zeta:{self.n}"
        return f"fp:{self.n}"

    def __str__(self) -> str:
        return self.tag

    def __repr__(self) -> str:
        return f"Field({self.tag})"

    # -- constructors ------------------------------------------------------
    @property
    def zero(self) -> "Scalar":
        return self(0)

    @property
    def one(self) -> "Scalar":
        return self(1)

    def zeta(self, power: int = 1) -> "Scalar":
        if self.kind != "cyclotomic":
            raise NotRepresentable(f"no primitive root of unity symbol in {self.tag}")
        phi = self.degree
        e = power % self.n
        coeffs = [Fraction(0)] * (2 * self.n)
        coeffs[e] = Fraction(1)
        return Scalar(self, _cyc_reduce(coeffs, self.n), _trusted=True)

    def __call__(self, x: Union[int, Fraction, "Scalar"]) -> "Scalar":
        if isinstance(x, Scalar):
            if x.field != self:
                if x.field.kind == "Q" and self.kind != "Q":
                    return self(x.val)
                if x.is_rational() and self.kind == "Q":
                    return Scalar(self, x.to_fraction(), _trusted=True)
                raise FieldMismatch(f"cannot coerce {x.field.tag} element into {self.tag}")
            return x
        if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
            raise TypeError(f"cannot build a scalar from {type(x).__name__}")
        if self.kind == "Q":
            return Scalar(self, Fraction(x), _trusted=True)
        if self.kind == "fp":
            x = Fraction(x)
            if x.denominator % self.n == 0:
                raise NotRepresentable(f"denominator {x.denominator} vanishes mod {self.n}")
            return Scalar(self, x.numerator * pow(x.denominator, -1, self.n) % self.n, _trusted=True)
        phi = self.degree
        return Scalar(self, (Fraction(x),) + (Fraction(0),) * (phi - 1), _trusted=True)

    def from_coords(self, coords) -> "Scalar":
        """Cyclotomic element from power-basis coordinates (any length; reduced)."""
        if self.kind != "cyclotomic":
            raise NotRepresentable("power-basis coordinates only apply to cyclotomic fields")
        coeffs = [Fraction(c) for c in coords]
        return Scalar(self, _cyc_reduce(coeffs, self.n), _trusted=True)


def Q() -> Field:
    return Field("Q")


def Cyclotomic(n: int) -> Field:
    return Field("cyclotomic", n)


def PrimeField(p: int) -> Field:
    return Field("fp", p)


def parse_field(tag: str) -> Field:
    """Parse ``q``, ``zeta:n`` or ``fp:p``."""
    t = tag.strip().lower()
    if t in ("q", "qq"):
        return Q()
    kind, _, rest = t.partition(":")
    try:
        n = int(rest)
    except ValueError:
        raise ValueError(f"bad field tag {tag!r}") from None
    if kind == "zeta":
        return Cyclotomic(n)
    if kind == "fp":
        return PrimeField(n)
    raise ValueError(f"bad field tag {tag!r}")


# ---------------------------------------------------------------------------
# number theory helpers


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, low degree first."""
    # x^n - 1 = prod_{k | n} Phi_k
    num = [-1] + [0] * (n - 1) + [1]
    for k in range(1, n):
        if n % k == 0:
            num = _int_poly_exact_div(num, list(cyclotomic_poly(k)))
    return tuple(num)


def _int_poly_exact_div(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    db = len(b) - 1
    out = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] // b[-1]
        out[k - db] = c
        for i, bi in enumerate(b):
            a[k - db + i] -= c * bi
    assert all(x == 0 for x in a[:db]), "inexact cyclotomic division"
    return out


def _cyc_reduce(coeffs: list[Fraction], n: int) -> tuple[Fraction, ...]:
    phi_coeffs = cyclotomic_poly(n)
    phi = len(phi_coeffs) - 1
    c = list(coeffs)
    for k in range(len(c) - 1, phi - 1, -1):
        t = c[k]
        if t:
            # Phi_n is monic: x^phi = -sum_{i<phi} Phi_i x^i
            for i in range(phi):
                if phi_coeffs[i]:
                    c[k - phi + i] -= t * phi_coeffs[i]
            c[k] = Fraction(0)
    c = c[:phi] + [Fraction(0)] * max(0, phi - len(c))
    return tuple(c)


# ---------------------------------------------------------------------------


class Scalar:
    """An immutable element of a :class:`Field`."""

    __slots__ = ("field", "val")

    def __init__(self, field: Field, val, _trusted: bool = False):
        if not _trusted:
            val = field(val).val if not isinstance(val, tuple) else field.from_coords(val).val
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "val", val)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- coercion ----------------------------------------------------------
    def _other(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field.tag} vs {other.field.tag}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field(other)
        return NotImplemented

    # -- predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        if self.field.kind == "cyclotomic":
            return not any(self.val)
        return self.val == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_one(self) -> bool:
        return self == self.field.one

    def is_rational(self) -> bool:
        if self.field.kind == "cyclotomic":
            return not any(self.val[1:])
        return self.field.kind == "Q"

    def to_fraction(self) -> Fraction:
        if self.field.kind == "Q":
            return self.val
        if self.field.kind == "cyclotomic" and self.is_rational():
            return self.val[0]
        raise NotRepresentable(f"{self} is not rational")

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        f = self.field
        if f.kind == "Q":
            return Scalar(f, self.val + o.val, _trusted=True)
        if f.kind == "fp":
            return Scalar(f, (self.val + o.val) % f.n, _trusted=True)
        return Scalar(f, tuple(a + b for a, b in zip(self.val, o.val)), _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        if f.kind == "Q":
            return Scalar(f, -self.val, _trusted=True)
        if f.kind == "fp":
            return Scalar(f, (-self.val) % f.n, _trusted=True)
        return Scalar(f, tuple(-a for a in self.val), _trusted=True)

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        f = self.field
        if f.kind == "Q":
            return Scalar(f, self.val * o.val, _trusted=True)
        if f.kind == "fp":
            return Scalar(f, self.val * o.val % f.n, _trusted=True)
        a, b = self.val, o.val
        if not any(a[1:]):
            return Scalar(f, tuple(a[0] * y for y in b), _trusted=True)
        if not any(b[1:]):
            return Scalar(f, tuple(b[0] * x for x in a), _trusted=True)
        prod = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return Scalar(f, _cyc_reduce(prod, f.n), _trusted=True)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        f = self.field
        if f.kind == "Q":
            return Scalar(f, 1 / self.val, _trusted=True)
        if f.kind == "fp":
            return Scalar(f, pow(self.val, -1, f.n), _trusted=True)
        if self.is_rational():
            return Scalar(f, (1 / self.val[0],) + self.val[1:], _trusted=True)
        return Scalar(f, _cyc_inverse(self), _trusted=True)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = self.field.one
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison / hashing ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.val == other.val
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            try:
                return self == self.field(other)
            except NotRepresentable:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.val))

    # -- display ------------------------------------------------------------
    def __repr__(self):
        return f"Scalar({self.field.tag}, {self})"

    def __str__(self):
        from .parse import format_scalar

        return format_scalar(self)

    def to_acb(self):
        """Complex ball enclosure under zeta -> exp(2*pi*i/n) (FLINT precision)."""
        import flint

        f = self.field
        if f.kind == "fp":
            raise NotRepresentable("prime-field elements have no complex value")
        if f.kind == "Q":
            return flint.acb(flint.fmpq(self.val.numerator, self.val.denominator))
        z = flint.acb.exp_pi_i(flint.arb(flint.fmpq(2, f.n)))
        total = flint.acb(0)
        power = flint.acb(1)
        for c in self.val:
            if c:
                total += power * flint.fmpq(c.numerator, c.denominator)
            power *= z
        return total


def _cyc_inverse(x: Scalar) -> tuple[Fraction, ...]:
    """Solve (multiplication by x) * y = 1 in the power basis."""
    f = x.field
    phi = f.degree
    cols = []
    for k in range(phi):
        cols.append((x * f.zeta(k)).val)
    # matrix M[i][k] = coefficient i of x*zeta^k; solve M y = e0
    m = [[cols[k][i] for k in range(phi)] + [Fraction(int(i == 0))] for i in range(phi)]
    for c in range(phi):
        piv = next(r for r in range(c, phi) if m[r][c] != 0)
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [v * inv for v in m[c]]
        for r in range(phi):
            if r != c and m[r][c] != 0:
                t = m[r][c]
                m[r] = [a - t * b for a, b in zip(m[r], m[c])]
    return tuple(m[i][phi] for i in range(phi))


def root_of_unity_test(c: Scalar) -> int | None:
    """Multiplicative order of ``c`` if it is a root of unity, else ``None``.

    Over ``Q`` the only candidates are ``1`` and ``-1``.  The roots of unity in
    ``Q(zeta_n)`` all have order dividing ``lcm(2, n)``.
    """
    if c.is_zero():
        raise ValueError("zero is not a unit")
    f = c.field
    if f.kind == "fp":
        raise ValueError("root-of-unity test is defined over Q and cyclotomic fields only")
    bound = 2 if f.kind == "Q" else math.lcm(2, f.n)
    if not (c ** bound).is_one():
        return None
    for k in sorted(k for k in range(1, bound + 1) if bound % k == 0):
        if (c**k).is_one():
            return k
    raise AssertionError("unreachable")
