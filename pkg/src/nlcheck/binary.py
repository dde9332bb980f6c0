"""Binary forms and dense univariate polynomial helpers over a :class:`Field`.

A :class:`BinaryForm` in variables ``(x_a, x_b)`` stores ``coeffs[k]`` as the
coefficient of ``x_a^(deg-k) * x_b^k``.  Read low-index first, the same list is
the dehomogenisation ``f(1, t)`` with ``t = x_b / x_a``; a drop in its degree
records roots at ``x_a = 0``.

Univariate polynomials are plain lists of scalars, constant term first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .fields import Field, FieldMismatch, Scalar

__all__ = [
    "BinaryForm",
    "binary_proportional",
    "binary_factor",
    "Proportionality",
    "UnsupportedField",
    "u_trim",
    "u_degree",
    "u_add",
    "u_sub",
    "u_mul",
    "u_scale",
    "u_divmod",
    "u_gcd",
    "u_derivative",
    "u_squarefree",
    "u_eval",
    "u_monic",
    "u_interpolate",
    "homogeneous_resultant",
]


class UnsupportedField(ValueError):
    pass


# ---------------------------------------------------------------------------
# univariate helpers


def u_trim(p: Sequence[Scalar]) -> list[Scalar]:
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def u_degree(p) -> int:
    return len(u_trim(p)) - 1


def u_add(a, b):
    n = max(len(a), len(b))
    out = []
    for k in range(n):
        if k < len(a) and k < len(b):
            out.append(a[k] + b[k])
        else:
            out.append(a[k] if k < len(a) else b[k])
    return u_trim(out)


def u_scale(a, c):
    return u_trim([x * c for x in a])


def u_sub(a, b):
    return u_add(a, [-x for x in b])


def u_mul(a, b):
    a, b = u_trim(a), u_trim(b)
    if not a or not b:
        return []
    zero = a[0].field.zero
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return u_trim(out)


def u_divmod(a, b):
    a, b = u_trim(a), u_trim(b)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if len(a) < len(b):
        return [], a
    inv = b[-1].inverse()
    rem = list(a)
    q = [b[0].field.zero] * (len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        c = rem[k + len(b) - 1] * inv
        q[k] = c
        if not c.is_zero():
            for i, y in enumerate(b):
                rem[k + i] = rem[k + i] - c * y
    return u_trim(q), u_trim(rem[: len(b) - 1])


def u_monic(a):
    a = u_trim(a)
    if not a:
        return a
    inv = a[-1].inverse()
    return [x * inv for x in a]


def u_gcd(a, b):
    a, b = u_trim(a), u_trim(b)
    while b:
        a, b = b, u_divmod(a, b)[1]
    return u_monic(a)


def u_derivative(a):
    return u_trim([a[k] * k for k in range(1, len(a))])


def u_eval(a, x: Scalar) -> Scalar:
    acc = x.field.zero
    for c in reversed(a):
        acc = acc * x + c
    return acc


def u_squarefree(a) -> list[tuple[list, int]]:
    """Yun's algorithm (characteristic zero): monic squarefree parts with multiplicities."""
    a = u_monic(a)
    if len(a) <= 1:
        return []
    out = []
    da = u_derivative(a)
    g = u_gcd(a, da)
    b = u_divmod(a, g)[0]
    c = u_divmod(da, g)[0]
    dpart = u_sub(c, u_derivative(b))
    k = 1
    while len(b) > 1:
        h = u_gcd(b, dpart)
        if len(h) > 1:
            out.append((h, k))
        b = u_divmod(b, h)[0]
        c = u_divmod(dpart, h)[0]
        dpart = u_sub(c, u_derivative(b))
        k += 1
    return out


def u_interpolate(xs: Sequence[Scalar], ys: Sequence[Scalar]) -> list[Scalar]:
    """Lagrange interpolation through distinct nodes."""
    field = xs[0].field
    result: list = []
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi.is_zero():
            continue
        basis = [field.one]
        denom = field.one
        for j, xj in enumerate(xs):
            if j != i:
                basis = u_mul(basis, [-xj, field.one])
                denom = denom * (xi - xj)
        result = u_add(result, u_scale(basis, yi / denom))
    return result


def _det(rows: list[list[Scalar]]) -> Scalar:
    m = [list(r) for r in rows]
    n = len(m)
    field = m[0][0].field
    det = field.one
    for c in range(n):
        piv = next((r for r in range(c, n) if not m[r][c].is_zero()), None)
        if piv is None:
            return field.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c]
        inv = m[c][c].inverse()
        for r in range(c + 1, n):
            if not m[r][c].is_zero():
                t = m[r][c] * inv
                m[r] = [x - t * y for x, y in zip(m[r], m[c])]
    return det


def homogeneous_resultant(f: Sequence[Scalar], g: Sequence[Scalar]) -> Scalar:
    """Sylvester resultant of two binary forms given by full coefficient vectors.

    ``f`` has formal degree ``len(f)-1`` (leading entries may vanish), likewise ``g``.
    The result vanishes iff the forms share a projective root.
    """
    m, n = len(f) - 1, len(g) - 1
    field = (list(f) + list(g))[0].field
    if m == 0 and n == 0:
        return field.one
    if m == 0:
        return f[0] ** n
    if n == 0:
        return g[0] ** m
    size = m + n
    zero = field.zero
    rows = []
    fh = list(reversed(f))  # highest t-power first
    gh = list(reversed(g))
    for i in range(n):
        rows.append([zero] * i + fh + [zero] * (size - i - m - 1))
    for i in range(m):
        rows.append([zero] * i + gh + [zero] * (size - i - n - 1))
    return _det(rows)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BinaryForm:
    field: Field
    variables: tuple[int, int]
    coeffs: tuple[Scalar, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a binary form needs at least one coefficient")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def dehomogenize(self) -> list[Scalar]:
        """Coefficients of ``f(1, t)``, constant first, trimmed."""
        return u_trim(self.coeffs)

    def root_at_infinity_order(self) -> int:
        """Multiplicity of the root ``x_a = 0``."""
        return self.degree - u_degree(self.coeffs)

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        if self.field != other.field:
            raise FieldMismatch("binary forms over different fields")
        if self.variables != other.variables:
            raise ValueError("binary forms in different variables")
        zero = self.field.zero
        out = [zero] * (self.degree + other.degree + 1)
        for i, x in enumerate(self.coeffs):
            if x.is_zero():
                continue
            for j, y in enumerate(other.coeffs):
                if not y.is_zero():
                    out[i + j] = out[i + j] + x * y
        return BinaryForm(self.field, self.variables, tuple(out))

    def scale(self, c) -> "BinaryForm":
        c = self.field(c)
        return BinaryForm(self.field, self.variables, tuple(x * c for x in self.coeffs))

    def __pow__(self, k: int) -> "BinaryForm":
        out = BinaryForm(self.field, self.variables, (self.field.one,))
        for _ in range(k):
            out = out * self
        return out

    def __str__(self) -> str:
        a, b = self.variables
        from .parse import format_poly
        from .poly import HPoly

        terms = {}
        for k, c in enumerate(self.coeffs):
            m = [0, 0, 0, 0]
            m[a] += self.degree - k
            m[b] += k
            terms[tuple(m)] = c
        return format_poly(HPoly(self.field, self.degree, terms))

    @classmethod
    def from_univariate(cls, field: Field, variables, poly: Sequence[Scalar], degree: int | None = None):
        poly = u_trim(poly)
        if degree is None:
            degree = max(len(poly) - 1, 0)
        coeffs = list(poly) + [field.zero] * (degree + 1 - len(poly))
        return cls(field, tuple(variables), tuple(coeffs))


@dataclass(frozen=True)
class Proportionality:
    """Outcome of :func:`binary_proportional` when a constant exists."""

    factor: Scalar
    both_zero: bool = False


def binary_proportional(f: BinaryForm, g: BinaryForm) -> Proportionality | None:
    """``c`` with ``f = c*g`` if it exists.  ``(0, 0)`` gives ``c = 0`` flagged ``both_zero``."""
    if f.field != g.field:
        raise FieldMismatch("binary forms over different fields")
    if f.degree != g.degree:
        raise ValueError("binary forms of different degrees")
    if g.is_zero():
        return Proportionality(f.field.zero, True) if f.is_zero() else None
    k = next(i for i, c in enumerate(g.coeffs) if not c.is_zero())
    c = f.coeffs[k] / g.coeffs[k]
    if all(x == c * y for x, y in zip(f.coeffs, g.coeffs)):
        return Proportionality(c)
    return None


def _factor_univariate(field: Field, poly: list[Scalar]) -> list[tuple[list[Scalar], int]]:
    """Monic irreducible factors of a nonconstant polynomial."""
    if field.kind == "Q":
        import flint

        vals = [c.val for c in poly]
        lcm = 1
        for v in vals:
            lcm = lcm * v.denominator // _gcd(lcm, v.denominator)
        fp = flint.fmpz_poly([int(v * lcm) for v in vals])
        _, facs = fp.factor()
        out = []
        for fac, mult in facs:
            cs = [Fraction(int(x)) for x in fac.coeffs()]
            out.append((u_monic([field(x) for x in cs]), int(mult)))
        return out
    if field.kind == "cyclotomic":
        return _factor_cyclotomic(field, poly)
    raise UnsupportedField(f"factorisation over {field.tag} is not supported")


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _sympy_field(n: int):
    from sympy import I, exp, pi
    from sympy.polys.domains import QQ

    return QQ.algebraic_field(exp(2 * pi * I / n))


_SYMPY_FIELDS: dict = {}


def _factor_cyclotomic(field: Field, poly: list[Scalar]):
    from sympy import Poly, Symbol

    K = _SYMPY_FIELDS.get(field.n)
    if K is None:
        K = _SYMPY_FIELDS[field.n] = _sympy_field(field.n)
    # sympy stores elements high-power first in the generator zeta
    def to_k(c: Scalar):
        rep = [K.dom(x.numerator, x.denominator) for x in reversed(c.val)]
        while rep and rep[0] == 0:
            rep.pop(0)
        return K.new(rep)

    def from_k(a) -> Scalar:
        rep = a.to_list()
        coords = [Fraction(int(x.numerator), int(x.denominator)) for x in reversed(rep)]
        return field.from_coords(coords)

    t = Symbol("t")
    P = Poly.from_list([to_k(c) for c in reversed(poly)], t, domain=K)
    _, facs = P.factor_list()
    out = []
    for fac, mult in facs:
        cs = [from_k(a) for a in reversed(fac.rep.to_list())]
        out.append((u_monic(cs), int(mult)))
    return out


def binary_factor(f: BinaryForm) -> tuple[Scalar, list[tuple[BinaryForm, int]]]:
    """Content and irreducible factors with multiplicities.

    Each factor is normalised so its highest-index nonzero coefficient is 1; the
    factor ``x_a`` (the root ``t = infinity``) appears as coefficients ``(1, 0)``.
    The product ``content * prod(factor^mult)`` equals ``f`` exactly.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero form")
    field = f.field
    poly = f.dehomogenize()
    content = poly[-1]
    out: list[tuple[BinaryForm, int]] = []
    inf = f.root_at_infinity_order()
    if inf:
        out.append((BinaryForm(field, f.variables, (field.one, field.zero)), inf))
    if len(poly) > 1:
        # strip powers of t first so the factoriser sees a nonzero constant term
        low = next(k for k, c in enumerate(poly) if not c.is_zero())
        if low:
            out.append((BinaryForm(field, f.variables, (field.zero, field.one)), low))
        rest = poly[low:]
        if len(rest) > 1:
            for fac, mult in _factor_univariate(field, u_monic(rest)):
                out.append((BinaryForm.from_univariate(field, f.variables, fac), mult))
    out.sort(key=lambda fm: (fm[0].degree, [str(c) for c in fm[0].coeffs]))
    return content, out
