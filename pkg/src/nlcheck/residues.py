"""Pointwise residues of ``phi(G)`` on the curves ``Z_ij = X ∩ {z_i = z_j = 0}``.

At a point ``P`` of ``Z_ij`` the value is ``-G(P) / (dF/dz0)(P)``, evaluated in
any affine chart (the ratio is homogeneous of degree 0).  With this sign
``G = dF/dz0`` gives ``-1`` everywhere.

Exact carriers:

* a constant certificate, when ``G`` restricted to the line is a multiple of
  ``dF/dz0`` restricted to the line;
* the value polynomial ``V(y) = Res(f, y*D + G) / Res(f, D)`` whose roots are
  the ``d`` values, where ``f``, ``D``, ``G`` are restrictions to the line.

:func:`numeric_delta` evaluates the values at certified complex roots and is
used only to cross-check the exact path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .binary import (
    BinaryForm,
    binary_proportional,
    homogeneous_resultant,
    u_derivative,
    u_gcd,
    u_interpolate,
    u_squarefree,
    u_trim,
)
from .fields import Field, Scalar, root_of_unity_test
from .jacobian import JacobianRing
from .parse import format_univariate
from .poly import HPoly, partial, restrict_line

__all__ = [
    "DegenerateConfiguration",
    "NumericFailure",
    "ResidueReport",
    "NumericValues",
    "line_data",
    "delta_constant_certificate",
    "delta_value_polynomial",
    "numeric_delta",
    "value_polynomial_roots",
    "match_multisets",
    "residue_report",
    "root_of_unity_family_condition",
]


class DegenerateConfiguration(ValueError):
    """The line restriction is not squarefree, or a value escapes the affine chart."""


class NumericFailure(ArithmeticError):
    pass


def _is_squarefree(f: BinaryForm) -> bool:
    if f.is_zero():
        return False
    g = f.dehomogenize()
    if f.root_at_infinity_order() > 1:
        return False
    return len(u_gcd(g, u_derivative(g))) <= 1


def line_data(R: JacobianRing, G: HPoly, i: int, j: int):
    """``(f, D, g)``: restrictions of ``F``, ``dF/dz0`` and ``G`` to ``z_i = z_j = 0``."""
    F = R.F if isinstance(R, JacobianRing) else R
    if G.degree != F.degree - 1:
        raise ValueError(f"G must have degree {F.degree - 1}")
    f = restrict_line(F, i, j)
    if not _is_squarefree(f):
        raise DegenerateConfiguration(f"F restricted to z{i} = z{j} = 0 is not squarefree")
    D = restrict_line(partial(F, 0), i, j)
    g = restrict_line(G, i, j)
    return f, D, g


def delta_constant_certificate(R: JacobianRing, G: HPoly, i: int, j: int) -> Scalar | None:
    """The constant residue value on ``Z_ij`` if ``G|line = -c * D|line``; else ``None``."""
    _, D, g = line_data(R, G, i, j)
    prop = binary_proportional(g, D)
    if prop is None:
        return None
    return -prop.factor


def delta_value_polynomial(R: JacobianRing, G: HPoly, i: int, j: int) -> list[Scalar]:
    """Monic ``V`` (constant term first) whose roots are the residue values on ``Z_ij``."""
    f, D, g = line_data(R, G, i, j)
    field = f.field
    base = homogeneous_resultant(f.coeffs, D.coeffs)
    if base.is_zero():
        raise DegenerateConfiguration("dF/dz0 vanishes at a point of Z_ij")
    d = f.degree
    xs, ys = [], []
    for k in range(d + 1):
        y = field(k)
        comb = [y * a + b for a, b in zip(D.coeffs, g.coeffs)]
        xs.append(y)
        ys.append(homogeneous_resultant(f.coeffs, comb) / base)
    V = u_interpolate(xs, ys)
    if len(V) != d + 1 or not V[-1].is_one():
        raise ArithmeticError("value polynomial is not monic of degree d")
    return V


@dataclass(frozen=True)
class NumericValues:
    precision: int
    values: tuple  # flint.acb balls

    def max_radius(self) -> float:
        return max((float(v.rad()) for v in self.values), default=0.0)


@dataclass(frozen=True)
class ResidueReport:
    pair: tuple
    line_form: BinaryForm
    kind: str  # "constant" | "polynomial" | "numeric"
    constant: Scalar | None = None
    polynomial: tuple | None = None
    numeric: NumericValues | None = None

    def describe(self) -> str:
        if self.kind == "constant":
            return f"constant {self.constant}"
        if self.kind == "polynomial":
            return format_univariate(self.polynomial)
        return f"{len(self.numeric.values)} values at {self.numeric.precision} bits"


def residue_report(R: JacobianRing, G: HPoly, i: int, j: int) -> ResidueReport:
    f, _, _ = line_data(R, G, i, j)
    c = delta_constant_certificate(R, G, i, j)
    if c is not None:
        return ResidueReport((i, j), f, "constant", constant=c)
    return ResidueReport((i, j), f, "polynomial", polynomial=tuple(delta_value_polynomial(R, G, i, j)))


# ---------------------------------------------------------------------------
# numeric oracle


class _Precision:
    def __init__(self, bits: int):
        self.bits = bits

    def __enter__(self):
        import flint

        self.saved = flint.ctx.prec
        flint.ctx.prec = self.bits

    def __exit__(self, *exc):
        import flint

        flint.ctx.prec = self.saved


def _acb_poly(coeffs: Sequence[Scalar]):
    import flint

    return flint.acb_poly([c.to_acb() for c in coeffs])


def _roots_squarefree(coeffs: Sequence[Scalar], bits: int) -> list:
    """Certified complex roots of a squarefree polynomial (constant term first)."""
    import flint

    coeffs = u_trim(coeffs)
    if len(coeffs) <= 1:
        return []
    if all(c.is_rational() for c in coeffs):
        from fractions import Fraction

        fr = [c.to_fraction() for c in coeffs]
        poly = flint.fmpq_poly([flint.fmpq(x.numerator, x.denominator) for x in fr])
        out = []
        for root, mult in poly.complex_roots():
            out.extend([root] * int(mult))
        return out
    try:
        return list(_acb_poly(coeffs).roots(maxiter=max(200, 4 * bits)))
    except ValueError as exc:
        raise NumericFailure(f"root isolation failed at {bits} bits: {exc}") from None


def numeric_delta(R: JacobianRing, G: HPoly, i: int, j: int, precision: int = 128) -> NumericValues:
    """Residue values ``-G/D`` at certified roots of ``f`` (complex balls)."""
    import flint

    f, D, g = line_data(R, G, i, j)
    with _Precision(precision):
        poly = f.dehomogenize()
        roots = _roots_squarefree(poly, precision)
        values = []
        for t in roots:
            Dv = _acb_poly(D.coeffs)(t)
            if Dv.contains(0):
                raise DegenerateConfiguration("dF/dz0 vanishes (numerically) at a point of Z_ij")
            values.append(-_acb_poly(g.coeffs)(t) / Dv)
        if f.root_at_infinity_order():
            # point x_a = 0: leading coefficients give the values in the other chart
            Dl, gl = D.coeffs[-1], g.coeffs[-1]
            if Dl.is_zero():
                raise DegenerateConfiguration("dF/dz0 vanishes at the point at infinity of the chart")
            values.append(-(gl / Dl).to_acb())
        values = [flint.acb(v) for v in values]
    return NumericValues(precision, tuple(values))


def value_polynomial_roots(V: Sequence[Scalar], precision: int = 128) -> list:
    """Certified roots of ``V`` with multiplicity, via squarefree decomposition."""
    with _Precision(precision):
        out = []
        for part, mult in u_squarefree(V):
            out.extend(_roots_squarefree(part, precision) * mult)
        return out


def match_multisets(a: Sequence, b: Sequence, tol: float) -> bool:
    """Greedy bipartite match of complex balls with ``|x - y| <= tol`` (midpoints)."""
    if len(a) != len(b):
        return False
    remaining = list(b)
    for x in a:
        best, best_k = None, None
        for k, y in enumerate(remaining):
            dist = float(abs(x.mid() - y.mid()).mid())
            if best is None or dist < best:
                best, best_k = dist, k
        if best is None or best > tol:
            return False
        remaining.pop(best_k)
    return True


def root_of_unity_family_condition(spec) -> bool:
    """True iff every ratio ``c_nu / c_1`` is a root of unity."""
    cs = list(spec.cs)
    if not cs:
        raise ValueError("family has no roots c_nu")
    if cs[0].is_zero():
        raise ValueError("c_1 = 0")
    return all(root_of_unity_test(c / cs[0]) is not None for c in cs)
