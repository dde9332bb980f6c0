"""Graded pieces of homogeneous ideals and their Hilbert functions.

Everything is done one degree at a time: the degree-``l`` piece of an ideal is
the row space of its Macaulay matrix, whose rows are the products of each
generator with every monomial of complementary degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb
from typing import Callable, Sequence, Union

from .fields import Field
from .linalg import Subspace, quotient_dim, rank, span_vectors
from .poly import HPoly, _index_table, ambient_dim, monomials

__all__ = [
    "IdealSpec",
    "macaulay_rows",
    "ideal_piece",
    "hilbert",
    "monomial_quotient_count",
    "ci_series_coeff",
    "is_complete_intersection",
    "GeneratorMismatch",
]

INF = None  # an unbounded cap in monomial_quotient_count


class GeneratorMismatch(ValueError):
    pass


@dataclass(frozen=True)
class IdealSpec:
    field: Field
    generators: tuple

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        for g in gens:
            if g.is_zero():
                raise ValueError("ideal generators must be nonzero")
            if g.field != self.field:
                raise ValueError(f"generator over {g.field.tag} in a {self.field.tag} ideal")

    @classmethod
    def of(cls, *gens: HPoly) -> "IdealSpec":
        return cls(gens[0].field, tuple(gens))

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(g.degree for g in self.generators)


def macaulay_rows(I: IdealSpec, l: int) -> list[dict]:
    """Rows ``g * m`` for generators ``g`` and monomials ``m`` of degree ``l - deg g``."""
    idx = _index_table(l) if l >= 0 else {}
    rows = []
    for g in I.generators:
        k = l - g.degree
        if k < 0:
            continue
        terms = list(g.terms.items())
        for m in monomials(k):
            rows.append({idx[(a[0] + m[0], a[1] + m[1], a[2] + m[2], a[3] + m[3])]: c for a, c in terms})
    return rows


def ideal_piece(I: IdealSpec, l: int) -> Subspace:
    return span_vectors(I.field, ambient_dim(l), macaulay_rows(I, l), l)


def hilbert(I: IdealSpec, l: int) -> int:
    """``dim P^l / I^l``; only the rank of the Macaulay matrix is computed."""
    if l < 0:
        return 0
    return ambient_dim(l) - rank(I.field, macaulay_rows(I, l), ambient_dim(l))


def monomial_quotient_count(caps: Sequence[int | None], l: int) -> int:
    """Number of exponent vectors ``a`` with ``|a| = l`` and ``a_i < caps[i]``.

    A cap of ``None`` (or ``math.inf``) leaves that exponent unbounded.
    """
    bounds = []
    for b in caps:
        if b is None or b == float("inf"):
            bounds.append(l)
        else:
            if b < 1:
                raise ValueError("caps must be positive")
            bounds.append(min(int(b) - 1, l))
    count = 0
    for a0 in range(bounds[0] + 1):
        for a1 in range(min(bounds[1], l - a0) + 1):
            for a2 in range(min(bounds[2], l - a0 - a1) + 1):
                if l - a0 - a1 - a2 <= bounds[3]:
                    count += 1
    return count


def ci_series_coeff(degrees: Sequence[int], l: int) -> int:
    """Coefficient of ``t^l`` in ``prod(1 - t^e) / (1 - t)^4``."""
    if any(e < 1 for e in degrees):
        raise ValueError("degrees must be positive")
    if l < 0:
        return 0
    num = {0: 1}
    for e in degrees:
        nxt: dict = {}
        for k, c in num.items():
            nxt[k] = nxt.get(k, 0) + c
            nxt[k + e] = nxt.get(k + e, 0) - c
        num = nxt
    n = len(degrees)
    return sum(c * comb(l - k + n - 1, n - 1) for k, c in num.items() if k <= l)


PieceSupplier = Callable[[int], Subspace]


def is_complete_intersection(I: Union[IdealSpec, PieceSupplier], degrees: Sequence[int]) -> bool:
    """Complete-intersection test for four forms in four variables.

    For an :class:`IdealSpec` the ideal is a complete intersection iff its
    quotient vanishes in degree ``sum(e_i - 1) + 1``; the full Hilbert function
    is then required to match the complete-intersection series.  For a
    degree-indexed supplier of pieces (an ideal known only dually) the test is
    agreement of the Hilbert function with that series in degrees ``0..s+1``.
    """
    degrees = tuple(degrees)
    s = sum(e - 1 for e in degrees)
    if isinstance(I, IdealSpec):
        if len(I.generators) != len(degrees) or sorted(I.degrees) != sorted(degrees):
            raise GeneratorMismatch(f"generator degrees {I.degrees} do not match {degrees}")
        if hilbert(I, s + 1) != 0:
            return False
        for l in range(s + 1):
            h = hilbert(I, l)
            if h != ci_series_coeff(degrees, l):
                raise ArithmeticError(f"Artinian quotient with non-CI Hilbert value {h} in degree {l}")
        return True
    for l in range(s + 2):
        if quotient_dim(I(l)) != ci_series_coeff(degrees, l):
            return False
    return True
