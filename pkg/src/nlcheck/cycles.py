"""Decomposable cycles on ``Z = Z_1 ∪ Z_2 ∪ Z_3`` with ``Z_i = X ∩ {z_i = 0}``.

A symbol is a triple of rational functions, one per curve ``Z_i``; each
nontrivial component is a ratio ``num/den`` of linear forms.  The divisor of a
linear form ``h`` on ``Z_i`` is cut out by ``F`` on the line ``{z_i = 0, h = 0}``
and is recorded as the binary form ``F|line`` in the line's own parameters.

Lines are identified in P^3 through the reduced echelon form of their two
defining equations.  Two different lines share at most their intersection
point, so a point is either a rational intersection point of two lines or
lies on a single line; this is all the bookkeeping needed to compare 0-cycles.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .binary import BinaryForm, binary_factor, binary_proportional, u_divmod, u_trim
from .fields import Field, Scalar, root_of_unity_test
from .linalg import kernel, rank, rref
from .parse import ParseError, format_poly, parse_poly
from .poly import HPoly, multiply, var

__all__ = [
    "CycleError",
    "Undecided",
    "Line",
    "SymbolTriple",
    "ZeroCycleForm",
    "restrict_to_line",
    "divisor_forms",
    "boundary_vanishes",
    "order_matrix",
    "independence_test",
    "delta_symbol",
    "c12_symbol",
    "c23_symbol",
    "c31_symbol",
    "parse_symbol",
]


class CycleError(ValueError):
    """A symbol component is undefined or vanishes on a whole component."""


class Undecided(ArithmeticError):
    """The test cannot conclude over the current field."""


# ---------------------------------------------------------------------------
# lines in P^3


@dataclass(frozen=True)
class Line:
    """Line ``{h1 = h2 = 0}``; points are ``z = s*P + t*Q`` for the free coordinates ``(s, t)``."""

    field: Field
    rows: tuple  # 2 x 4 reduced echelon matrix
    pivots: tuple
    free: tuple

    @classmethod
    def from_forms(cls, h1: HPoly, h2: HPoly) -> "Line":
        f = h1.field
        vecs = []
        for h in (h1, h2):
            if h.degree != 1:
                raise CycleError("lines are defined by linear forms")
            vecs.append({k: h.coeff(tuple(int(i == k) for i in range(4))) for k in range(4)})
        vecs = [{k: c for k, c in v.items() if not c.is_zero()} for v in vecs]
        piv, rows = rref(f, vecs, 4)
        if len(piv) != 2:
            raise CycleError("the two linear forms do not cut out a line")
        full = tuple(tuple(r.get(k, f.zero) for k in range(4)) for r in rows)
        free = tuple(k for k in range(4) if k not in piv)
        return cls(f, full, tuple(piv), free)

    def parametrization(self) -> list[tuple[Scalar, Scalar]]:
        """``z_k = a_k s + b_k t`` as pairs ``(a_k, b_k)``."""
        f = self.field
        out = [None] * 4
        out[self.free[0]] = (f.one, f.zero)
        out[self.free[1]] = (f.zero, f.one)
        for p, row in zip(self.pivots, self.rows):
            out[p] = (-row[self.free[0]], -row[self.free[1]])
        return out

    def point(self, s: Scalar, t: Scalar) -> tuple:
        return tuple(a * s + b * t for a, b in self.parametrization())

    def params_of(self, P: Sequence[Scalar]) -> tuple:
        return (P[self.free[0]], P[self.free[1]])


def restrict_to_line(F: HPoly, line: Line) -> BinaryForm:
    """``F(s*P + t*Q)`` as a binary form in ``(s, t)``; ``coeffs[k]`` multiplies ``s^(d-k) t^k``."""
    f = F.field
    vars_ = tuple(line.free)
    lin = [BinaryForm(f, vars_, (a, b)) for a, b in line.parametrization()]
    one = BinaryForm(f, vars_, (f.one,))
    powers = []
    for L in lin:
        pw = [one]
        for _ in range(F.degree):
            pw.append(pw[-1] * L)
        powers.append(pw)
    total = [f.zero] * (F.degree + 1)
    for m, c in F.terms.items():
        t = powers[0][m[0]] * powers[1][m[1]] * powers[2][m[2]] * powers[3][m[3]]
        for k, x in enumerate(t.coeffs):
            if not x.is_zero():
                total[k] = total[k] + c * x
    return BinaryForm(f, vars_, tuple(total))


def _meet(a: Line, b: Line) -> tuple | None:
    """Intersection point of two distinct lines, normalised, or ``None`` if skew."""
    f = a.field
    rows = [{k: x for k, x in enumerate(r) if not x.is_zero()} for r in a.rows + b.rows]
    ker = kernel(f, rows, 4)
    if ker.rank != 1:
        return None
    v = ker.rows[0]
    return _normalise_point(tuple(v.get(k, f.zero) for k in range(4)))


def _normalise_point(P: Sequence[Scalar]) -> tuple:
    lead = next(x for x in P if not x.is_zero())
    inv = lead.inverse()
    return tuple(x * inv for x in P)


def _binary_divide_linear(g: BinaryForm, a: Scalar, b: Scalar) -> BinaryForm | None:
    """``g / (a s + b t)`` if exact, else ``None``."""
    f = g.field
    d = g.degree
    if d == 0:
        return None
    cs = list(g.coeffs)
    if b.is_zero():
        if not cs[-1].is_zero():
            return None
        inv = a.inverse()
        return BinaryForm(f, g.variables, tuple(x * inv for x in cs[:-1]))
    # divide the polynomial in t (s = 1) by a + b t, keeping formal degree d - 1
    q, r = u_divmod(cs, [a, b])
    if u_trim(r):
        return None
    q = list(q) + [f.zero] * (d - len(q))
    return BinaryForm(f, g.variables, tuple(q[:d]))


def _point_order(g: BinaryForm, line: Line, P: Sequence[Scalar]) -> tuple[int, BinaryForm]:
    """Multiplicity of the root ``P`` of ``g`` and the cofactor."""
    s0, t0 = line.params_of(P)
    a, b = t0, -s0  # a s + b t vanishes at (s0, t0)
    k = 0
    while not g.is_zero():
        h = _binary_divide_linear(g, a, b)
        if h is None:
            break
        g, k = h, k + 1
    return k, g


# ---------------------------------------------------------------------------
# symbols


@dataclass(frozen=True)
class SymbolTriple:
    """Components for ``Z_1, Z_2, Z_3``; ``None`` stands for the constant 1."""

    components: tuple
    name: str = ""

    def __post_init__(self):
        comps = tuple(self.components)
        if len(comps) != 3:
            raise ValueError("a symbol has exactly three components")
        for c in comps:
            if c is not None:
                num, den = c
                if num.degree != den.degree:
                    raise CycleError("numerator and denominator degrees differ")
                if num.degree != 1:
                    raise CycleError("only ratios of linear forms are supported")
        object.__setattr__(self, "components", comps)

    def texts(self) -> list[str]:
        out = []
        for c in self.components:
            if c is None:
                out.append("1")
            else:
                out.append(f"({format_poly(c[0])})/({format_poly(c[1])})")
        return out

    def scaled(self, factors: Sequence) -> "SymbolTriple":
        """Multiply each nontrivial numerator by a nonzero constant."""
        comps = []
        for c, s in zip(self.components, factors):
            comps.append(None if c is None else (c[0].scale(s), c[1]))
        return SymbolTriple(tuple(comps), self.name)


def _ratio(num: HPoly, den: HPoly):
    return (num, den)


def delta_symbol(field: Field) -> SymbolTriple:
    z1, z2, z3 = (var(i, field) for i in (1, 2, 3))
    return SymbolTriple((_ratio(z3, z2), _ratio(z1, z3), _ratio(z2, z1)), "delta")


def c12_symbol(w: HPoly) -> SymbolTriple:
    f = w.field
    return SymbolTriple((_ratio(var(2, f), w), _ratio(w, var(1, f)), None), "c12")


def c23_symbol(v: HPoly) -> SymbolTriple:
    f = v.field
    return SymbolTriple((None, _ratio(var(3, f), v), _ratio(v, var(2, f))), "c23")


def c31_symbol(u: HPoly) -> SymbolTriple:
    f = u.field
    return SymbolTriple((_ratio(u, var(3, f)), None, _ratio(var(1, f), u)), "c31")


def _split_ratio(text: str) -> tuple[str, str]:
    """Split ``num/den`` at the top-level slash that starts a polynomial."""
    depth = 0
    for k, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            rest = text[k + 1 :].lstrip()
            if rest.startswith("z") or rest.startswith("("):
                return text[:k], text[k + 1 :]
    raise ParseError(f"expected num/den in {text!r}")


def _unwrap(text: str) -> str:
    """Drop one pair of parentheses enclosing the whole text."""
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        return text
    depth = 0
    for k, ch in enumerate(text):
        depth += ch == "("
        depth -= ch == ")"
        if depth == 0 and k < len(text) - 1:
            return text
    return text[1:-1]


def parse_symbol(texts: Sequence[str], field: Field, name: str = "") -> SymbolTriple:
    comps = []
    for t in texts:
        t = t.strip()
        if t == "1":
            comps.append(None)
            continue
        num, den = (_unwrap(x) for x in _split_ratio(t))
        comps.append((parse_poly(num, field), parse_poly(den, field)))
    return SymbolTriple(tuple(comps), name)


# ---------------------------------------------------------------------------
# divisors


@dataclass(frozen=True)
class ZeroCycleForm:
    curve: int
    positive: tuple  # (Line, BinaryForm)
    negative: tuple


def _plane_line(i: int, h: HPoly) -> Line:
    f = h.field
    return Line.from_forms(var(i, f), h)


def divisor_forms(F: HPoly, i: int, num: HPoly, den: HPoly) -> ZeroCycleForm:
    """Divisor of ``(num/den)|Z_i`` as the restrictions of ``F`` to the two lines."""
    if num.degree != 1 or den.degree != 1:
        raise CycleError("only ratios of linear forms are supported")
    parts = []
    for h in (num, den):
        try:
            line = _plane_line(i, h)
        except CycleError:
            raise CycleError(f"{format_poly(h)} vanishes on the plane z{i} = 0") from None
        g = restrict_to_line(F, line)
        if g.is_zero():
            raise CycleError(f"Z_{i} contains the line z{i} = {format_poly(h)} = 0")
        parts.append((line, g))
    return ZeroCycleForm(i, parts[0], parts[1])


def _contributions(symbol: SymbolTriple, F: HPoly) -> list[tuple[int, int, Line, BinaryForm]]:
    """``(curve, sign, line, F|line)`` for every divisor piece of a symbol."""
    out = []
    for i, comp in zip((1, 2, 3), symbol.components):
        if comp is None:
            continue
        z = divisor_forms(F, i, comp[0], comp[1])
        out.append((i, 1, *z.positive))
        out.append((i, -1, *z.negative))
    return out


def _check_no_triple_point(F: HPoly):
    if not F.coeff((F.degree, 0, 0, 0)).is_zero():
        return
    raise CycleError("X passes through [1:0:0:0], where all three curves meet")


def boundary_vanishes(s: SymbolTriple, F: HPoly) -> bool:
    """Whether ``sum_i div(s_i|Z_i)`` is the zero 0-cycle on ``Z``."""
    _check_no_triple_point(F)
    pieces = _contributions(s, F)
    lines: dict = {}
    for _, sign, line, g in pieces:
        lines.setdefault(line, []).append([sign, g])
    keys = list(lines)
    # rational points shared by two lines: orders must cancel, then divide them out
    shared = set()
    for a in range(len(keys)):
        for b in range(a + 1, len(keys)):
            P = _meet(keys[a], keys[b])
            if P is not None and F.evaluate(P).is_zero():
                shared.add(P)
    for P in sorted(shared, key=lambda p: [str(x) for x in p]):
        total = 0
        for line in keys:
            if not _on_line(line, P):
                continue
            for entry in lines[line]:
                k, cof = _point_order(entry[1], line, P)
                total += entry[0] * k
                entry[1] = cof
        if total:
            return False
    for line in keys:
        f = line.field
        vars_ = tuple(line.free)
        pos = BinaryForm(f, vars_, (f.one,))
        neg = BinaryForm(f, vars_, (f.one,))
        for sign, g in lines[line]:
            if sign > 0:
                pos = pos * g
            else:
                neg = neg * g
        if pos.degree != neg.degree or binary_proportional(pos, neg) is None:
            return False
    return True


def _on_line(line: Line, P: Sequence[Scalar]) -> bool:
    return all(sum((r[k] * P[k] for k in range(4)), line.field.zero).is_zero() for r in line.rows)


# ---------------------------------------------------------------------------
# independence


def _point_keys(line: Line, g: BinaryForm) -> list[tuple[object, int]]:
    """Closed points of ``{g = 0}`` on ``line`` with multiplicities."""
    _, facs = binary_factor(g)
    out = []
    for fac, mult in facs:
        if fac.degree == 1:
            a, b = fac.coeffs  # a s + b t = 0  ->  (s, t) = (b, -a)
            P = _normalise_point(line.point(b, -a))
            out.append((("pt", P), mult))
        else:
            out.append((("line", line, fac.coeffs), mult))
    return out


def order_matrix(symbols: Sequence[SymbolTriple], F: HPoly) -> tuple[list[list[int]], list]:
    """Integer matrix of vanishing orders: rows are symbols, columns ``(curve, point)``."""
    _check_no_triple_point(F)
    columns: dict = {}
    rows = []
    for s in symbols:
        row: dict = {}
        for i, sign, line, g in _contributions(s, F):
            for key, mult in _point_keys(line, g):
                col = columns.setdefault((i, key), len(columns))
                row[col] = row.get(col, 0) + sign * mult
        rows.append(row)
    n = len(columns)
    dense = [[r.get(c, 0) for c in range(n)] for r in rows]
    order = sorted(columns, key=columns.get)
    return dense, order


def _integer_kernel_basis(M: list[list[int]]) -> list[list[int]]:
    """Integer vectors spanning the rational left kernel of ``M``."""
    q = Field("Q")
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    # left kernel of M = kernel of M^T
    functionals = [{i: q(M[i][j]) for i in range(nrows) if M[i][j]} for j in range(ncols)]
    ker = kernel(q, functionals, nrows)
    out = []
    for row in ker.rows:
        den = 1
        for c in row.values():
            den = den * c.val.denominator // _gcd(den, c.val.denominator)
        out.append([int(row.get(i, q.zero).val * den) for i in range(nrows)])
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _relation_constant(symbols: Sequence[SymbolTriple], n: Sequence[int], F: HPoly, i: int) -> Scalar | None:
    """Value of ``prod_k s_k^(n_k)`` on ``Z_i`` if that product is constant there, else ``None``."""
    f = F.field
    num = HPoly.constant(f, 1)
    den = HPoly.constant(f, 1)
    for s, e in zip(symbols, n):
        comp = s.components[i - 1]
        if comp is None or e == 0:
            continue
        a, b = comp if e > 0 else (comp[1], comp[0])
        for _ in range(abs(e)):
            num = multiply(num, a)
            den = multiply(den, b)
    if num.degree == 0:
        return num.coeff((0, 0, 0, 0)) / den.coeff((0, 0, 0, 0))
    # test lines in the plane z_i = 0 with the chart point off X
    others = [k for k in range(4) if k != i]
    rng = random.Random(1000 + i)
    for _ in range(40):
        coeffs = [rng.randint(-5, 5) for _ in others]
        if not any(coeffs):
            continue
        h = HPoly(f, 1, {tuple(int(k == o) for k in range(4)): c for o, c in zip(others, coeffs)})
        try:
            line = _plane_line(i, h)
        except CycleError:
            continue
        g = restrict_to_line(F, line)
        if g.coeffs[-1].is_zero():
            continue
        N = restrict_to_line(num, line)
        D = restrict_to_line(den, line)
        _, rN = u_divmod(list(N.coeffs), list(g.coeffs))
        _, rD = u_divmod(list(D.coeffs), list(g.coeffs))
        rN, rD = u_trim(rN), u_trim(rD)
        if not rD:
            if rN:
                return None
            continue
        k = len(rD) - 1
        c = (rN[k] if k < len(rN) else f.zero) / rD[k]
        if u_trim([x - c * y for x, y in zip(rN + [f.zero] * len(rD), rD + [f.zero] * len(rN))]):
            return None
        return c
    raise Undecided(f"no usable test line on Z_{i}")


def _prime_exponents(c: Scalar) -> dict:
    import flint

    x = c.to_fraction()
    out: dict = {}
    for part, sgn in ((x.numerator, 1), (x.denominator, -1)):
        if abs(part) == 1:
            continue
        for p, e in flint.fmpz(abs(part)).factor()[1]:
            out[int(p)] = out.get(int(p), 0) + sgn * int(e)
    return out


def independence_test(symbols: Sequence[SymbolTriple], F: HPoly) -> bool:
    """True iff the symbols are multiplicatively independent modulo roots of unity.

    Independence of the divisor rows settles the question.  Otherwise each
    kernel relation is a tuple of constants on the three curves, and the
    relation survives only if those constants are roots of unity.
    """
    if not symbols:
        return True
    M, _ = order_matrix(symbols, F)
    q = Field("Q")
    ncols = len(M[0]) if M and M[0] else 0
    r = rank(q, [{j: q(v) for j, v in enumerate(row) if v} for row in M], ncols) if ncols else 0
    if r == len(symbols):
        return True
    basis = _integer_kernel_basis(M) if ncols else [[int(i == k) for i in range(len(symbols))] for k in range(len(symbols))]
    constants = []
    for n in basis:
        cs = []
        for i in (1, 2, 3):
            c = _relation_constant(symbols, n, F, i)
            if c is None:
                cs = None
                break
            cs.append(c)
        constants.append(cs)
    if len(basis) == 1:
        cs = constants[0]
        if cs is None:
            return True  # the only candidate relation is not constant on some curve
        return not all(root_of_unity_test(c) is not None for c in cs)
    if any(cs is None for cs in constants):
        raise Undecided("several candidate relations with non-constant products; enlarge the field")
    if F.field.kind != "Q":
        raise Undecided("several candidate relations over a cyclotomic field")
    # a relation sum a_j n_j gives constants prod c_ij^(a_j); +-1 iff all prime exponents cancel
    primes = sorted({p for cs in constants for c in cs for p in _prime_exponents(c)})
    rows = []
    for i in range(3):
        exps = [_prime_exponents(cs[i]) for cs in constants]
        for p in primes:
            rows.append({j: q(e.get(p, 0)) for j, e in enumerate(exps) if e.get(p, 0)})
    return rank(q, rows, len(basis)) == len(basis) if rows else False
