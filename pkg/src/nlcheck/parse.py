"""Text grammar for homogeneous polynomials and its canonical printer.

Grammar (whitespace is insignificant)::

    poly   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := coeff | ('z0'|'z1'|'z2'|'z3') ['^' nat]
    coeff  := int ['/' posint] | 'zeta(' nat ')' ['^' nat] | '(' poly ')'

A parenthesised coefficient must be free of variables.  The printer emits terms
in canonical monomial order, an explicit ``*`` between factors and ``^`` only for
exponents of at least two.
"""

from __future__ import annotations

from fractions import Fraction

from .fields import Field, NotRepresentable, Scalar
from .poly import HPoly

__all__ = ["ParseError", "parse_poly", "format_poly", "format_scalar", "format_univariate"]


class ParseError(ValueError):
    """Syntax or consistency error, with the 0-based character offset."""

    def __init__(self, message: str, pos: int | None = None, text: str | None = None):
        self.pos = pos
        self.text = text
        where = "" if pos is None else f" at position {pos}"
        super().__init__(f"{message}{where}")


class _Parser:
    def __init__(self, text: str, field: Field):
        self.s = text
        self.i = 0
        self.field = field

    # -- lexical helpers ----------------------------------------------------
    def skip(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.skip()
        return self.s[self.i] if self.i < len(self.s) else ""

    def eat(self, tok: str) -> bool:
        self.skip()
        if self.s.startswith(tok, self.i):
            self.i += len(tok)
            return True
        return False

    def expect(self, tok: str):
        if not self.eat(tok):
            raise ParseError(f"expected {tok!r}", self.i, self.s)

    def nat(self) -> int:
        self.skip()
        j = self.i
        while j < len(self.s) and self.s[j].isdigit():
            j += 1
        if j == self.i:
            raise ParseError("expected a non-negative integer", self.i, self.s)
        v = int(self.s[self.i : j])
        self.i = j
        return v

    # -- grammar ------------------------------------------------------------
    def poly(self) -> list[tuple[tuple, Scalar, int]]:
        """List of (monomial, coefficient, start offset) terms."""
        terms = []
        sign = 1
        if self.eat("-"):
            sign = -1
        else:
            self.eat("+")
        while True:
            start = self.i
            mono, c = self.term()
            terms.append((mono, c * sign, start))
            if self.eat("+"):
                sign = 1
            elif self.eat("-"):
                sign = -1
            else:
                break
        return terms

    def term(self):
        mono = [0, 0, 0, 0]
        c_box = [self.field.one]
        self.factor(mono, c_box)
        while self.eat("*"):
            self.factor(mono, c_box)
        return tuple(mono), c_box[0]

    def factor(self, mono: list, c_box: list):
        ch = self.peek()
        pos = self.i
        if ch == "z" and not self.s.startswith("zeta", self.i):
            self.i += 1
            if self.i >= len(self.s) or self.s[self.i] not in "0123":
                raise ParseError("expected variable z0..z3", pos, self.s)
            k = int(self.s[self.i])
            self.i += 1
            e = self.nat() if self.eat("^") else 1
            mono[k] += e
        elif ch.isdigit():
            num = self.nat()
            val = Fraction(num)
            if self.eat("/"):
                dpos = self.i
                den = self.nat()
                if den == 0:
                    raise ParseError("zero denominator", dpos, self.s)
                val = Fraction(num, den)
            try:
                c_box[0] = c_box[0] * self.field(val)
            except NotRepresentable as exc:
                raise ParseError(str(exc), pos, self.s) from None
        elif self.s.startswith("zeta", self.i):
            self.i += 4
            self.expect("(")
            n = self.nat()
            self.expect(")")
            e = self.nat() if self.eat("^") else 1
            if self.field.kind != "cyclotomic":
                raise ParseError(f"zeta({n}) is not representable in {self.field.tag}", pos, self.s)
            if n != self.field.n:
                raise ParseError(f"zeta({n}) does not match session conductor {self.field.n}", pos, self.s)
            c_box[0] = c_box[0] * self.field.zeta(e)
        elif ch == "(":
            self.i += 1
            inner = self.poly()
            self.expect(")")
            total = self.field.zero
            for m, c, p in inner:
                if any(m) and not c.is_zero():
                    raise ParseError("variables inside a parenthesised coefficient", p, self.s)
                total = total + c
            c_box[0] = c_box[0] * total
        elif ch == "":
            raise ParseError("unexpected end of input", self.i, self.s)
        else:
            raise ParseError(f"unexpected character {ch!r}", self.i, self.s)


def parse_poly(text: str, field: Field, expected_degree: int | None = None) -> HPoly:
    p = _Parser(text, field)
    if not p.peek():
        raise ParseError("empty polynomial", 0, text)
    terms = p.poly()
    if p.peek():
        raise ParseError(f"unexpected character {p.peek()!r}", p.i, text)
    degree = None
    acc: dict = {}
    for m, c, pos in terms:
        if c.is_zero():
            continue
        deg = sum(m)
        if degree is None:
            degree = deg
        elif deg != degree:
            raise ParseError(f"inhomogeneous input: degree {deg} term after degree {degree}", pos, text)
        acc[m] = acc[m] + c if m in acc else c
    if degree is None:
        degree = 0 if expected_degree is None else expected_degree
    if expected_degree is not None and degree != expected_degree:
        raise ParseError(f"degree {degree} does not match expected degree {expected_degree}")
    return HPoly(field, degree, acc)


# ---------------------------------------------------------------------------
# printing


def _frac_text(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _zeta_power(n: int, k: int) -> str:
    return f"zeta({n})" if k == 1 else f"zeta({n})^{k}"


def _signed_parts(c: Scalar) -> tuple[int, str]:
    """(sign, magnitude text) where an empty magnitude means 1."""
    f = c.field
    if f.kind == "fp":
        v = c.val if c.val <= f.n // 2 else c.val - f.n
        return (1 if v > 0 else -1), ("" if abs(v) == 1 else str(abs(v)))
    if f.kind == "Q":
        v = c.val
        return (1 if v > 0 else -1), ("" if abs(v) == 1 else _frac_text(abs(v)))
    nz = [(k, x) for k, x in enumerate(c.val) if x]
    if len(nz) == 1:
        k, x = nz[0]
        sign = 1 if x > 0 else -1
        mag = abs(x)
        if k == 0:
            return sign, ("" if mag == 1 else _frac_text(mag))
        z = _zeta_power(f.n, k)
        return sign, (z if mag == 1 else f"{_frac_text(mag)}*{z}")
    parts = []
    for k, x in nz:
        sgn = "-" if x < 0 else "+"
        mag = abs(x)
        if k == 0:
            body = _frac_text(mag)
        else:
            z = _zeta_power(f.n, k)
            body = z if mag == 1 else f"{_frac_text(mag)}*{z}"
        parts.append(sgn + body)
    text = "".join(parts)
    if text.startswith("+"):
        text = text[1:]
    return 1, f"({text})"


def format_scalar(c: Scalar) -> str:
    if c.is_zero():
        return "0"
    sign, mag = _signed_parts(c)
    return ("-" if sign < 0 else "") + (mag or "1")


def _mono_text(m) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"z{i}")
        elif e > 1:
            parts.append(f"z{i}^{e}")
    return "*".join(parts)


def format_poly(f: HPoly) -> str:
    if f.is_zero():
        return "0"
    out = []
    for m, c in f.sorted_terms():
        sign, mag = _signed_parts(c)
        mt = _mono_text(m)
        if mt and mag:
            body = f"{mag}*{mt}"
        else:
            body = mt or mag or "1"
        out.append(("-" if sign < 0 else "+") + body)
    text = "".join(out)
    return text[1:] if text.startswith("+") else text


def format_univariate(coeffs, var: str = "y") -> str:
    """Print ``sum coeffs[k] * var^k`` from the highest power down."""
    out = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c.is_zero():
            continue
        sign, mag = _signed_parts(c)
        mt = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if mt and mag:
            body = f"{mag}*{mt}"
        else:
            body = mt or mag or "1"
        out.append(("-" if sign < 0 else "+") + body)
    if not out:
        return "0"
    text = "".join(out)
    return text[1:] if text.startswith("+") else text
