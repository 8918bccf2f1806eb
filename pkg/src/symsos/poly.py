"""Exact sparse multivariate polynomials over the rationals.

A polynomial maps exponent tuples (one entry per variable) to nonzero exact
coefficients.  Coefficients are ``Fraction`` whenever possible and fall back
to :class:`~symsos.scalars.Quad` for entries living in a real quadratic
extension (catalog data such as sqrt(3)/2 needs this).  Monomials are globally
ordered in graded lexicographic order with later variables ranking higher, so
the constant monomial is always first in a monomial vector.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .scalars import Quad, Scalar, exact

Monomial = tuple[int, ...]


class _MinusInfinity:
    """Degree of the zero polynomial; compares below every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __le__(self, other):
        return True

    def __ge__(self, other):
        return other is self

    def __repr__(self):
        return "MINUS_INFINITY"


MINUS_INFINITY = _MinusInfinity()


def grlex_key(m: Monomial) -> tuple:
    """Sort key for graded lex order; ties broken so later variables rank higher."""
    return (sum(m), tuple(reversed(m)))


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_degree(m: Monomial) -> int:
    return sum(m)


class Polynomial:
    """Sparse exact polynomial in a fixed number of variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[Monomial, Scalar] | None = None):
        if nvars < 1:
            raise ValueError("nvars must be >= 1")
        self.nvars = nvars
        canon: dict[Monomial, Scalar] = {}
        if terms:
            for m, c in terms.items():
                if len(m) != nvars:
                    raise ValueError(f"monomial {m} has wrong length for nvars={nvars}")
                if type(c) is not Fraction:
                    c = exact(c)
                if c != 0:
                    canon[m] = c
        self.terms = canon

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "Polynomial":
        return Polynomial(nvars)

    @staticmethod
    def constant(nvars: int, c: Scalar) -> "Polynomial":
        return Polynomial(nvars, {(0,) * nvars: c})

    @staticmethod
    def variable(nvars: int, i: int) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return Polynomial(nvars, {tuple(e): Fraction(1)})

    @staticmethod
    def monomial(nvars: int, m: Monomial, c: Scalar = 1) -> "Polynomial":
        return Polynomial(nvars, {tuple(m): c})

    # -- basic queries -------------------------------------------------------

    def degree(self):
        if not self.terms:
            return MINUS_INFINITY
        return max(sum(m) for m in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, m: Monomial) -> Scalar:
        return self.terms.get(tuple(m), Fraction(0))

    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def graded_part(self, d: int) -> "Polynomial":
        return Polynomial(self.nvars, {m: c for m, c in self.terms.items() if sum(m) == d})

    def degrees_present(self) -> list[int]:
        return sorted({sum(m) for m in self.terms})

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.terms.values())

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise ValueError(f"dimension mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Quad)):
            other = Polynomial.constant(self.nvars, other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return Polynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Quad)):
            other = Polynomial.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Quad)):
            return self.scale(other)
        self._check(other)
        out: dict[Monomial, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = monomial_mul(m1, m2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "Polynomial":
        return Polynomial(self.nvars, {m: v * c for m, v in self.terms.items()})

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = Polynomial.constant(self.nvars, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Quad)):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Polynomial({render_polynomial(self)!r})"


def poly_arith(op: str, p: Polynomial, q) -> Polynomial:
    """Dispatch helper mirroring the documented operation set."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "scale":
        return p.scale(q)
    raise ValueError(f"unknown op {op!r}")


def evaluate(p: Polynomial, point: Sequence[Scalar]):
    """Exact value of p at a rational (or quadratic) point."""
    if len(point) != p.nvars:
        raise ValueError("dimension mismatch in evaluate")
    point = [exact(v) for v in point]
    powers: dict[tuple[int, int], Scalar] = {}

    def pw(i: int, e: int):
        if e == 0:
            return Fraction(1)
        key = (i, e)
        if key not in powers:
            powers[key] = pw(i, e - 1) * point[i]
        return powers[key]

    total: Scalar = Fraction(0)
    for m, c in p.terms.items():
        term = c
        for i, e in enumerate(m):
            if e:
                term = term * pw(i, e)
        total = total + term
    return exact(total)


@dataclass(frozen=True)
class MonomialVector:
    """Graded-lex ordered monomial basis of R[x]_{<=d} (or a homogeneous slice)."""

    nvars: int
    entries: tuple[Monomial, ...]

    def __len__(self):
        return len(self.entries)

    def index(self) -> dict[Monomial, int]:
        return {m: i for i, m in enumerate(self.entries)}

    def polynomials(self) -> list[Polynomial]:
        return [Polynomial.monomial(self.nvars, m) for m in self.entries]


def _exponents_of_degree(n: int, d: int) -> Iterable[Monomial]:
    if n == 1:
        yield (d,)
        return
    for e in range(d + 1):
        for rest in _exponents_of_degree(n - 1, d - e):
            yield (e,) + rest


def monomial_vector(n: int, d: int, homogeneous: bool = False) -> MonomialVector:
    """All monomials of total degree <= d (or exactly d) in graded-lex order.

    The constant monomial is the first entry of the full basis, whose length
    is C(n+d, d).
    """
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    degrees = [d] if homogeneous else range(d + 1)
    entries = []
    for k in degrees:
        entries.extend(sorted(_exponents_of_degree(n, k), key=grlex_key))
    vec = MonomialVector(n, tuple(entries))
    if not homogeneous:
        assert len(vec) == math.comb(n + d, d)
    return vec


def substitute_linear(p: Polynomial, matrix: Sequence[Sequence[Scalar]]) -> Polynomial:
    """Replace each variable x_i by the i-th entry of M x, fully expanded."""
    n = p.nvars
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise ValueError("matrix dimension does not match polynomial variables")
    forms = [Polynomial(n, {tuple(1 if j == k else 0 for k in range(n)): matrix[i][j]
                            for j in range(n)}) for i in range(n)]
    powers: dict[tuple[int, int], Polynomial] = {}

    def pw(i: int, e: int) -> Polynomial:
        if e == 0:
            return Polynomial.constant(n, 1)
        key = (i, e)
        if key not in powers:
            powers[key] = pw(i, e - 1) * forms[i]
        return powers[key]

    out = Polynomial.zero(n)
    for m, c in p.terms.items():
        term = Polynomial.constant(n, c)
        for i, e in enumerate(m):
            if e:
                term = term * pw(i, e)
        out = out + term
    return out


# -- text format --------------------------------------------------------------


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
                    r"|(?P<op>[-+*/^()]))")


def _tokenize(text: str):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup == "int" or m.group("int"):
            out.append(("int", int(m.group("int")), m.start("int")))
        elif m.group("name"):
            out.append(("name", m.group("name"), m.start("name")))
        else:
            out.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    return out


def parse_polynomial(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse a +/- joined sum of rational-coefficient monomial products.

    Grammar: term = [rational][*] var^int [* ...] with rationals written as
    "p/q" or plain integers.  Raises :class:`PolynomialSyntaxError` with the
    offending position, ValueError for unknown variables or bad exponents.
    """
    n = len(variables)
    if n < 1:
        raise ValueError("need at least one variable")
    var_index = {v: i for i, v in enumerate(variables)}
    toks = _tokenize(text)
    if not toks:
        raise PolynomialSyntaxError("empty polynomial", 0)
    result: dict[Monomial, Scalar] = {}
    i = 0

    def peek(k=0):
        return toks[i + k] if i + k < len(toks) else ("end", None, len(text))

    while i < len(toks):
        sign = Fraction(1)
        while peek()[0] == "op" and peek()[1] in "+-":
            if peek()[1] == "-":
                sign = -sign
            i += 1
        coeff = sign
        expo = [0] * n
        saw_factor = False
        while True:
            kind, val, pos = peek()
            if kind == "int":
                num = Fraction(val)
                i += 1
                if peek()[0] == "op" and peek()[1] == "/":
                    i += 1
                    dk, dv, dp = peek()
                    if dk != "int":
                        raise PolynomialSyntaxError("expected denominator", dp)
                    num /= dv
                    i += 1
                coeff *= num
                saw_factor = True
            elif kind == "name":
                if val not in var_index:
                    raise ValueError(f"unknown variable name {val!r}")
                e = 1
                i += 1
                if peek()[0] == "op" and peek()[1] == "^":
                    i += 1
                    ek, ev, ep = peek()
                    if ek != "int":
                        raise PolynomialSyntaxError("non-integer exponent", ep)
                    e = ev
                    i += 1
                expo[var_index[val]] += e
                saw_factor = True
            else:
                break
            if peek()[0] == "op" and peek()[1] == "*":
                i += 1
                continue
            if peek()[0] in ("int", "name"):
                continue  # implicit multiplication
            break
        if not saw_factor:
            raise PolynomialSyntaxError("expected a term", peek()[2])
        kind, val, pos = peek()
        if kind == "op" and val not in "+-":
            raise PolynomialSyntaxError(f"unexpected {val!r}", pos)
        m = tuple(expo)
        result[m] = result.get(m, Fraction(0)) + coeff
    return Polynomial(n, result)


def _render_coeff(c: Scalar) -> str:
    if isinstance(c, Quad):
        raise ValueError("cannot render irrational coefficient in the text grammar")
    return str(c)


def render_polynomial(p: Polynomial, variables: Sequence[str] | None = None) -> str:
    """Canonical text form; parse(render(p), variables) round-trips."""
    if variables is None:
        variables = [f"x{i + 1}" for i in range(p.nvars)] if p.nvars > 3 else \
            ["x", "y", "z"][: p.nvars]
    if p.is_zero():
        return "0"
    parts = []
    for m in sorted(p.terms, key=grlex_key, reverse=True):
        c = p.terms[m]
        factors = [f"{variables[i]}^{e}" if e > 1 else variables[i]
                   for i, e in enumerate(m) if e]
        if not factors:
            body = _render_coeff(abs(c) if isinstance(c, Fraction) else c)
        elif isinstance(c, Fraction) and abs(c) == 1:
            body = "*".join(factors)
        else:
            body = _render_coeff(abs(c)) + "*" + "*".join(factors)
        neg = isinstance(c, Fraction) and c < 0
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)
