"""Exact sparse polynomials over the rationals.

Exponent vectors are plain tuples of nonnegative ints; coefficients are
:class:`fractions.Fraction`.  The canonical term order is descending
lexicographic on the exponent tuple, so ``x1^2`` comes before ``x1*x2``
which comes before ``x2^2``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

MultiIndex = Tuple[int, ...]
Scalar = Union[int, Fraction]

__all__ = [
    "MultiIndex",
    "ParseError",
    "Polynomial",
    "HomogeneousPolynomial",
    "parse_polynomial",
    "homogenize",
    "evaluate",
    "falling_factorial",
    "multi_falling_factorial",
    "multinomial",
    "compositions",
    "bernstein_coefficients",
    "bernstein_range",
    "multiply",
    "simplex_power",
]


class ParseError(ValueError):
    """Raised for malformed polynomial text; ``pos`` is a 0-based offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


def degree(alpha: Sequence[int]) -> int:
    return sum(alpha)


def compositions(n: int, r: int) -> Iterator[MultiIndex]:
    """Yield every exponent vector of length `n` summing to `r`, descending lex.

    This is the shared enumeration of I(n, r); :mod:`simplexbounds.grid`
    exposes the ranked/partitioned version.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if r < 0:
        return
    a = [0] * n
    a[0] = r
    while True:
        yield tuple(a)
        # rightmost nonzero position that is not the last one
        i = n - 2
        while i >= 0 and a[i] == 0:
            i -= 1
        if i < 0:
            return
        tail = a[n - 1]
        a[n - 1] = 0
        a[i] -= 1
        a[i + 1] = tail + 1


def falling_factorial(x: Scalar, d: int) -> Scalar:
    """Return x (x-1) ... (x-d+1); the empty product (d = 0) is 1."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    out: Scalar = 1
    for k in range(d):
        out *= x - k
    return out


def multi_falling_factorial(alpha: Sequence[int], beta: Sequence[int]) -> int:
    if len(alpha) != len(beta):
        raise ValueError(f"dimension mismatch: {len(alpha)} != {len(beta)}")
    out = 1
    for a, b in zip(alpha, beta):
        if b:
            out *= falling_factorial(a, b)
            if not out:
                return 0
    return out


def multinomial(alpha: Sequence[int]) -> int:
    """|alpha|! / alpha!"""
    out = math.factorial(sum(alpha))
    for a in alpha:
        out //= math.factorial(a)
    return out


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"coefficient must be int, Fraction or str, not {type(c).__name__}")


class Polynomial:
    """Immutable sparse polynomial in `n` variables (mixed degrees allowed).

    ``terms`` maps exponent tuples to nonzero Fractions.  Zero coefficients
    are dropped at construction, so two equal polynomials always compare
    equal and hash equal.
    """

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Sequence[int], Scalar] = ()):
        if not isinstance(n, int) or n < 1:
            raise ValueError("number of variables must be a positive integer")
        clean: Dict[MultiIndex, Fraction] = {}
        for alpha, c in dict(terms).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != n:
                raise ValueError(f"exponent vector {alpha} has length {len(alpha)}, expected {n}")
            if any(a < 0 for a in alpha):
                raise ValueError(f"negative exponent in {alpha}")
            c = _as_fraction(c)
            if c:
                clean[alpha] = clean.get(alpha, 0) + c
                if not clean[alpha]:
                    del clean[alpha]
        self.n = n
        self._terms = dict(sorted(clean.items(), reverse=True))
        self._hash = None

    @property
    def terms(self) -> Dict[MultiIndex, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, alpha: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(alpha), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def total_degree(self) -> int:
        if not self._terms:
            raise ValueError("the zero polynomial has no degree")
        return max(sum(a) for a in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(a) for a in self._terms}) <= 1

    def homogeneous_part(self, s: int) -> "Polynomial":
        return Polynomial(self.n, {a: c for a, c in self._terms.items() if sum(a) == s})

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, tuple(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}({self.n}, {to_string(self)!r})"

    def __str__(self):
        return to_string(self)

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        _check_same_n(self, other)
        terms = dict(self._terms)
        for a, c in other._terms.items():
            terms[a] = terms.get(a, 0) + c
        return Polynomial(self.n, terms)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return multiply(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "Polynomial":
        c = _as_fraction(c)
        return type(self)._rebuild(self, {a: c * v for a, v in self._terms.items()})

    @classmethod
    def _rebuild(cls, like, terms):
        return Polynomial(like.n, terms)

    def __call__(self, x):
        return evaluate(self, x)


class HomogeneousPolynomial(Polynomial):
    """A :class:`Polynomial` whose terms all have degree ``d``.

    The zero polynomial is allowed and keeps the declared degree, so
    Bernstein coefficients and grid bounds of ``0`` are well defined.
    """

    __slots__ = ("d",)

    def __init__(self, n: int, d: int, terms: Mapping[Sequence[int], Scalar] = ()):
        if not isinstance(d, int) or d < 0:
            raise ValueError("degree must be a nonnegative integer")
        super().__init__(n, terms)
        for alpha in self._terms:
            if sum(alpha) != d:
                raise ValueError(f"term {alpha} has degree {sum(alpha)}, expected {d}")
        self.d = d

    @classmethod
    def from_polynomial(cls, p: Polynomial, d: int | None = None) -> "HomogeneousPolynomial":
        if d is None:
            d = p.total_degree
        return cls(p.n, d, p.terms)

    @classmethod
    def _rebuild(cls, like, terms):
        return HomogeneousPolynomial(like.n, like.d, terms)

    def __eq__(self, other):
        if isinstance(other, HomogeneousPolynomial) and self.d != other.d and (self._terms or other._terms):
            return False
        return super().__eq__(other)

    __hash__ = Polynomial.__hash__

    def __repr__(self):
        return f"HomogeneousPolynomial({self.n}, {self.d}, {to_string(self)!r})"


def _check_same_n(f: Polynomial, g: Polynomial) -> None:
    if f.n != g.n:
        raise ValueError(f"dimension mismatch: {f.n} variables vs {g.n}")


# --------------------------------------------------------------------------
# text I/O
# --------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>x)|(?P<op>[-+*/^])|(?P<bad>\S))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        kind = m.lastgroup
        start = m.start(kind)
        if kind == "bad":
            raise ParseError(f"unexpected character {m.group(kind)!r}", start)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, n: int):
        self.toks = _tokenize(text)
        self.i = 0
        self.n = n

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind, value=None, what=None):
        tok = self.take()
        if tok[0] != kind or (value is not None and tok[1] != value):
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {what or value or kind}, found {found}", tok[2])
        return tok

    def expr(self) -> Dict[MultiIndex, Fraction]:
        terms: Dict[MultiIndex, Fraction] = {}
        sign = 1
        if self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
        while True:
            alpha, c = self.term()
            terms[alpha] = terms.get(alpha, 0) + sign * c
            tok = self.peek()
            if tok[0] == "end":
                return terms
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                sign = -1 if tok[1] == "-" else 1
                continue
            raise ParseError(f"expected '+', '-' or end of input, found {tok[1]!r}", tok[2])

    def coef(self) -> Fraction:
        num = int(self.take()[1])
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "/":
            self.take()
            den_tok = self.peek()
            if den_tok[0] == "op" and den_tok[1] == "-":
                raise ParseError("denominator must be positive", den_tok[2])
            den = int(self.expect("int", what="denominator")[1])
            if den == 0:
                raise ParseError("zero denominator", den_tok[2])
            return Fraction(num, den)
        return Fraction(num)

    def term(self):
        exps = [0] * self.n
        c = Fraction(1)
        tok = self.peek()
        if tok[0] == "int":
            c = self.coef()
            nxt = self.peek()
            if not (nxt[0] == "op" and nxt[1] == "*"):
                return tuple(exps), c  # bare constant
            self.take()
        self.factor(exps)
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            self.factor(exps)
        return tuple(exps), c

    def factor(self, exps):
        self.expect("var", what="variable 'x<index>'")
        idx_tok = self.expect("int", what="variable index")
        idx = int(idx_tok[1])
        if not 1 <= idx <= self.n:
            raise ParseError(f"variable index {idx} out of range 1..{self.n}", idx_tok[2])
        e = 1
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            e = int(self.expect("int", what="exponent")[1])
        exps[idx - 1] += e


def parse_polynomial(text: str, n: int) -> Polynomial:
    """Parse ``"3/2*x1^3 - x1*x2*x3"``-style text into a :class:`Polynomial`.

    Bare rational constants are accepted as terms, and a variable repeated
    inside one term multiplies (``x1*x1`` is ``x1^2``).
    """
    if n < 1:
        raise ValueError("number of variables must be positive")
    if not text.strip():
        raise ParseError("empty expression", 0)
    return Polynomial(n, _Parser(text, n).expr())


def _fmt_monomial(alpha: MultiIndex) -> str:
    parts = []
    for i, e in enumerate(alpha, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


def to_string(f: Polynomial) -> str:
    """Canonical text form; ``parse_polynomial(to_string(f), f.n) == f``."""
    if f.is_zero():
        return "0"
    out = []
    for k, (alpha, c) in enumerate(f.items()):
        mono = _fmt_monomial(alpha)
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


# --------------------------------------------------------------------------
# algebra
# --------------------------------------------------------------------------

def evaluate(f: Polynomial, x: Sequence[Scalar]) -> Fraction:
    if len(x) != f.n:
        raise ValueError(f"dimension mismatch: point has {len(x)} coordinates, polynomial has {f.n} variables")
    x = [_as_fraction(v) for v in x]
    total = Fraction(0)
    for alpha, c in f.items():
        term = c
        for xi, e in zip(x, alpha):
            if e:
                term *= xi ** e
        total += term
    return total


def multiply(f: Polynomial, g: Polynomial) -> Polynomial:
    _check_same_n(f, g)
    out: Dict[MultiIndex, Fraction] = {}
    for a, ca in f.items():
        for b, cb in g.items():
            key = tuple(i + j for i, j in zip(a, b))
            out[key] = out.get(key, 0) + ca * cb
    if isinstance(f, HomogeneousPolynomial) and isinstance(g, HomogeneousPolynomial):
        return HomogeneousPolynomial(f.n, f.d + g.d, out)
    return Polynomial(f.n, out)


def simplex_power(n: int, m: int) -> HomogeneousPolynomial:
    """(x1 + ... + xn)^m expanded by the multinomial theorem."""
    if m < 0:
        raise ValueError("exponent must be nonnegative")
    return HomogeneousPolynomial(n, m, {a: multinomial(a) for a in compositions(n, m)})


def homogenize(f: Polynomial) -> HomogeneousPolynomial:
    """Lift each degree-s part by (x1+...+xn)^(d-s); agrees with f on the simplex."""
    if f.is_zero():
        raise ValueError("cannot homogenize the empty polynomial")
    d = f.total_degree
    out = HomogeneousPolynomial(f.n, d)
    for s in sorted({sum(a) for a in f}):
        part = HomogeneousPolynomial(f.n, s, f.homogeneous_part(s).terms)
        out = out + (part if s == d else multiply(part, simplex_power(f.n, d - s)))
    return HomogeneousPolynomial(f.n, d, out.terms)


def bernstein_coefficients(f: HomogeneousPolynomial) -> Dict[MultiIndex, Fraction]:
    """f_beta * beta!/d! for every beta in I(n, d), absent monomials included."""
    if f.d < 1:
        raise ValueError("Bernstein coefficients need degree >= 1")
    return {b: f.coefficient(b) / multinomial(b) for b in compositions(f.n, f.d)}


def bernstein_bounds(f: HomogeneousPolynomial) -> Tuple[Fraction, Fraction]:
    vals = bernstein_coefficients(f).values()
    return min(vals), max(vals)


def bernstein_range(f: HomogeneousPolynomial) -> Fraction:
    lo, hi = bernstein_bounds(f)
    return hi - lo


def as_homogeneous(f: Polynomial) -> HomogeneousPolynomial:
    """Return `f` as a HomogeneousPolynomial, homogenizing when needed."""
    if isinstance(f, HomogeneousPolynomial):
        return f
    if f.is_homogeneous() and not f.is_zero():
        return HomogeneousPolynomial.from_polynomial(f)
    return homogenize(f)


def integer_form(f: Polynomial) -> Tuple[Tuple[Tuple[int, MultiIndex], ...], int]:
    """Scale `f` to integer coefficients.

    Returns ``(terms, den)`` where ``terms`` holds ``(num, alpha)`` pairs and
    ``f = sum(num * x^alpha) / den`` with ``den > 0``.
    """
    den = 1
    for c in f._terms.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    terms = tuple((int(c * den), a) for a, c in f.items())
    return terms, den


def rational_points(n: int, r: int) -> Iterable[Tuple[Fraction, ...]]:
    """Grid points alpha/r of the simplex, as Fractions."""
    for a in compositions(n, r):
        yield tuple(Fraction(ai, r) for ai in a)
