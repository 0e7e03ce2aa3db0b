"""Polya-hierarchy lower bounds.

The bound of order r - d is the largest lambda for which
``(x1+...+xn)^(r-d) * (f - lambda*(x1+...+xn)^d)`` has nonnegative
coefficients.  :func:`polya_bound` evaluates it by the falling-factorial
formula over I(n, r); :func:`polya_bound_via_expansion` recomputes it from
the expanded product and is kept as an independent cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Tuple

from .grid import kernel_source, minimize_kernel
from .polycore import (
    HomogeneousPolynomial,
    MultiIndex,
    compositions,
    falling_factorial,
    integer_form,
    multiply,
    simplex_power,
)

__all__ = [
    "PolyaBound",
    "AkCoefficients",
    "polya_bound",
    "polya_certificate",
    "polya_bound_via_expansion",
    "ak_coefficients",
    "format_certificate",
    "parse_certificate",
    "verify_certificate",
]


@dataclass(frozen=True)
class PolyaBound:
    r: int
    d: int
    value: Fraction
    witnesses: Tuple[MultiIndex, ...]


def _check_order(f: HomogeneousPolynomial, r: int) -> None:
    if f.d < 1:
        raise ValueError("Polya bounds need a polynomial of degree >= 1")
    if r < f.d:
        raise ValueError(f"Polya bound needs r >= d (got r={r}, d={f.d})")


def polya_bound(f: HomogeneousPolynomial, r: int, workers: int = 1) -> PolyaBound:
    """Lower bound of order r - d via min over alpha of
    sum_beta f_beta * alpha^(beta falling) / r^(d falling)."""
    _check_order(f, r)
    terms, den = integer_form(f)
    best, wit = minimize_kernel(kernel_source(f.n, terms, falling=True), f.n, r, workers)
    return PolyaBound(r, f.d, Fraction(best, den * falling_factorial(r, f.d)), wit)


def polya_certificate(f: HomogeneousPolynomial, r: int, lam) -> Dict[MultiIndex, Fraction]:
    """All coefficients of (sum x)^(r-d) * (f - lam * (sum x)^d), zeros included."""
    _check_order(f, r)
    lam = Fraction(lam)
    shifted = f - simplex_power(f.n, f.d).scale(lam)
    shifted = HomogeneousPolynomial(f.n, f.d, shifted.terms)
    prod = multiply(simplex_power(f.n, r - f.d), shifted)
    return {a: prod.coefficient(a) for a in compositions(f.n, r)}


def polya_bound_via_expansion(f: HomogeneousPolynomial, r: int) -> Fraction:
    """Same quantity as :func:`polya_bound`, from the expanded product.

    The coefficient of x^alpha in (sum x)^r is r!/alpha!, so the largest
    feasible lambda is the minimum over alpha of coeff_alpha * alpha!/r!.
    """
    _check_order(f, r)
    prod = multiply(simplex_power(f.n, r - f.d), f)
    rfact = math.factorial(r)
    best = None
    for a in compositions(f.n, r):
        afact = math.prod(math.factorial(ai) for ai in a)
        v = prod.coefficient(a) * afact / rfact
        if best is None or v < best:
            best = v
    return best


# --------------------------------------------------------------------------
# a_k coefficients of t^d - t^(d falling)
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class AkCoefficients:
    """Positive integers a_1..a_{d-1} with
    t^d - t^(d falling) = sum_k (-1)^(d-k-1) a_{d-k} t^k."""

    d: int
    a: Tuple[int, ...]

    def __getitem__(self, j: int) -> int:
        if not 1 <= j <= self.d - 1:
            raise IndexError(f"a_{j} undefined for d={self.d}")
        return self.a[j - 1]

    def unsigned_sum(self, t):
        """sum_{k=1}^{d-1} a_{d-k} t^k, which equals (t+d-1)^(d falling) - t^d."""
        return sum(self[self.d - k] * t ** k for k in range(1, self.d))


def _poly_mul_linear(coeffs: List[int], shift: int) -> List[int]:
    # multiply sum c_i t^i by (t + shift)
    out = [0] * (len(coeffs) + 1)
    for i, c in enumerate(coeffs):
        out[i + 1] += c
        out[i] += shift * c
    return out


def _falling_poly(d: int, offset: int = 0) -> List[int]:
    """Dense coefficients (low to high) of (t+offset)(t+offset-1)...(t+offset-d+1)."""
    coeffs = [1]
    for k in range(d):
        coeffs = _poly_mul_linear(coeffs, offset - k)
    return coeffs


def ak_coefficients(d: int) -> AkCoefficients:
    if d < 2:
        raise ValueError("a_k coefficients need d >= 2")
    fall = _falling_poly(d)
    diff = [-c for c in fall]
    diff[d] += 1  # t^d - t^(d falling); leading terms cancel
    assert diff[d] == 0 and diff[0] == 0
    a = [0] * (d - 1)
    for k in range(1, d):
        a[d - k - 1] = (-1) ** (d - k - 1) * diff[k]
    if any(v <= 0 for v in a):
        raise ArithmeticError(f"non-positive a_k for d={d}: {a}")
    rising = _falling_poly(d, offset=d - 1)
    rising[d] -= 1
    for k in range(1, d):
        if rising[k] != a[d - k - 1]:
            raise ArithmeticError(f"identity check failed at t^{k} for d={d}")
    if rising[0] != 0 or rising[d] != 0:
        raise ArithmeticError(f"identity check failed for d={d}")
    return AkCoefficients(d, tuple(a))


# --------------------------------------------------------------------------
# certificate files
# --------------------------------------------------------------------------

def format_certificate(coeffs: Mapping[MultiIndex, Fraction], r: int, lam) -> str:
    """One line per exponent vector (descending lex): ``e1 e2 ... en  p/q``."""
    lam = Fraction(lam)
    n = len(next(iter(coeffs)))
    lines = [f"# polya-certificate n={n} r={r} lambda={_q(lam)}"]
    for a in sorted(coeffs, reverse=True):
        lines.append(" ".join(str(e) for e in a) + "  " + _q(coeffs[a]))
    return "\n".join(lines) + "\n"


def _q(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_certificate(text: str):
    """Inverse of :func:`format_certificate`; returns ``(r, lam, coeffs)``."""
    r = lam = None
    coeffs: Dict[MultiIndex, Fraction] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            fields = dict(tok.split("=", 1) for tok in line[1:].split() if "=" in tok)
            if "r" in fields:
                r = int(fields["r"])
            if "lambda" in fields:
                lam = Fraction(fields["lambda"])
            continue
        parts = line.split()
        try:
            alpha = tuple(int(p) for p in parts[:-1])
            coeffs[alpha] = Fraction(parts[-1])
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if r is None or lam is None:
        raise ValueError("certificate header with r= and lambda= is missing")
    return r, lam, coeffs


def verify_certificate(f: HomogeneousPolynomial, r: int, lam, coeffs: Mapping[MultiIndex, Fraction]) -> bool:
    """True iff `coeffs` is exactly the expansion for (f, r, lam) and is nonnegative."""
    expected = polya_certificate(f, r, lam)
    return dict(coeffs) == expected and all(c >= 0 for c in expected.values())
