"""Error-bound coefficients and certificate rows for the grid/Polya gap.

Every bound here has the shape

    f_grid(r) - f_polya(r)  <=  c(r, d) * scale

where ``scale`` is either the range of values ``f_max - f_min`` or, for
the quadratic diagonal bound, ``Q_max - f_grid(r)``.  Coefficients are
exact Fractions.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .graphs import Graph
from .grid import GridMinimum, grid_maximum, grid_minimum
from .polya import PolyaBound, polya_bound
from .polycore import HomogeneousPolynomial, falling_factorial

__all__ = [
    "Theorem",
    "ScaleKind",
    "RangeSource",
    "PolyClass",
    "RangeInfo",
    "CertificateRow",
    "classify",
    "coeff_quadratic",
    "coeff_cubic",
    "coeff_square_free",
    "coeff_general",
    "coeff_klp_sum",
    "qmax",
    "certify_gap",
    "crossover_r",
    "crossover_table",
    "brute_force_range",
    "motzkin_straus_polynomial",
]


class Theorem(enum.Enum):
    # declaration order is the report order
    QUAD_NEW = "QUAD_NEW"
    QUAD_QMAX = "QUAD_QMAX"
    CUBIC_NEW = "CUBIC_NEW"
    SQFREE_NEW = "SQFREE_NEW"
    GENERAL_NEW = "GENERAL_NEW"
    QUAD_KLP_SUM = "QUAD_KLP_SUM"
    CUBIC_KLP_SUM = "CUBIC_KLP_SUM"
    GENERAL_KLP_SUM = "GENERAL_KLP_SUM"

    @property
    def order(self) -> int:
        return list(Theorem).index(self)


class ScaleKind(enum.Enum):
    RANGE = "RANGE"
    QMAX_GAP = "QMAX_GAP"


class RangeSource(enum.Enum):
    CLOSED_FORM = "CLOSED_FORM"
    BRUTE_FORCE_SMALL = "BRUTE_FORCE_SMALL"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class PolyClass:
    degree: int
    is_quadratic: bool
    is_cubic: bool
    is_square_free: bool

    @property
    def is_general(self) -> bool:
        return self.degree >= 2


@dataclass(frozen=True)
class RangeInfo:
    """Simplex minimum and maximum of f, when known exactly."""

    f_min_exact: Optional[Fraction] = None
    f_max_exact: Optional[Fraction] = None
    source: RangeSource = RangeSource.UNKNOWN

    def __post_init__(self):
        lo, hi = self.f_min_exact, self.f_max_exact
        if lo is not None and hi is not None and lo > hi:
            raise ValueError(f"range minimum {lo} exceeds maximum {hi}")

    @property
    def known(self) -> bool:
        return self.f_min_exact is not None and self.f_max_exact is not None

    @property
    def width(self) -> Fraction:
        if not self.known:
            raise ValueError("range is not known")
        return self.f_max_exact - self.f_min_exact

    @classmethod
    def closed_form(cls, lo, hi) -> "RangeInfo":
        return cls(Fraction(lo), Fraction(hi), RangeSource.CLOSED_FORM)


@dataclass(frozen=True)
class CertificateRow:
    theorem: Theorem
    r: int
    d: int
    coefficient: Fraction
    lhs: Fraction
    rhs: Fraction
    scale_kind: ScaleKind

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs

    @property
    def status(self) -> str:
        if self.lhs == self.rhs:
            return "TIGHT"
        return "HOLDS" if self.lhs < self.rhs else "VIOLATED"


def classify(f: HomogeneousPolynomial) -> PolyClass:
    return PolyClass(
        degree=f.d,
        is_quadratic=f.d == 2,
        is_cubic=f.d == 3,
        is_square_free=all(e <= 1 for alpha in f for e in alpha),
    )


# --------------------------------------------------------------------------
# coefficients c(r, d)
# --------------------------------------------------------------------------

def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def coeff_quadratic(r: int) -> Fraction:
    _need(r >= 2, f"quadratic bound needs r >= 2, got {r}")
    return Fraction(1, r - 1)


def coeff_cubic(r: int) -> Fraction:
    _need(r >= 3, f"cubic bound needs r >= 3, got {r}")
    return Fraction(4 * r, (r - 1) * (r - 2))


def coeff_square_free(r: int, d: int) -> Fraction:
    _need(r >= d >= 1, f"square-free bound needs r >= d >= 1, got r={r}, d={d}")
    return Fraction(r ** d, falling_factorial(r, d)) - 1


def bernstein_factor(d: int) -> int:
    """C(2d-1, d) * d^d, the Bernstein-range-to-value-range constant."""
    return math.comb(2 * d - 1, d) * d ** d


def coeff_general(r: int, d: int) -> Fraction:
    _need(r >= d >= 2, f"general bound needs r >= d >= 2, got r={r}, d={d}")
    rf = falling_factorial(r, d)
    return Fraction(falling_factorial(r + d - 1, d) - r ** d, rf) * bernstein_factor(d)


def coeff_klp_sum(r: int, d: int, kind: str = "general") -> Fraction:
    """Sum of the two earlier one-sided bounds for `kind` in
    {"quadratic", "cubic", "general"}."""
    if isinstance(kind, PolyClass):
        kind = "quadratic" if kind.is_quadratic else "cubic" if kind.is_cubic else "general"
    if kind == "quadratic":
        _need(d == 2, f"quadratic comparison needs d = 2, got {d}")
        _need(r >= 2, f"quadratic comparison needs r >= 2, got {r}")
        return Fraction(1, r - 1) + Fraction(1, r)
    if kind == "cubic":
        _need(d == 3, f"cubic comparison needs d = 3, got {d}")
        _need(r >= 3, f"cubic comparison needs r >= 3, got {r}")
        return coeff_cubic(r) + Fraction(4, r) - Fraction(4, r * r)
    if kind == "general":
        _need(r >= d >= 2, f"general comparison needs r >= d >= 2, got r={r}, d={d}")
        rd, rf = r ** d, falling_factorial(r, d)
        return (Fraction(rd, rf) - Fraction(rf, rd)) * bernstein_factor(d)
    raise ValueError(f"unknown polynomial class {kind!r}")


def qmax(f: HomogeneousPolynomial) -> Fraction:
    """Largest diagonal entry of the symmetric Q with f = x^T Q x."""
    _need(f.d == 2, f"Q_max is defined for quadratics only (d={f.d})")
    return max(f.coefficient(tuple(2 if j == i else 0 for j in range(f.n))) for i in range(f.n))


# --------------------------------------------------------------------------
# certificates
# --------------------------------------------------------------------------

def certify_gap(
    f: HomogeneousPolynomial,
    r: int,
    rng: RangeInfo | None = None,
    *,
    workers: int = 1,
    grid: GridMinimum | None = None,
    polya: PolyaBound | None = None,
) -> List[CertificateRow]:
    """Evaluate every applicable bound on ``f_grid(r) - f_polya(r)``.

    RANGE rows appear only when `rng` carries both exact endpoints; the
    Q_max row of a quadratic never needs them.  Precomputed `grid` and
    `polya` results are reused when given.
    """
    d = f.d
    _need(d >= 1, "certificates need degree >= 1")
    _need(r >= d, f"certificates need r >= d (got r={r}, d={d})")
    rng = rng or RangeInfo()
    grid = grid or grid_minimum(f, r, workers)
    polya = polya or polya_bound(f, r, workers)
    lhs = grid.value - polya.value
    cls = classify(f)
    rows: List[CertificateRow] = []

    def add(thm, coef, rhs, kind=ScaleKind.RANGE):
        rows.append(CertificateRow(thm, r, d, coef, lhs, rhs, kind))

    if d == 1:
        add(Theorem.SQFREE_NEW, Fraction(0), Fraction(0))
        return rows

    if cls.is_quadratic:
        c = coeff_quadratic(r)
        add(Theorem.QUAD_QMAX, c, c * (qmax(f) - grid.value), ScaleKind.QMAX_GAP)
    if rng.known:
        w = rng.width
        if cls.is_quadratic:
            c = coeff_quadratic(r)
            add(Theorem.QUAD_NEW, c, c * w)
            c = coeff_klp_sum(r, d, "quadratic")
            add(Theorem.QUAD_KLP_SUM, c, c * w)
        if cls.is_cubic:
            c = coeff_cubic(r)
            add(Theorem.CUBIC_NEW, c, c * w)
            c = coeff_klp_sum(r, d, "cubic")
            add(Theorem.CUBIC_KLP_SUM, c, c * w)
        if cls.is_square_free:
            c = coeff_square_free(r, d)
            add(Theorem.SQFREE_NEW, c, c * w)
        c = coeff_general(r, d)
        add(Theorem.GENERAL_NEW, c, c * w)
        c = coeff_klp_sum(r, d, "general")
        add(Theorem.GENERAL_KLP_SUM, c, c * w)
    rows.sort(key=lambda row: (row.theorem.order, row.r))
    return rows


def crossover_table(d: int, r_max: int) -> List[Tuple[int, Fraction, Fraction, bool]]:
    """``(r, new, klp_sum, new < klp_sum)`` for r = d..r_max."""
    _need(d >= 2, "crossover needs d >= 2")
    out = []
    for r in range(d, r_max + 1):
        new, old = coeff_general(r, d), coeff_klp_sum(r, d, "general")
        out.append((r, new, old, new < old))
    return out


def crossover_r(d: int, r_max: int) -> Optional[int]:
    """Smallest r <= r_max from which the new general coefficient stays
    strictly below the summed prior coefficient through r_max."""
    found = None
    for r, _, _, better in reversed(crossover_table(d, r_max)):
        if not better:
            break
        found = r
    return found


def brute_force_range(f: HomogeneousPolynomial, r_probe: int, workers: int = 1) -> RangeInfo:
    """Grid min/max at resolution `r_probe`.

    The grid minimum only bounds the simplex minimum from above (and the
    grid maximum bounds the maximum from below); the pair is the exact
    range only when both optima are known to sit on this grid.
    """
    lo = grid_minimum(f, r_probe, workers).value
    hi = grid_maximum(f, r_probe, workers).value
    return RangeInfo(lo, hi, RangeSource.BRUTE_FORCE_SMALL)


def motzkin_straus_polynomial(g: Graph) -> HomogeneousPolynomial:
    """x^T (I + A) x for the adjacency matrix A of `g`."""
    terms = {}
    for i in range(g.v):
        terms[tuple(2 if k == i else 0 for k in range(g.v))] = 1
    for i, j in g.edges:
        terms[tuple(1 if k in (i, j) else 0 for k in range(g.v))] = 2
    return HomogeneousPolynomial(g.v, 2, terms)
