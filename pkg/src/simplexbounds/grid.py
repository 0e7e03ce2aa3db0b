"""Regular grid Delta(n, r) and the grid upper bound on the simplex minimum.

Grid points are identified with exponent vectors alpha in I(n, r) (the
point is alpha / r).  Enumeration is descending lexicographic and every
composition has a rank in ``range(grid_size(n, r))``; contiguous rank
ranges are the unit of work for parallel minimization.
"""

from __future__ import annotations

import atexit
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, List, Sequence, Tuple

from .polycore import HomogeneousPolynomial, MultiIndex, integer_form

__all__ = [
    "GridSpec",
    "GridMinimum",
    "grid_size",
    "enumerate_compositions",
    "composition_rank",
    "composition_unrank",
    "partition_ranks",
    "grid_minimum",
    "grid_maximum",
    "running_minimum",
]


@dataclass(frozen=True)
class GridSpec:
    n: int
    r: int

    def __post_init__(self):
        if self.n < 1 or self.r < 0:
            raise ValueError(f"invalid grid parameters n={self.n}, r={self.r}")

    @property
    def size(self) -> int:
        return grid_size(self.n, self.r)

    def __iter__(self):
        return enumerate_compositions(self.n, self.r)


@dataclass(frozen=True)
class GridMinimum:
    """Minimum of an integer kernel over I(n, r), plus every minimizer.

    ``value`` is exact; ``witnesses`` lists the minimizing alpha in
    enumeration order.  Shared by the grid bound and the Polya bound.
    """

    r: int
    value: Fraction
    witnesses: Tuple[MultiIndex, ...]

    def points(self):
        """Witnesses as simplex points (tuples of Fractions)."""
        return [tuple(Fraction(a, self.r) for a in w) for w in self.witnesses]


def grid_size(n: int, r: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    if r < 0:
        return 0
    return math.comb(n + r - 1, r)


def _count(parts: int, total: int) -> int:
    # compositions of `total` into `parts` nonnegative parts
    if parts == 0:
        return 1 if total == 0 else 0
    return math.comb(parts + total - 1, total)


def composition_unrank(n: int, r: int, k: int) -> MultiIndex:
    """The k-th composition (0-based) in descending lexicographic order."""
    if not 0 <= k < grid_size(n, r):
        raise IndexError(f"rank {k} out of range for I({n},{r})")
    out = []
    rem = r
    for i in range(n - 1):
        v = rem
        while True:
            block = _count(n - i - 1, rem - v)
            if k < block:
                break
            k -= block
            v -= 1
        out.append(v)
        rem -= v
    out.append(rem)
    return tuple(out)


def composition_rank(alpha: Sequence[int]) -> int:
    n = len(alpha)
    rem = sum(alpha)
    k = 0
    for i in range(n - 1):
        # skip every composition whose i-th entry is larger than alpha[i]
        for v in range(rem, alpha[i], -1):
            k += _count(n - i - 1, rem - v)
        rem -= alpha[i]
    return k


def enumerate_compositions(n: int, r: int, start: int = 0, stop: int | None = None) -> Iterator[MultiIndex]:
    """Stream I(n, r) in descending lexicographic order, ranks [start, stop).

    Constant memory: each item is derived from its predecessor.
    """
    if n < 1:
        raise ValueError("n must be positive")
    total = grid_size(n, r)
    stop = total if stop is None else min(stop, total)
    if start >= stop:
        return
    a = list(composition_unrank(n, r, start))
    for _ in range(stop - start):
        yield tuple(a)
        i = n - 2
        while i >= 0 and a[i] == 0:
            i -= 1
        if i < 0:
            return
        tail = a[n - 1]
        a[n - 1] = 0
        a[i] -= 1
        a[i + 1] = tail + 1


def partition_ranks(total: int, parts: int) -> List[Tuple[int, int]]:
    """Split ``range(total)`` into at most `parts` contiguous nonempty ranges."""
    parts = max(1, min(parts, total))
    q, rem = divmod(total, parts)
    out = []
    lo = 0
    for p in range(parts):
        hi = lo + q + (1 if p < rem else 0)
        out.append((lo, hi))
        lo = hi
    return out


# --------------------------------------------------------------------------
# compiled integer kernels
# --------------------------------------------------------------------------

def kernel_source(n: int, terms: Sequence[Tuple[int, MultiIndex]], falling: bool) -> str:
    """Python source for ``k(a) = sum(c * a^beta)`` (or the falling-factorial
    variant ``sum(c * a^(beta falling))``) over integer vectors ``a``."""
    top = [0] * n
    for _, beta in terms:
        for i, e in enumerate(beta):
            top[i] = max(top[i], e)
    lines = ["def kernel(a):"]
    names = ", ".join(f"a{i}" for i in range(n))
    lines.append(f"    {names}, = a")
    for i, m in enumerate(top):
        for e in range(1, m + 1):
            if e == 1:
                rhs = f"a{i}"
            elif falling:
                rhs = f"p{i}_{e - 1} * (a{i} - {e - 1})"
            else:
                rhs = f"p{i}_{e - 1} * a{i}"
            lines.append(f"    p{i}_{e} = {rhs}")
    pieces = []
    for c, beta in terms:
        factors = [f"p{i}_{e}" for i, e in enumerate(beta) if e]
        pieces.append("*".join([f"({c})"] + factors))
    lines.append("    return " + (" + ".join(pieces) if pieces else "0"))
    return "\n".join(lines)


@lru_cache(maxsize=256)
def _compile(src: str) -> Callable[[Sequence[int]], int]:
    ns: dict = {}
    exec(compile(src, "<kernel>", "exec"), ns)
    return ns["kernel"]


def _scan(src: str, n: int, r: int, start: int, stop: int):
    kernel = _compile(src)
    best = None
    wit: List[MultiIndex] = []
    for a in enumerate_compositions(n, r, start, stop):
        v = kernel(a)
        if best is None or v < best:
            best = v
            wit = [a]
        elif v == best:
            wit.append(a)
    return best, wit


_POOLS: dict = {}


def _pool(workers: int) -> ProcessPoolExecutor:
    pool = _POOLS.get(workers)
    if pool is None:
        pool = _POOLS[workers] = ProcessPoolExecutor(max_workers=workers)
    return pool


@atexit.register
def _shutdown_pools():
    for pool in _POOLS.values():
        pool.shutdown(wait=False, cancel_futures=True)
    _POOLS.clear()


def minimize_kernel(src: str, n: int, r: int, workers: int = 1):
    """Minimize a compiled kernel over I(n, r).

    Ranks are split into ``workers`` contiguous ranges; partial results are
    merged in rank order, so the output does not depend on ``workers``.
    Returns ``(min_value, witnesses)``.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    ranges = partition_ranks(grid_size(n, r), workers)
    if workers == 1 or len(ranges) == 1:
        parts = [_scan(src, n, r, lo, hi) for lo, hi in ranges]
    else:
        pool = _pool(workers)
        futs = [pool.submit(_scan, src, n, r, lo, hi) for lo, hi in ranges]
        parts = [f.result() for f in futs]
    best = min(p[0] for p in parts)
    wit = [w for p in parts if p[0] == best for w in p[1]]
    return best, tuple(wit)


def _check(f: HomogeneousPolynomial, r: int) -> None:
    if r < 1:
        raise ValueError("grid resolution r must be >= 1")
    if f.d < 1:
        raise ValueError("grid bounds need a polynomial of degree >= 1")


def grid_minimum(f: HomogeneousPolynomial, r: int, workers: int = 1) -> GridMinimum:
    """f_Delta(n, r): the minimum of f over the grid points alpha / r."""
    _check(f, r)
    terms, den = integer_form(f)
    best, wit = minimize_kernel(kernel_source(f.n, terms, falling=False), f.n, r, workers)
    return GridMinimum(r, Fraction(best, den * r ** f.d), wit)


def grid_maximum(f: HomogeneousPolynomial, r: int, workers: int = 1) -> GridMinimum:
    """Maximum of f over Delta(n, r), reported with its maximizers."""
    _check(f, r)
    terms, den = integer_form(f)
    neg = [(-c, b) for c, b in terms]
    best, wit = minimize_kernel(kernel_source(f.n, neg, falling=False), f.n, r, workers)
    return GridMinimum(r, Fraction(-best, den * r ** f.d), wit)


def running_minimum(values: Sequence[Tuple[int, Fraction]]) -> List[Tuple[int, Fraction]]:
    """min over k <= r of f_Delta(n, k), restricted to the r values supplied."""
    out = []
    cur = None
    for r, v in sorted(values):
        cur = v if cur is None or v < cur else cur
        out.append((r, cur))
    return out

