import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from simplexbounds.graphs import Graph
from simplexbounds.polycore import HomogeneousPolynomial, Polynomial


def brute_compositions(n, r):
    """I(n, r) by filtering the full box, sorted descending lex."""
    pts = [a for a in itertools.product(range(r + 1), repeat=n) if sum(a) == r]
    return sorted(pts, reverse=True)


def random_homogeneous(rng, n, d, lo=-9, hi=9, density=0.7):
    terms = {}
    for a in brute_compositions(n, d):
        if rng.random() < density:
            terms[a] = rng.randint(lo, hi)
    return HomogeneousPolynomial(n, d, terms)


def random_general(rng, n, max_deg, density=0.4):
    terms = {}
    for s in range(max_deg + 1):
        for a in brute_compositions(n, s):
            if rng.random() < density:
                num = rng.randint(-9, 9)
                den = rng.choice([k for k in range(-9, 10) if k])
                terms[a] = Fraction(num, den)
    if not any(terms.values()):
        terms[(0,) * (n - 1) + (max_deg,)] = 1
    return Polynomial(n, terms)


def random_graph(rng, v, p=0.35):
    return Graph.from_edges(v, [(i, j) for i in range(v) for j in range(i + 1, v) if rng.random() < p])


@st.composite
def homogeneous_polys(draw, max_n=3, max_d=3, min_d=1):
    n = draw(st.integers(1, max_n))
    d = draw(st.integers(min_d, max_d))
    monos = brute_compositions(n, d)
    coeffs = draw(st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=9), min_size=len(monos), max_size=len(monos)))
    return HomogeneousPolynomial(n, d, dict(zip(monos, coeffs)))


@pytest.fixture
def rng():
    return random.Random(20240611)


# --- acceptance summary -----------------------------------------------------

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
