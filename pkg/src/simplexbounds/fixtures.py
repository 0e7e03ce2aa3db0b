"""Named built-in inputs for one-command reproduction of the worked examples."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Optional

from .certify import RangeInfo, motzkin_straus_polynomial
from .graphs import Graph, complete, cycle, petersen, stability_number
from .polycore import HomogeneousPolynomial

__all__ = ["Fixture", "FIXTURES", "get_fixture", "sum_of_squares", "neg_x1x2", "sum_of_cubes", "stable_set_range"]


def sum_of_squares(n: int) -> HomogeneousPolynomial:
    return HomogeneousPolynomial(n, 2, {tuple(2 if j == i else 0 for j in range(n)): 1 for i in range(n)})


def neg_x1x2() -> HomogeneousPolynomial:
    return HomogeneousPolynomial(2, 2, {(1, 1): -1})


def sum_of_cubes() -> HomogeneousPolynomial:
    return HomogeneousPolynomial(2, 3, {(3, 0): 1, (0, 3): 1})


def stable_set_range(g: Graph) -> RangeInfo:
    """[1/alpha(G), 1]: the Motzkin-Straus minimum and the vertex maximum."""
    return RangeInfo.closed_form(Fraction(1, stability_number(g)), 1)


@dataclass(frozen=True)
class Fixture:
    name: str
    description: str
    polynomial: Optional[Callable[[int], HomogeneousPolynomial]] = None
    range: Optional[Callable[[int], RangeInfo]] = None
    graph: Optional[Callable[[], Graph]] = None
    crossover_degree: Optional[int] = None


def _graph_fixture(name, desc, make):
    return Fixture(
        name,
        desc,
        polynomial=lambda n: motzkin_straus_polynomial(make()),
        range=lambda n: stable_set_range(make()),
        graph=make,
    )


FIXTURES: Dict[str, Fixture] = {
    f.name: f
    for f in [
        Fixture(
            "example-2.1",
            "sum of x_i^2 in n variables (default n=2); range [1/n, 1]",
            polynomial=sum_of_squares,
            range=lambda n: RangeInfo.closed_form(Fraction(1, n), 1),
        ),
        Fixture(
            "example-4.1",
            "-x1*x2; range [-1/4, 0]",
            polynomial=lambda n: neg_x1x2(),
            range=lambda n: RangeInfo.closed_form(Fraction(-1, 4), 0),
        ),
        Fixture("example-5.1", "quartic coefficient comparison (crossover table, d=4)", crossover_degree=4),
        Fixture(
            "sum-cubes",
            "x1^3 + x2^3; range [1/4, 1]",
            polynomial=lambda n: sum_of_cubes(),
            range=lambda n: RangeInfo.closed_form(Fraction(1, 4), 1),
        ),
        _graph_fixture("c5", "5-cycle, Motzkin-Straus form", lambda: cycle(5)),
        _graph_fixture("petersen", "Petersen graph, Motzkin-Straus form", petersen),
        _graph_fixture("k4", "complete graph K4, Motzkin-Straus form", lambda: complete(4)),
    ]
}


def get_fixture(name: str) -> Fixture:
    try:
        return FIXTURES[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}") from None
