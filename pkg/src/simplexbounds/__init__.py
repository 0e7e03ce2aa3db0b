"""Exact bounds for minimizing homogeneous polynomials over the standard simplex."""

from .certify import (
    CertificateRow,
    PolyClass,
    RangeInfo,
    RangeSource,
    ScaleKind,
    Theorem,
    brute_force_range,
    certify_gap,
    classify,
    coeff_cubic,
    coeff_general,
    coeff_klp_sum,
    coeff_quadratic,
    coeff_square_free,
    crossover_r,
    crossover_table,
    motzkin_straus_polynomial,
    qmax,
)
from .graphs import Graph, parse_edge_list, stability_number
from .grid import GridMinimum, GridSpec, enumerate_compositions, grid_maximum, grid_minimum, grid_size
from .polya import (
    AkCoefficients,
    PolyaBound,
    ak_coefficients,
    polya_bound,
    polya_bound_via_expansion,
    polya_certificate,
)
from .polycore import (
    HomogeneousPolynomial,
    ParseError,
    Polynomial,
    bernstein_coefficients,
    bernstein_range,
    evaluate,
    falling_factorial,
    homogenize,
    multi_falling_factorial,
    multiply,
    parse_polynomial,
    simplex_power,
    to_string,
)

__version__ = "0.1.0"
