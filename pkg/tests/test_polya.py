import math
import random
from fractions import Fraction

import pytest
import sympy as sp

from simplexbounds.grid import grid_minimum
from simplexbounds.polya import (
    ak_coefficients,
    format_certificate,
    parse_certificate,
    polya_bound,
    polya_bound_via_expansion,
    polya_certificate,
    verify_certificate,
)
from simplexbounds.polycore import HomogeneousPolynomial, bernstein_coefficients, falling_factorial, multi_falling_factorial

from conftest import brute_compositions, random_homogeneous

F = Fraction
SQ2 = HomogeneousPolynomial(2, 2, {(2, 0): 1, (0, 2): 1})
NEG = HomogeneousPolynomial(2, 2, {(1, 1): -1})


def formula_oracle(f, r):
    # direct evaluation of the falling-factorial formula, point by point
    return min(
        sum(c * multi_falling_factorial(a, b) for b, c in f.items()) / F(falling_factorial(r, f.d))
        for a in brute_compositions(f.n, r)
    )


class TestPolyaBound:
    def test_base_case(self):
        assert polya_bound(SQ2, 2).value == 0

    def test_neg_x1x2_r4(self):
        assert polya_bound(NEG, 4).value == F(-1, 3)
        assert polya_bound(NEG, 4).witnesses == ((2, 2),)

    def test_sum_of_squares_r4(self):
        # f_grid - gap with s = 0: 1/2 - (1/3)(1/2)
        assert polya_bound(SQ2, 4).value == F(1, 3)

    def test_r_below_d(self):
        with pytest.raises(ValueError):
            polya_bound(SQ2, 1)
        with pytest.raises(ValueError):
            polya_certificate(SQ2, 1, 0)
        with pytest.raises(ValueError):
            polya_bound_via_expansion(SQ2, 1)

    def test_matches_pointwise_formula(self, rng):
        for _ in range(30):
            n, d = rng.randint(1, 3), rng.randint(1, 4)
            f = random_homogeneous(rng, n, d).scale(F(1, rng.randint(1, 5)))
            for r in range(d, d + 3):
                assert polya_bound(f, r).value == formula_oracle(f, r)


class TestExpansionOracle:
    def test_sum_of_squares_r3(self):
        assert polya_bound_via_expansion(SQ2, 3) == polya_bound(SQ2, 3).value == F(1, 3)

    def test_neg_x1x2_r5(self):
        v = polya_bound_via_expansion(NEG, 5)
        assert v == polya_bound(NEG, 5).value
        assert v == F(25, 20) * grid_minimum(NEG, 5).value == F(-3, 10)

    def test_linear(self):
        f = HomogeneousPolynomial(2, 1, {(1, 0): 2, (0, 1): 1})
        for r in range(1, 7):
            assert polya_bound_via_expansion(f, r) == polya_bound(f, r).value == 1

    def test_random_equivalence(self):
        rng = random.Random(99)
        for _ in range(40):
            n, d = rng.randint(1, 4), rng.randint(2, 4)
            f = random_homogeneous(rng, n, d)
            for r in range(d, d + 5):
                assert polya_bound(f, r).value == polya_bound_via_expansion(f, r)


class TestCertificate:
    def test_sum_of_squares_base(self):
        assert polya_certificate(SQ2, 2, 0) == {(2, 0): 1, (1, 1): 0, (0, 2): 1}

    def test_neg_x1x2_base(self):
        cert = polya_certificate(NEG, 2, F(-1, 2))
        assert cert == {(2, 0): F(1, 2), (1, 1): 0, (0, 2): F(1, 2)}

    def test_criticality(self, rng):
        for _ in range(25):
            n, d = rng.randint(1, 3), rng.randint(2, 3)
            f = random_homogeneous(rng, n, d)
            for r in (d, d + 2):
                lam = polya_bound(f, r).value
                cert = polya_certificate(f, r, lam)
                assert min(cert.values()) == 0
                assert min(polya_certificate(f, r, lam + F(1, 1000)).values()) < 0
                assert min(polya_certificate(f, r, lam + 1).values()) < 0

    def test_zero_sits_at_witnesses(self):
        cert = polya_certificate(NEG, 5, polya_bound(NEG, 5).value)
        zeros = {a for a, c in cert.items() if c == 0}
        assert zeros == set(polya_bound(NEG, 5).witnesses)

    def test_file_round_trip(self):
        lam = polya_bound(NEG, 4).value
        cert = polya_certificate(NEG, 4, lam)
        text = format_certificate(cert, 4, lam)
        assert text.splitlines()[0] == "# polya-certificate n=2 r=4 lambda=-1/3"
        assert text.splitlines()[1] == "4 0  1/3"
        r, lam2, cert2 = parse_certificate(text)
        assert (r, lam2, cert2) == (4, lam, cert)
        assert verify_certificate(NEG, r, lam2, cert2)
        cert2[(2, 2)] += 1
        assert not verify_certificate(NEG, r, lam2, cert2)

    def test_parse_rejects_headerless(self):
        with pytest.raises(ValueError):
            parse_certificate("1 1  0/1\n")


class TestHierarchy:
    def test_monotone_and_below_grid(self, rng):
        for _ in range(20):
            n, d = rng.randint(2, 3), rng.randint(2, 4)
            f = random_homogeneous(rng, n, d)
            rs = range(d, d + 5)
            lows = [polya_bound(f, r).value for r in rs]
            highs = [grid_minimum(f, r).value for r in rs]
            assert all(a <= b for a, b in zip(lows, lows[1:]))
            assert max(lows) <= min(highs)
            assert lows[0] == min(bernstein_coefficients(f).values())

    def test_square_free_ratio(self, rng):
        for _ in range(20):
            n, d = rng.randint(2, 4), rng.randint(1, 3)
            monos = [a for a in brute_compositions(n, d) if max(a) <= 1]
            f = HomogeneousPolynomial(n, d, {a: rng.randint(-5, 5) for a in monos})
            for r in range(d, d + 4):
                lhs = polya_bound(f, r).value * falling_factorial(r, d)
                assert lhs == grid_minimum(f, r).value * r ** d


class TestAk:
    @pytest.mark.parametrize("d, want", [(2, (1,)), (3, (3, 2)), (4, (6, 11, 6))])
    def test_values(self, d, want):
        assert ak_coefficients(d).a == want

    @pytest.mark.parametrize("d", range(2, 9))
    def test_identities_against_sympy(self, d):
        t = sp.symbols("t")
        ak = ak_coefficients(d)
        lhs = sp.Poly(sum(ak[d - k] * t ** k for k in range(1, d)), t)
        assert lhs == sp.Poly(sp.expand(sp.ff(t + d - 1, d) - t ** d), t)
        signed = sp.Poly(sum((-1) ** (d - k - 1) * ak[d - k] * t ** k for k in range(1, d)), t)
        assert signed == sp.Poly(sp.expand(t ** d - sp.ff(t, d)), t)
        assert all(a > 0 for a in ak.a)

    def test_unsigned_sum(self):
        ak = ak_coefficients(4)
        for r in range(4, 20):
            assert ak.unsigned_sum(r) == falling_factorial(r + 3, 4) - r ** 4 == r * (6 * r * r + 11 * r + 6)

    def test_small_d_rejected(self):
        with pytest.raises(ValueError):
            ak_coefficients(1)
        with pytest.raises(IndexError):
            ak_coefficients(3)[3]
