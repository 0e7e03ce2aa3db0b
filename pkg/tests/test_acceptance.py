"""Exit criteria: worked examples, oracle equivalences and bound properties.

Every comparison is an exact rational (in)equality.  Each criterion
function returns a deterministic transcript so the parallel run can be
compared byte for byte with the sequential one.
"""

import json
import math
import random
import time
from fractions import Fraction

from simplexbounds.certify import (
    RangeInfo,
    ScaleKind,
    Theorem,
    certify_gap,
    coeff_general,
    coeff_klp_sum,
    crossover_r,
    motzkin_straus_polynomial,
    qmax,
)
from simplexbounds.fixtures import neg_x1x2, sum_of_cubes, sum_of_squares
from simplexbounds.graphs import complete, cycle, petersen, stability_number
from simplexbounds.grid import grid_minimum
from simplexbounds.polya import ak_coefficients, polya_bound, polya_bound_via_expansion, polya_certificate
from simplexbounds.polycore import (
    Polynomial,
    bernstein_coefficients,
    falling_factorial,
    multi_falling_factorial,
    multinomial,
    multiply,
)

from conftest import ACCEPTANCE_LINES, brute_compositions, random_graph, random_homogeneous

F = Fraction


def q(x):
    return f"{x.numerator}/{x.denominator}"


def dump(obj):
    return json.dumps(obj, sort_keys=True)


def check(number, title, budget, fn, *args):
    t0 = time.perf_counter()
    try:
        out = fn(*args)
    except BaseException:
        ACCEPTANCE_LINES.append(f"FAIL  criterion {number}: {title}")
        raise
    dt = time.perf_counter() - t0
    ok = budget is None or dt < budget
    limit = "" if budget is None else f" (limit {budget:g} s)"
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title}  [{dt:.2f} s{limit}]")
    assert ok, f"criterion {number} took {dt:.2f} s, budget {budget} s"
    return out


# --------------------------------------------------------------------------
# 1. sum of squares closed forms
# --------------------------------------------------------------------------

def criterion_1(workers=1):
    log = []
    for n in (2, 3, 4, 5):
        f = sum_of_squares(n)
        rng = RangeInfo.closed_form(F(1, n), 1)
        for r in range(2, 9):
            s = r % n
            g = grid_minimum(f, r, workers).value
            p = polya_bound(f, r, workers).value
            assert g == F(1, n) + F(s * (n - s), n * r * r)
            assert g - p == F(1, r - 1) * (1 - F(1, n)) - F(s * (n - s), n * r * r * (r - 1))
            quad = next(row for row in certify_gap(f, r, rng, workers=workers) if row.theorem is Theorem.QUAD_NEW)
            assert quad.holds
            assert (quad.lhs == quad.rhs) == (s == 0)
            log.append((n, r, q(g), q(p), quad.status))
    return dump(log)


def test_criterion_1_example_sum_of_squares():
    check(1, "sum of squares grid values, gaps and tightness", 1.0, criterion_1)


# --------------------------------------------------------------------------
# 2. -x1*x2 closed forms
# --------------------------------------------------------------------------

def criterion_2(workers=1):
    log = []
    f = neg_x1x2()
    rng = RangeInfo.closed_form(F(-1, 4), 0)
    width = F(1, 4)
    for r in range(2, 11):
        g = grid_minimum(f, r, workers).value
        p = polya_bound(f, r, workers).value
        if r % 2 == 0:
            assert g == F(-1, 4)
            assert g - p == F(1, r - 1) * width
        else:
            assert g == F(-1, 4) + F(1, 4 * r * r)
            assert g - p == (F(1, r) + F(1, r * r)) * width
        sq = next(row for row in certify_gap(f, r, rng, workers=workers) if row.theorem is Theorem.SQFREE_NEW)
        assert sq.holds
        assert (sq.lhs == sq.rhs) == (r % 2 == 0)
        log.append((r, q(g), q(p), sq.status))
    return dump(log)


def test_criterion_2_example_neg_x1x2():
    check(2, "-x1*x2 even/odd closed forms, square-free bound tight at even r", 1.0, criterion_2)


# --------------------------------------------------------------------------
# 3. falling-factorial formula vs. expansion, certificate criticality
# --------------------------------------------------------------------------

def random_instances():
    rng = random.Random(31415)
    out = []
    for _ in range(100):
        n, d = rng.randint(1, 4), rng.randint(2, 4)
        out.append(random_homogeneous(rng, n, d))
    return out


def criterion_3(workers=1):
    log = []
    eps = F(1, 1000)
    for f in random_instances():
        for r in range(f.d, f.d + 5):
            lam = polya_bound(f, r, workers).value
            assert lam == polya_bound_via_expansion(f, r)
            cert = polya_certificate(f, r, lam)
            assert min(cert.values()) == 0
            assert min(polya_certificate(f, r, lam + eps).values()) < 0
            log.append(q(lam))
    return dump(log)


def test_criterion_3_polya_oracle_equivalence():
    check(3, "falling-factorial formula equals expansion bound; certificates critical", 30.0, criterion_3)


# --------------------------------------------------------------------------
# 4. diagonal quadratic bound on random quadratics
# --------------------------------------------------------------------------

def criterion_4(workers=1):
    rng = random.Random(2718)
    log = []
    for _ in range(200):
        f = random_homogeneous(rng, rng.randint(1, 6), 2)
        qm = qmax(f)
        for r in range(2, 9):
            g = grid_minimum(f, r, workers).value
            p = polya_bound(f, r, workers).value
            assert g - p <= (qm - g) / (r - 1)
            log.append(q(g - p))
    return dump(log)


def test_criterion_4_quadratic_qmax_bound():
    check(4, "grid/Polya gap <= (Q_max - f_grid)/(r-1) on 200 random quadratics", 10.0, criterion_4)


# --------------------------------------------------------------------------
# 5. RANGE certificates on fixtures with exactly known range
# --------------------------------------------------------------------------

def known_range_fixtures():
    # cubic: t^3 + (1-t)^3 = 3t^2 - 3t + 1 is minimized at t = 1/2
    t = F(1, 2)
    out = [("sum-cubes", sum_of_cubes(), RangeInfo.closed_form(3 * t * t - 3 * t + 1, 1))]
    for n in (2, 3, 4):
        out.append((f"squares-{n}", sum_of_squares(n), RangeInfo.closed_form(F(1, n), 1)))
    rng = random.Random(1618)
    graphs = [("c5", cycle(5)), ("petersen", petersen()), ("k4", complete(4))]
    graphs += [(f"random-{v}", random_graph(rng, v)) for v in (6, 8, 10, 12)]
    for name, g in graphs:
        out.append((name, motzkin_straus_polynomial(g), RangeInfo.closed_form(F(1, stability_number(g)), 1)))
    return out


def criterion_5(workers=1):
    log = []
    for name, f, rng in known_range_fixtures():
        for r in range(f.d, f.d + 7):
            rows = certify_gap(f, r, rng, workers=workers)
            kinds = {row.theorem for row in rows if row.scale_kind is ScaleKind.RANGE}
            assert Theorem.GENERAL_NEW in kinds
            if f.d == 3:
                assert Theorem.CUBIC_NEW in kinds
            for row in rows:
                if row.scale_kind is ScaleKind.RANGE:
                    assert row.holds, (name, r, row)
            log.append((name, r, [(row.theorem.value, q(row.lhs), q(row.rhs), row.status) for row in rows]))
    return dump(log)


def test_criterion_5_range_certificates():
    check(5, "cubic/general RANGE rows hold on known-range fixtures", 60.0, criterion_5)


# --------------------------------------------------------------------------
# 6. quartic coefficients and crossover
# --------------------------------------------------------------------------

def criterion_6():
    for r in range(4, 51):
        den = (r - 1) * (r - 2) * (r - 3)
        assert coeff_general(r, 4) == F(6 * r * r + 11 * r + 6, den) * math.comb(7, 4) * 4 ** 4
        printed = 12 * r * r - 58 * r + 144 - F(193, r) + F(132, r * r) - F(36, r ** 3)
        assert coeff_klp_sum(r, 4, "general") == printed / den * math.comb(7, 4) * 4 ** 4
        assert (coeff_general(r, 4) < coeff_klp_sum(r, 4, "general")) == (r >= 10)
    assert crossover_r(4, 50) == 10


def test_criterion_6_quartic_crossover():
    check(6, "quartic coefficients match printed forms; crossover at r = 10", 1.0, criterion_6)


# --------------------------------------------------------------------------
# 7. a_k values, falling-factorial identities, Vandermonde-Chu
# --------------------------------------------------------------------------

def _t_poly(coeffs):
    return Polynomial(1, {(k,): c for k, c in enumerate(coeffs)})


def _falling_in_t(d, shift):
    # (t + shift)(t + shift - 1)...(t + shift - d + 1) via sparse products
    out = _t_poly([1])
    for k in range(d):
        out = multiply(out, _t_poly([shift - k, 1]))
    return out


def criterion_7():
    assert ak_coefficients(2).a == (1,)
    assert ak_coefficients(3).a == (3, 2)
    assert ak_coefficients(4).a == (6, 11, 6)
    for d in range(2, 9):
        ak = ak_coefficients(d)
        unsigned = _t_poly([0] + [ak[d - k] for k in range(1, d)])
        t_d = _t_poly([0] * d + [1])
        assert unsigned == _falling_in_t(d, d - 1) - t_d
        signed = _t_poly([0] + [(-1) ** (d - k - 1) * ak[d - k] for k in range(1, d)])
        assert signed == t_d - _falling_in_t(d, 0)
    rng = random.Random(577)
    for _ in range(100):
        n, d = rng.randint(1, 4), rng.randint(0, 5)
        x = [rng.randint(-3, 6) for _ in range(n)]
        rhs = sum(multinomial(a) * multi_falling_factorial(x, a) for a in brute_compositions(n, d))
        assert falling_factorial(sum(x), d) == rhs


def test_criterion_7_identities():
    check(7, "a_k values, coefficientwise identities, Vandermonde-Chu", 1.0, criterion_7)


# --------------------------------------------------------------------------
# 8. hierarchy chain
# --------------------------------------------------------------------------

def criterion_8():
    for f in random_instances():
        rs = range(f.d, f.d + 5)
        lows = [polya_bound(f, r).value for r in rs]
        highs = [grid_minimum(f, r).value for r in rs]
        assert all(a <= b for a, b in zip(lows, lows[1:]))
        assert all(lo <= hi for lo in lows for hi in highs)
        assert lows[0] == min(bernstein_coefficients(f).values())


def test_criterion_8_hierarchy_chain():
    check(8, "Polya bounds nondecreasing, below every grid bound, base = min Bernstein", 10.0, criterion_8)


# --------------------------------------------------------------------------
# 9. determinism under parallel enumeration
# --------------------------------------------------------------------------

PARALLEL = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5]


def criterion_9():
    for fn in PARALLEL:
        base = fn(1)
        for w in (2, 8):
            assert fn(w) == base, f"{fn.__name__} differs with {w} workers"


def test_criterion_9_parallel_determinism():
    check(9, "criteria 1-5 byte-identical for 1, 2 and 8 workers", None, criterion_9)
