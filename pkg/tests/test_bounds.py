import math
import random
from fractions import Fraction

import pytest

from drinfeld import (
    BoundParams,
    MathPreconditionError,
    ineq1_holds,
    ineq2_holds,
    irreducibility_threshold,
    lambert_w_m1,
    lemma_threshold,
    n_d,
    omega_phi,
)
from drinfeld.bounds import dd_log_degree_bound, ineq1_rhs, ineq2_rhs


def bisect_root(fn, lo, hi, iters=200):
    """Independent bisection oracle for a sign change of fn on [lo, hi]."""
    flo = fn(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if (fn(mid) > 0) == (flo > 0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


RUNNING = BoundParams(q=3, d=1, r=2, h=Fraction(5), h_g=Fraction(5, 2))


def test_n_d_values():
    assert n_d(1) == 1280
    assert n_d(2) == 21870
    assert n_d(3) == 163840


def test_r_below_2_rejected():
    with pytest.raises(ValueError):
        BoundParams(q=3, d=1, r=1, h=Fraction(1), h_g=Fraction(1))


def test_dd_log_degree_bound():
    # log3(5) by bisection on 3^x = 5
    log3_5 = bisect_root(lambda x: 3**x - 5, 1.0, 2.0)
    p_r = BoundParams(q=3, d=1, r=2, h=Fraction(5), h_g=Fraction(5, 2), exp_base="r")
    assert math.isclose(dd_log_degree_bound(p_r), 21870 * log3_5, rel_tol=1e-9)
    p_d = RUNNING
    assert math.isclose(dd_log_degree_bound(p_d), 1280 * log3_5, rel_tol=1e-9)
    p_h1 = BoundParams(q=3, d=1, r=2, h=Fraction(1), h_g=Fraction(1))
    assert dd_log_degree_bound(p_h1) == 0.0


def test_ineq1_examples():
    # RHS = 1280 (2 + log3(31/8))
    rhs_oracle = 1280 * (2 + math.log(31 / 8) / math.log(3))
    assert math.isclose(ineq1_rhs(RUNNING), rhs_oracle, rel_tol=1e-12)
    r1 = ineq1_holds(1, RUNNING)
    assert r1.holds and r1.lhs == 1.0
    r100 = ineq1_holds(100, RUNNING)
    assert r100.holds and r100.lhs < -5000
    r20000 = ineq1_holds(20000, RUNNING)
    assert not r20000.holds and r20000.lhs > r20000.rhs


def test_ineq2_examples():
    rhs_oracle = 1280 * math.log(5) / math.log(3)
    assert math.isclose(ineq2_rhs(RUNNING), rhs_oracle, rel_tol=1e-12)
    assert ineq2_holds(100, RUNNING).holds
    assert not ineq2_holds(2000, RUNNING).holds
    p_h1 = BoundParams(q=3, d=1, r=2, h=Fraction(1), h_g=Fraction(1))
    r = ineq2_holds(1, p_h1)
    assert r.rhs == 0.0 and not r.holds


def test_lambert_branch_point():
    assert abs(lambert_w_m1(-math.exp(-1)) - (-1.0)) < 1e-6


def test_lambert_at_minus_point_one():
    # oracle: bisection on y e^y = -0.1 over [-10, -1]
    oracle = bisect_root(lambda y: y * math.exp(y) + 0.1, -10.0, -1.0)
    assert math.isclose(lambert_w_m1(-0.1), oracle, rel_tol=1e-9)
    assert math.isclose(lambert_w_m1(-0.1), -3.577152, rel_tol=1e-6)


def test_lambert_round_trip_from_minus_two():
    z = -2 * math.exp(-2)
    assert math.isclose(lambert_w_m1(z), -2.0, rel_tol=1e-12)


def test_lambert_round_trip_sweep():
    rng = random.Random(99)
    for _ in range(100):
        y = -1.0 - 29.0 * rng.random()
        w = lambert_w_m1(y * math.exp(y))
        assert abs(w - y) <= 1e-9 * abs(y)


def test_lambert_defining_identity_grid():
    z = -1e-12
    while z > -math.exp(-1):
        w = lambert_w_m1(z)
        assert abs(w * math.exp(w) - z) <= 1e-12 * abs(z)
        z *= 1.7


def test_lambert_domain_errors():
    with pytest.raises(MathPreconditionError):
        lambert_w_m1(0.1)
    with pytest.raises(MathPreconditionError):
        lambert_w_m1(-1.0)


def test_lemma_example_2_3_10():
    x_star = lemma_threshold(2, 3, 10)
    # oracle: bisection for 2^x = 10 x^3 on [15, 16]
    oracle = bisect_root(lambda x: 2**x - 10 * x**3, 15.0, 16.0)
    assert math.isclose(x_star, oracle, rel_tol=1e-9)
    assert 15.0 <= x_star <= 15.2
    # verification point: 2^16 / 16^3 = 16 > 10, exact integers
    assert 2**16 // 16**3 == 16 and 2**16 % 16**3 == 0


def test_lemma_example_e_1_e2():
    x_star = lemma_threshold(math.e, 1, math.e**2)
    oracle = bisect_root(lambda x: math.exp(x) - math.e**2 * x, 3.0, 4.0)
    assert math.isclose(x_star, oracle, rel_tol=1e-9)
    assert math.isclose(x_star, -lambert_w_m1(-math.exp(-2)), rel_tol=1e-12)


def test_lemma_hypothesis_gate():
    # a=e, b=1, c=1: c^(1/b) b / ln a = 1 < e
    with pytest.raises(MathPreconditionError):
        lemma_threshold(math.e, 1.0, 1.0)


def test_lemma_contract_random():
    rng = random.Random(4)
    count = 0
    while count < 50:
        a = 1.1 + 4 * rng.random()
        b = 0.5 + 5 * rng.random()
        c = math.exp(rng.uniform(0, 8))
        if c ** (1 / b) * b / math.log(a) < math.e:
            continue
        count += 1
        x_star = lemma_threshold(a, b, c)
        # x* solves a^x / x^b = c to relative 1e-9
        val = x_star * math.log(a) - b * math.log(x_star)
        assert abs(val - math.log(c)) <= 1e-9 * max(1.0, abs(math.log(c)))
        # x ->a^x/x^b strictly increasing past b/ln a
        assert x_star >= b / math.log(a)
        g = lambda x: x * math.log(a) - b * math.log(x)
        assert g(1.1 * x_star) > g(x_star)
        assert g(2.0 * x_star) > g(1.1 * x_star)


def test_omega_running_example():
    omega = omega_phi(RUNNING)
    t1 = 1280 * (2 + math.log(31 / 8) / math.log(3))
    t2 = 1280 * math.log(5) / math.log(3)
    assert math.isclose(omega, max(t1, t2), rel_tol=1e-12)
    shifted = BoundParams(
        q=3, d=1, r=2, h=Fraction(5), h_g=Fraction(5, 2), log_c2=10.0
    )
    assert math.isclose(omega_phi(shifted), omega + 10.0, rel_tol=1e-12)


def test_omega_degenerate_heights_clamped():
    p0 = BoundParams(q=3, d=1, r=2, h=Fraction(0), h_g=Fraction(0))
    # bracket = 0 + 1 + 3/2 - 9/8 = 11/8; second term clamps to 0
    oracle = 1280 * (2 + math.log(11 / 8) / math.log(3))
    assert math.isclose(omega_phi(p0), oracle, rel_tol=1e-12)


def test_threshold_running_example():
    rep = irreducibility_threshold(RUNNING)
    # independent bisection solve of q^x / x^1280 = q^omega
    omega = rep.omega
    fn = lambda x: x * math.log(3) - 1280 * math.log(x) - omega * math.log(3)
    oracle = bisect_root(fn, 1280 / math.log(3) + 1e-9, 1e6)
    assert abs(rep.c_threshold - oracle) <= 0.01 * oracle
    assert rep.threshold == max(rep.c_threshold, rep.omega)
    # both corollary conditions hold just past the threshold
    x = rep.threshold * 1.01
    assert x * math.log(3) - 1280 * math.log(x) > omega * math.log(3)
    assert x > omega


def test_threshold_monotone_in_h_g():
    base = irreducibility_threshold(RUNNING).threshold
    higher = irreducibility_threshold(
        BoundParams(q=3, d=1, r=2, h=Fraction(5), h_g=Fraction(7, 2))
    ).threshold
    assert higher > base


def test_cases_fail_beyond_threshold():
    rep = irreducibility_threshold(RUNNING)
    start = math.floor(rep.threshold) + 1
    for deg in range(start, start + 100):
        assert not ineq1_holds(deg, RUNNING).holds
        assert not ineq2_holds(deg, RUNNING).holds
