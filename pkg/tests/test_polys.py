import random

import pytest

from drinfeld import Poly, factor, factor_degrees, is_irreducible, iter_monic_irreducibles
from drinfeld.polys import iter_monic_polys

from conftest import random_poly


def c3(f3, n):
    return Poly.constant(f3, f3.from_int(n))


def test_mul_example(f3):
    T = Poly.x(f3)
    # (T+1)(T+2) = T^2 + 3T + 2 = T^2 + 2 over F_3
    assert (T + Poly.one(f3)) * (T + c3(f3, 2)) == T * T + c3(f3, 2)


def test_divmod_example(f3):
    T = Poly.x(f3)
    q, r = divmod(T * T + Poly.one(f3), T)
    assert q == T and r == Poly.one(f3)


def test_gcd_example(f3):
    T = Poly.x(f3)
    # T^2 + 2 = (T+1)(T+2); Euclid oracle
    g = (T * T + c3(f3, 2)).gcd(T + Poly.one(f3))
    assert g == T + Poly.one(f3)


def test_divmod_reconstruction_1000(f3):
    rng = random.Random(42)
    for _ in range(1000):
        f = random_poly(rng, f3, 8)
        g = random_poly(rng, f3, 5, nonzero=True)
        q, r = divmod(f, g)
        assert q * g + r == f
        assert r.is_zero or r.degree < g.degree


def test_is_irreducible_examples(f3):
    T = Poly.x(f3)
    assert is_irreducible(T * T + Poly.one(f3))  # no root: squares are {0,1}
    assert not is_irreducible(T * T + T)  # visible factor T
    assert is_irreducible(T)  # degree 1
    assert not is_irreducible(Poly.one(f3))  # constants report false
    with pytest.raises(ValueError):
        is_irreducible(Poly.zero(f3))


def test_irreducible_matches_root_oracle_deg2(f3):
    # degree <= 3 is irreducible iff no root in F_3
    for f in iter_monic_polys(f3, 2):
        has_root = any(not f.eval(x) for x in f3.elements())
        assert is_irreducible(f) == (not has_root)


def test_irreducible_count_deg_2_and_3(f3):
    # standard counts: (q^2 - q)/2 = 3 and (q^3 - q)/3 = 8 for q = 3
    deg2 = [f for f in iter_monic_polys(f3, 2) if is_irreducible(f)]
    deg3 = [f for f in iter_monic_polys(f3, 3) if is_irreducible(f)]
    assert len(deg2) == 3
    assert len(deg3) == 8


def test_factor_reconstructs(f3):
    rng = random.Random(7)
    for _ in range(60):
        f = random_poly(rng, f3, 7, nonzero=True)
        fac = factor(f)
        prod = Poly.one(f3)
        for p, m in fac.items():
            assert is_irreducible(p)
            prod = prod * p**m
        assert prod == f.monic()


def test_factor_degrees_with_multiplicity(f3):
    T = Poly.x(f3)
    one = Poly.one(f3)
    assert factor_degrees(T * T) == [1, 1]
    assert factor_degrees(T * T + one) == [2]
    assert factor_degrees((T * T + one) ** 2 * T) == [1, 2, 2]
    # p-th power case: T^3 + 2 = (T + 2)^3 over F_3
    assert factor_degrees(T**3 + c3(f3, 2)) == [1, 1, 1]


def test_factor_degrees_over_f9(f9):
    # over F_9, T^2 + 1 splits: (T - z)(T + z) with z^2 = -1
    T = Poly.x(f9)
    assert factor_degrees(T * T + Poly.one(f9)) == [1, 1]


def test_iter_monic_irreducibles_order(f3):
    out = [repr(f) for f in iter_monic_irreducibles(f3, 2)]
    assert out == ["T", "T + 1", "T + 2", "T^2 + 1", "T^2 + T + 2", "T^2 + 2*T + 2"]


def test_pow_and_eval(f3):
    T = Poly.x(f3)
    f = (T + Poly.one(f3)) ** 3
    # freshman's dream: (T+1)^3 = T^3 + 1 over F_3
    assert f == T**3 + Poly.one(f3)
    assert f.eval(f3.from_int(1)) == f3.from_int(2)


def test_xgcd_bezout(f3):
    rng = random.Random(3)
    for _ in range(100):
        f = random_poly(rng, f3, 6, nonzero=True)
        g = random_poly(rng, f3, 6, nonzero=True)
        d, s, t = f.xgcd(g)
        assert s * f + t * g == d
        assert d.is_monic
