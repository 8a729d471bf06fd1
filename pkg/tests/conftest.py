import random

import pytest

from drinfeld import (
    DrinfeldModule,
    Poly,
    fq_make,
    function_field,
)


@pytest.fixture(scope="session")
def f3():
    return fq_make(3)


@pytest.fixture(scope="session")
def f9():
    return fq_make(3, 2)


@pytest.fixture(scope="session")
def f2():
    return fq_make(2)


@pytest.fixture(scope="session")
def F3(f3):
    return function_field(f3)


def random_poly(rng: random.Random, fq, max_deg: int, nonzero=False) -> Poly:
    while True:
        coeffs = {
            i: fq.random_element(rng)
            for i in range(rng.randint(0, max_deg) + 1)
        }
        p = Poly(fq, coeffs)
        if not nonzero or not p.is_zero:
            return p


def random_rational(rng: random.Random, field, num_deg=3, den_deg=2, nonzero=False):
    from drinfeld import RationalFunc

    fq = field.fq
    while True:
        num = random_poly(rng, fq, num_deg)
        den = random_poly(rng, fq, den_deg, nonzero=True)
        x = RationalFunc(field, num, den)
        if not nonzero or not x.is_zero:
            return x


def random_module(rng: random.Random, field, rank: int, coeff_deg: int = 1):
    """Random module with polynomial coefficients of degree <= coeff_deg."""
    fq = field.fq
    coeffs = []
    for i in range(rank):
        if i == rank - 1:
            g = field.from_poly(random_poly(rng, fq, coeff_deg, nonzero=True))
        else:
            g = field.from_poly(random_poly(rng, fq, coeff_deg))
        coeffs.append(g)
    return DrinfeldModule(field, rank, coeffs)


def tau_minus_c_module(field, rank: int, c, others):
    """Module with (t - c) right-dividing phi_T: g_1 is solved so the
    remainder gamma(T) + sum g_i c^((q^i-1)/(q-1)) vanishes.

    others = [g_2, ..., g_r]."""
    q = field.q
    assert len(others) == rank - 1
    acc = field.t
    for i, g in enumerate(others, start=2):
        acc = acc + g * c ** ((q**i - 1) // (q - 1))
    g1 = -(acc / c)
    return DrinfeldModule(field, rank, [g1, *others])
