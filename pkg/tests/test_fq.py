import random

import pytest

from drinfeld import fq_make
from drinfeld.fq import _fp_is_irreducible


def test_prime_field_has_no_modulus(f3):
    assert f3.p == 3 and f3.e == 1 and f3.q == 3
    assert f3.modulus is None


def test_f9_modulus_is_lex_first_irreducible(f9):
    # oracle: enumerate monic quadratics over F_3 in lex order (c0 first),
    # irreducible iff no root in F_3
    found = None
    for c0 in range(3):
        for c1 in range(3):
            if all((x * x + c1 * x + c0) % 3 != 0 for x in range(3)):
                found = [c0, c1, 1]
                break
        if found:
            break
    assert found == [1, 0, 1]  # z^2 + 1
    assert f9.modulus == found


def test_non_prime_p_rejected():
    with pytest.raises(ValueError):
        fq_make(4, 1)
    with pytest.raises(ValueError):
        fq_make(3, 0)


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (3, 2), (2, 3), (5, 1)])
def test_field_axioms_random_samples(p, e):
    fq = fq_make(p, e)
    rng = random.Random(p * 100 + e)
    for _ in range(200):
        a, b, c = (fq.random_element(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == fq.zero
        if a:
            assert a * a.inverse() == fq.one
    assert fq.one * fq.one == fq.one


def test_pow_and_fermat(f9):
    for x in f9.elements():
        assert x**9 == x  # q-power fixes F_q
        if x:
            assert x**8 == f9.one


def test_element_interning_and_hash(f9):
    a = f9.element(5)
    b = f9.element(5)
    assert a is b
    assert hash(a) == hash(b)
    assert len({f9.element(v) for v in range(9)}) == 9


def test_defining_modulus_irreducible_over_fp():
    for p, e in [(2, 2), (2, 4), (3, 2), (3, 3), (5, 2)]:
        fq = fq_make(p, e)
        assert _fp_is_irreducible(fq.modulus, p)


def test_repr_uses_z_for_extensions(f9):
    z = f9.generator
    assert repr(z) == "z"
    assert repr(z + f9.one) == "z + 1"
    assert repr(f9.zero) == "0"
