from itertools import product

import pytest

from securegroupcast import Field, NotPrimeError, field_new, is_prime, least_prime_at_least

SMALL_PRIMES = [2, 3, 5, 7, 11, 13]


def test_field_new_accepts_primes():
    assert field_new(2).p == 2
    assert field_new(7).p == 7


def test_field_new_rejects_composites_and_garbage():
    with pytest.raises(NotPrimeError):
        field_new(6)
    with pytest.raises(NotPrimeError):
        field_new(1)
    with pytest.raises(NotPrimeError):
        field_new(0)


def test_inv_examples():
    assert Field(7).inv(2) == 4
    assert Field(2).inv(1) == 1
    assert Field(5).inv(3) == 2


def test_inv_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        Field(5).inv(0)


def test_least_prime_at_least():
    assert least_prime_at_least(2) == 2
    assert least_prime_at_least(11) == 11
    assert least_prime_at_least(12) == 13
    assert least_prime_at_least(15) == 17
    with pytest.raises(ValueError):
        least_prime_at_least(1)


def test_is_prime_against_trial_division():
    def slow(n):
        return n >= 2 and all(n % d for d in range(2, n))
    for n in range(500):
        assert is_prime(n) == slow(n), n


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_field_axioms_exhaustive(p):
    """Associativity, commutativity, distributivity, inverses for p <= 13."""
    f = Field(p)
    elems = range(p)
    for a, b in product(elems, repeat=2):
        assert f.add(a, b) == f.add(b, a)
        assert f.mul(a, b) == f.mul(b, a)
        assert f.add(a, f.neg(a)) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1
    for a, b, c in product(elems, repeat=3):
        assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_inv_involution(p):
    f = Field(p)
    for a in range(1, p):
        assert f.inv(f.inv(a)) == a


def test_field_contexts_compare_by_modulus():
    assert Field(5) == Field(5)
    assert Field(5) != Field(7)
    assert hash(Field(5)) == hash(Field(5))
