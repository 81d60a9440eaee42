import math
import random

import pytest

from jantzen.arith import (ConsistencyError, Divisor, QuantumSpec, divisor_of_binomial, divisor_of_int,
                           divq_gaussian_binomial, divq_gaussian_int, divq_gaussian_int_d, nu_p)
from jantzen.oracles import divq_binomial_oracle, divq_int_oracle


def test_divisor_of_int():
    assert divisor_of_int(1) == Divisor()
    assert divisor_of_int(12) == {2: 2, 3: 1}
    assert divisor_of_int(21) == {3: 1, 7: 1}
    assert divisor_of_int(-21) == {3: 1, 7: 1}
    with pytest.raises(ValueError):
        divisor_of_int(0)


def test_nu_p():
    assert nu_p(Divisor({3: 1, 7: 1}), 3) == 1
    assert nu_p(Divisor(), 5) == 0
    assert nu_p(divisor_of_int(48), 2) == 4


def test_divisor_of_binomial():
    assert divisor_of_binomial(7, 2) == {3: 1, 7: 1}
    assert divisor_of_binomial(9, 0) == Divisor()
    assert divisor_of_binomial(10, 5) == {2: 2, 3: 2, 7: 1}
    for r in range(0, 60):
        for j in range(r + 1):
            assert divisor_of_binomial(r, j) == divisor_of_int(math.comb(r, j))
    with pytest.raises(ValueError):
        divisor_of_binomial(3, 4)


def test_divisor_algebra():
    a, b = divisor_of_int(12), divisor_of_int(45)
    assert a + b == divisor_of_int(540)
    assert (a - a).is_zero() and not (a - a)
    assert -a == Divisor({2: -2, 3: -1})
    assert 3 * b == Divisor({3: 6, 5: 3})
    assert sum([a, b]) == a + b
    assert str(Divisor({2: 2, 3: 1})) == "2^2·3"
    assert str(Divisor({3: -1, 5: 1})) == "3^-1·5"
    assert str(Divisor()) == "0"
    assert Divisor.from_json(a.to_json()) == a
    assert a.to_json() == {"2": 2, "3": 1}
    assert len({a, divisor_of_int(12)}) == 1


def test_additivity_random():
    rng = random.Random(0)
    for _ in range(300):
        x, y = rng.randint(1, 10**6), rng.randint(1, 10**6)
        assert divisor_of_int(x * y) == divisor_of_int(x) + divisor_of_int(y)


def test_binomial_identity():
    for r in range(0, 101):
        for m in range(1, r + 1):
            lhs = divisor_of_binomial(r, m) - divisor_of_binomial(r, r + 1 - m)
            assert lhs == divisor_of_int(r + 1 - m) - divisor_of_int(m)


def test_quantum_spec_validation():
    QuantumSpec(3)
    QuantumSpec(5, 3)
    QuantumSpec(3, 2)
    for bad in ((4, 0), (1, 0), (3, 3), (9, 3), (5, 4), (15, 5)):
        with pytest.raises(ValueError):
            QuantumSpec(*bad)
    with pytest.raises(ValueError):
        QuantumSpec(3, 2).require_quantum_group()
    with pytest.raises(ValueError):
        QuantumSpec(5, 3, has_g2=True).require_quantum_group()
    QuantumSpec(5, 3).require_quantum_group()


def test_divq_examples():
    assert divq_gaussian_int(6, QuantumSpec(3)) == 1
    assert divq_gaussian_int(4, QuantumSpec(3)) == 0
    assert divq_gaussian_int(6, QuantumSpec(3, 2)) == 2
    assert divq_gaussian_int(45, QuantumSpec(3, 5)) == 5
    assert divq_gaussian_int_d(3, 2, QuantumSpec(3)) == 1
    assert divq_gaussian_int_d(3, 3, QuantumSpec(3)) == 0
    with pytest.raises(ValueError):
        divq_gaussian_int(0, QuantumSpec(3))


def test_divq_binomial_examples():
    assert divq_gaussian_binomial(7, 2, 1, QuantumSpec(3)) == 1
    assert divq_gaussian_binomial(7, 2, 1, QuantumSpec(3, 2)) == 2
    for r in range(8):
        assert divq_gaussian_binomial(r, 0, 2, QuantumSpec(5, 7)) == 0


def test_divq_binomial_symmetry():
    for spec in (QuantumSpec(3), QuantumSpec(5, 7), QuantumSpec(3, 5)):
        for d in (1, 2):
            for r in range(30):
                for j in range(r + 1):
                    assert divq_gaussian_binomial(r, j, d, spec) == divq_gaussian_binomial(r, r - j, d, spec)


def test_divq_binomial_matches_polynomial_oracle():
    for spec in (QuantumSpec(3), QuantumSpec(3, 2), QuantumSpec(5, 3)):
        for d in (1, 2):
            for r in range(16):
                for j in range(r + 1):
                    assert divq_gaussian_binomial(r, j, d, spec) == divq_binomial_oracle(r, j, d, spec)


def test_divq_int_matches_polynomial_oracle_small():
    for spec in (QuantumSpec(3), QuantumSpec(5, 2), QuantumSpec(7, 3)):
        for m in range(1, 40):
            assert divq_gaussian_int(m, spec) == divq_int_oracle(m, spec)


def test_consistency_error_is_runtime_error():
    assert issubclass(ConsistencyError, RuntimeError)
