import random
from fractions import Fraction

import pytest

from localzeta import InvalidArgument, InvalidInversion, QScalar

from conftest import nonzero_fraction, rq


def test_defining_relation():
    # (0 + 1*sqrt(q))^2 = q
    x = QScalar.root_q(5)
    assert x * x == rq(5, 5)
    assert x**2 == rq(5, 5)


def test_identity_powers():
    one = QScalar.one(7)
    for k in (-3, 0, 1, 10):
        assert one**k == one


def test_sqrt_inverse_derived():
    # solve (a + b sqrt(q)) (0 + 1 sqrt(q)) = 1 componentwise: bq = 1, a = 0
    q = 4
    x = QScalar.root_q(q)
    expected = QScalar(0, Fraction(1, q), q)
    assert x**-1 == expected
    assert x * expected == QScalar.one(q)


def test_q_half_power():
    q = 9
    assert QScalar.q_half_power(2, q) == rq(9, q)
    assert QScalar.q_half_power(-2, q) == rq(Fraction(1, 9), q)
    assert QScalar.q_half_power(3, q) == QScalar(0, 9, q)
    assert QScalar.q_half_power(-3, q) * QScalar.q_half_power(3, q) == QScalar.one(q)
    assert QScalar.q_half_power(1, q) * QScalar.q_half_power(1, q) == rq(q, q)


def test_formal_sqrt_not_collapsed():
    # over q = 4 the symbol sqrt(q) stays distinct from the integer 2
    assert QScalar.root_q(4) != rq(2, 4)
    assert QScalar.root_q(4) ** 2 == rq(4, 4)


def test_mixed_q_rejected():
    with pytest.raises(InvalidArgument):
        rq(1, 4) + rq(1, 5)


def test_non_invertible_inversion():
    # norm of 2 + sqrt(4) is 4 - 4 = 0
    x = QScalar(2, 1, 4)
    assert x.norm() == 0
    with pytest.raises(InvalidInversion):
        x.inverse()
    with pytest.raises(InvalidInversion):
        x**-1
    with pytest.raises(InvalidInversion):
        QScalar.one(4) / x


def test_zero_inversion():
    with pytest.raises(InvalidInversion):
        QScalar.zero(5).inverse()


def test_zeroth_power_of_non_invertible():
    # x^0 = 1 never needs an inverse
    assert QScalar(2, 1, 4) ** 0 == QScalar.one(4)
    assert QScalar.zero(4) ** 0 == QScalar.one(4)


def _random_scalar(rng, q):
    return QScalar(nonzero_fraction(rng), nonzero_fraction(rng), q)


@pytest.mark.parametrize("q", [2, 4, 7])
def test_ring_axioms_random(q):
    rng = random.Random(q * 101)
    for _ in range(60):
        a, b, c = (_random_scalar(rng, q) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert a + b == b + a


@pytest.mark.parametrize("q", [3, 4, 9])
def test_norm_multiplicative(q):
    rng = random.Random(q)
    for _ in range(60):
        a, b = _random_scalar(rng, q), _random_scalar(rng, q)
        assert (a * b).norm() == a.norm() * b.norm()


def test_inverse_roundtrip_random():
    rng = random.Random(5)
    for _ in range(40):
        a = _random_scalar(rng, 7)
        assert a * a.inverse() == QScalar.one(7)
        assert a**-3 * a**3 == QScalar.one(7)


def test_int_promotion():
    a = rq(Fraction(1, 2), 5)
    assert a + 1 == rq(Fraction(3, 2), 5)
    assert 2 * a == rq(1, 5)
    assert 1 - a == rq(Fraction(1, 2), 5)
    assert a / 2 == rq(Fraction(1, 4), 5)
    assert 1 / a == rq(2, 5)


def test_float_embedding():
    x = QScalar(1, Fraction(1, 2), 2)
    assert abs(float(x) - (1 + 0.5 * 2**0.5)) < 1e-15


def test_json_roundtrip():
    x = QScalar(Fraction(-3, 7), Fraction(5, 2), 11)
    assert x.to_json() == {"rat": "-3/7", "sqrt": "5/2"}
    assert QScalar.from_json(x.to_json(), 11) == x
    assert QScalar.from_json("4", 11) == rq(4, 11)
    assert QScalar.from_json({"rat": "1/3"}, 11) == rq(Fraction(1, 3), 11)


def test_bad_inputs():
    with pytest.raises(InvalidArgument):
        QScalar(1, 0, q=1)
    with pytest.raises(InvalidArgument):
        QScalar(1.5, 0, q=4)
    with pytest.raises(InvalidArgument):
        rq(1, 5) ** Fraction(1, 2)
