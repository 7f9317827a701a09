"""Exact arithmetic in Q(beta): field axioms, exact ordering, floors,
decimal rendering, and string round-trips."""

import math
import random
from fractions import Fraction

import mpmath as mp
import pytest

from betaop import BetaParams, QuadNum, quadnum_from_string

ALL_PARAMS_5 = [BetaParams(a0, a1) for a0 in range(1, 6)
                for a1 in range(1, a0 + 1)]
ALL_PARAMS_10 = [BetaParams(a0, a1) for a0 in range(1, 11)
                 for a1 in range(1, a0 + 1)]


def random_quadnum(rng, params):
    return QuadNum(Fraction(rng.randint(-30, 30), rng.randint(1, 12)),
                   Fraction(rng.randint(-30, 30), rng.randint(1, 12)),
                   params)


def test_params_validation():
    with pytest.raises(ValueError):
        BetaParams(1, 2)
    with pytest.raises(ValueError):
        BetaParams(0, 0)
    with pytest.raises(TypeError):
        BetaParams(2.0, 1)


def test_defining_relation_examples():
    p = BetaParams(1, 1)
    b = p.beta()
    assert b * b == QuadNum(1, 1, p)          # beta^2 = 1 + beta
    assert b.inverse() == QuadNum(-1, 1, p)   # 1/beta = beta - 1
    p2 = BetaParams(2, 1)
    b2 = p2.beta()
    # (1 + beta)(1 - beta) = 1 - beta^2 = -2*beta after reduction
    prod = (1 + b2) * (1 - b2)
    assert prod == QuadNum(0, -2, p2)


def test_beta_identities_all_params():
    for p in ALL_PARAMS_10:
        b = p.beta()
        assert (b * b - b * p.a0 - p.a1).is_zero()
        assert (p.a0 * b.inverse() + p.a1 * b.inverse() ** 2 - 1).is_zero()
        assert b.floor() == p.a0


def test_field_axioms_random():
    rng = random.Random(20240817)
    count = 0
    while count < 10_000:
        p = rng.choice(ALL_PARAMS_5)
        x, y, z = (random_quadnum(rng, p) for _ in range(3))
        assert (x + y) + z == x + (y + z)
        assert x * y == y * x
        assert x * (y + z) == x * y + x * z
        assert (x * y) * z == x * (y * z)
        if not x.is_zero():
            assert (x * x.inverse() - 1).is_zero()
            assert ((1 / x) * x - 1).is_zero()
        count += 5


def test_sign_examples():
    p = BetaParams(1, 1)
    assert QuadNum(-1, 1, p).sign() == 1     # beta > 1
    assert QuadNum(2, -1, p).sign() == 1     # beta < 2
    # a0=3, a1=2: beta = (3+sqrt(17))/2 ~ 3.5616 so -7/2 + beta > 0
    p32 = BetaParams(3, 2)
    assert QuadNum(Fraction(-7, 2), 1, p32).sign() == 1
    assert BetaParams(2, 2).zero().sign() == 0


def test_sign_against_high_precision_oracle():
    rng = random.Random(987654)
    with mp.workdps(100):
        checked = 0
        while checked < 10_000:
            p = rng.choice(ALL_PARAMS_5)
            x = random_quadnum(rng, p)
            beta = (p.a0 + mp.sqrt(p.disc)) / 2
            val = mp.mpf(x.p.numerator) / x.p.denominator \
                + beta * x.q.numerator / x.q.denominator
            if abs(val) < mp.mpf(10) ** -50:
                continue
            assert x.sign() == int(mp.sign(val))
            checked += 1


def test_comparisons_and_ordering():
    p = BetaParams(2, 1)
    b = p.beta()
    assert b > 2 and b < 3
    assert b.inverse() < 1
    vals = sorted([b, p.one(), b.inverse(), p.zero(), b * b])
    floats = [float(v) for v in vals]
    assert floats == sorted(floats)


def test_floor_examples_and_random():
    assert BetaParams(1, 1).zero().floor() == 0
    p22 = BetaParams(2, 2)
    b = p22.beta()
    assert (b * b).floor() == 7  # beta = 1 + sqrt(3), beta^2 ~ 7.46
    rng = random.Random(5150)
    for _ in range(500):
        p = rng.choice(ALL_PARAMS_5)
        x = random_quadnum(rng, p)
        m = x.floor()
        assert (x - m).sign() >= 0
        assert (x - (m + 1)).sign() < 0


def test_to_decimal_examples():
    assert BetaParams(1, 1).beta().to_decimal(10) == "1.6180339887"
    assert BetaParams(1, 1).rational(Fraction(1, 2)).to_decimal(3) == "0.500"
    assert BetaParams(2, 1).beta().to_decimal(8) == "2.41421356"
    # negative irrational value
    p = BetaParams(1, 1)
    assert QuadNum(0, -1, p).to_decimal(4) == "-1.6180"


def test_to_decimal_matches_mpmath():
    rng = random.Random(31337)
    with mp.workdps(60):
        for _ in range(200):
            p = rng.choice(ALL_PARAMS_5)
            x = random_quadnum(rng, p)
            if x.q == 0:
                continue
            beta = (p.a0 + mp.sqrt(p.disc)) / 2
            val = mp.mpf(x.p.numerator) / x.p.denominator \
                + beta * x.q.numerator / x.q.denominator
            got = x.to_decimal(12)
            assert abs(mp.mpf(got) - val) < mp.mpf(10) ** -12


def test_float_conversion_avoids_cancellation():
    # huge opposite-sign components with a small true value
    p = BetaParams(1, 1)
    big = 10 ** 30
    x = QuadNum(-big, Fraction(big * 10 ** 15 + 1, 10 ** 15 + 1), p) * 0 \
        + QuadNum(0, 1, p)  # sanity: arithmetic still exact
    assert float(x) == pytest.approx(p.beta_float(), rel=1e-15)
    tiny = p.beta().inverse() ** 80  # p, q are ~17-digit integers here
    assert float(tiny) == pytest.approx(p.beta_float() ** -80, rel=1e-13)


def test_params_mixing_is_hard_error():
    x = BetaParams(1, 1).beta()
    y = BetaParams(2, 1).beta()
    with pytest.raises(ValueError):
        _ = x + y


def test_division_by_zero():
    p = BetaParams(1, 1)
    with pytest.raises(ZeroDivisionError):
        p.zero().inverse()


def test_string_round_trip():
    rng = random.Random(777)
    for _ in range(300):
        p = rng.choice(ALL_PARAMS_5)
        x = random_quadnum(rng, p)
        assert quadnum_from_string(x.to_string(), p) == x
    p = BetaParams(1, 1)
    assert quadnum_from_string("-2+1*beta", p) == QuadNum(-2, 1, p)
    assert quadnum_from_string("3/4", p) == QuadNum(Fraction(3, 4), 0, p)
