import math
import random

import pytest

from layered_echo import (
    InvalidTransitVector,
    REFLECTION,
    ReflectionOutOfRange,
    TRANSMISSION,
    TransitVector,
    branch_set,
    kunetz_primary,
    reflection_amplitude,
    transmission_amplitude,
)
from layered_echo.amplitudes import branch_summand, class_count, class_weight
from layered_echo.transit import left_shift


def rvec(*k):
    return TransitVector(k, REFLECTION)


def tvec(*k):
    return TransitVector(k, TRANSMISSION)


def primary(n, m_layers):
    return rvec(*([1] * (n + 1) + [0] * (m_layers - n)))


def test_single_bounce_is_r0():
    assert reflection_amplitude((0.3, 0.7), rvec(1, 0)) == 0.3


def test_kunetz_values():
    assert kunetz_primary((0.25, 0.5), 0) == 0.25
    assert kunetz_primary((0.5, 0.5), 1) == 0.375
    with pytest.raises(IndexError):
        kunetz_primary((0.5, 0.5), 2)


def test_primary_amplitude_reduces_to_kunetz():
    rng = random.Random(42)
    for _ in range(20):
        m_layers = rng.randint(1, 6)
        refls = [rng.uniform(-0.95, 0.95) for _ in range(m_layers + 1)]
        for n in range(m_layers + 1):
            a = reflection_amplitude(refls, primary(n, m_layers))
            expected = kunetz_primary(refls, n)
            assert a == pytest.approx(expected, rel=1e-12)


def test_first_multiple_closed_form():
    rng = random.Random(5)
    for _ in range(10):
        r0, r1 = rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9)
        a = reflection_amplitude((r0, r1), rvec(1, 2))
        assert a == pytest.approx(-r0 * r1 * r1 * (1 - r0 * r0), rel=1e-13)


def test_transmission_direct_arrival():
    rng = random.Random(6)
    refls = [rng.uniform(-0.9, 0.9) for _ in range(5)]
    b = transmission_amplitude(refls, tvec(0, 0, 0, 0, 0))
    assert b == pytest.approx(math.prod(math.sqrt(1 - r * r) for r in refls),
                              rel=1e-14)


def test_transmission_single_and_double_reverberation():
    rng = random.Random(7)
    for _ in range(10):
        r0, r1 = rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9)
        t0 = math.sqrt(1 - r0 * r0)
        t1 = math.sqrt(1 - r1 * r1)
        one = transmission_amplitude((r0, r1), tvec(0, 1))
        assert one == pytest.approx(-r0 * r1 * t0 * t1, rel=1e-13)
        two = transmission_amplitude((r0, r1), tvec(0, 2))
        assert two == pytest.approx(r0 * r0 * r1 * r1 * t0 * t1, rel=1e-13)


def test_kind_mismatch_rejected():
    with pytest.raises(InvalidTransitVector):
        reflection_amplitude((0.5, 0.5), tvec(0, 1))
    with pytest.raises(InvalidTransitVector):
        transmission_amplitude((0.5, 0.5), rvec(1, 1))
    with pytest.raises(InvalidTransitVector):
        reflection_amplitude((0.5, 0.5, 0.5), rvec(1, 1))


def test_reflection_out_of_range_rejected():
    with pytest.raises(ReflectionOutOfRange):
        reflection_amplitude((0.5, 1.0), rvec(1, 1))


def test_support_locality_bit_identical():
    rng = random.Random(8)
    for _ in range(50):
        m_layers = rng.randint(2, 6)
        support = rng.randint(0, m_layers - 1)
        k = [1] + [rng.randint(1, 3) for _ in range(support)]
        k += [0] * (m_layers - support)
        tv = rvec(*k)
        refls = [rng.uniform(-0.9, 0.9) for _ in range(m_layers + 1)]
        base = reflection_amplitude(refls, tv)
        for n in range(len(k)):
            if k[n] != 0:
                continue
            for delta in (0.1, -0.1):
                bumped = list(refls)
                bumped[n] = max(-0.99, min(0.99, bumped[n] + delta))
                assert reflection_amplitude(bumped, tv) == base


def test_amplitude_bounded_by_class_count_total():
    rng = random.Random(9)
    for _ in range(40):
        m_layers = rng.randint(1, 4)
        k = [1] + [rng.randint(0, 4) for _ in range(m_layers)]
        for i in range(1, len(k)):
            if k[i - 1] == 0:
                k[i] = 0
        tv = rvec(*k)
        refls = [rng.uniform(-0.99, 0.99) for _ in range(m_layers + 1)]
        total = sum(class_count(tv, b) for b in branch_set(tv))
        assert abs(reflection_amplitude(refls, tv)) <= total


def test_transmission_polynomial_part():
    # dividing out the direct-transmission factor leaves a polynomial in R:
    # summing the branch terms with T set to 1, then scaling by (1-R^2)^m
    # per term and the direct factor once, reproduces the amplitude
    rng = random.Random(10)
    for _ in range(30):
        m_layers = rng.randint(1, 4)
        k = tuple([0] + [rng.randint(0, 3) for _ in range(m_layers)])
        tv = tvec(*k)
        refls = [rng.uniform(-0.9, 0.9) for _ in range(m_layers + 1)]
        direct = math.prod(math.sqrt(1 - r * r) for r in refls)
        kt = left_shift(k)
        total = 0.0
        for b in branch_set(tv):
            poly = float(class_count(tv, b))
            sign = -1.0 if sum(kt[n] - b[n] for n in range(len(k))) % 2 else 1.0
            poly *= sign
            for n in range(len(k)):
                poly *= refls[n] ** (kt[n] - b[n] + k[n] - b[n])
            scale = math.prod((1 - refls[n] ** 2) ** b[n] for n in range(len(k)))
            total += poly * scale
        expected = transmission_amplitude(refls, tv)
        assert direct * total == pytest.approx(expected, rel=1e-12)


def test_sign_parity_flip():
    # with all-positive reflection coefficients the sign of a class weight
    # is (-1)^(sum of shifted-count minus branch-count); bumping a single
    # down-shifted entry by one flips it
    refls = (0.4, 0.6, 0.2)
    b = (1, 1, 0)
    w_a = class_weight(refls, rvec(1, 2, 1), b)
    w_b = class_weight(refls, rvec(1, 3, 1), b)
    assert w_a > 0 > w_b or w_a < 0 < w_b
    parity = sum(left_shift((1, 2, 1))[n] - b[n] for n in range(3)) % 2
    assert math.copysign(1.0, w_a) == (-1.0 if parity else 1.0)


def test_branch_summands_add_up():
    rng = random.Random(11)
    for _ in range(30):
        m_layers = rng.randint(1, 4)
        k = [1] + [rng.randint(0, 4) for _ in range(m_layers)]
        for i in range(1, len(k)):
            if k[i - 1] == 0:
                k[i] = 0
        tv = rvec(*k)
        refls = [rng.uniform(-0.9, 0.9) for _ in range(m_layers + 1)]
        total = sum(branch_summand(refls, tv, b) for b in branch_set(tv))
        assert total == pytest.approx(reflection_amplitude(refls, tv),
                                      rel=1e-11, abs=1e-300)


def test_amplitudes_always_finite(bench10):
    from layered_echo import enumerate_reflection
    for tv in enumerate_reflection(bench10, 3.0):
        a = reflection_amplitude(bench10.reflections, tv)
        assert math.isfinite(a)
