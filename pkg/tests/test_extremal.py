import math

import numpy as np
import pytest

from zetaline.constants import EULER_GAMMA, LOG2, ZETA2
from zetaline.errors import PathError, PrecisionError
from zetaline.extremal import (
    epsilon_sign,
    epsilon_signs,
    eta_weight,
    lemma4_constants,
    log_zeta_delta_closed,
    log_zeta_delta_product,
    make_extremal_series,
    psi_fn,
    sin_minus,
    sin_minus_integral,
    theta_fn,
    zeta_delta_pair_closed,
)

TWO_PI = 2.0 * math.pi


def test_epsilon_sign_pattern():
    assert epsilon_sign(0.0) == 1
    assert epsilon_sign(TWO_PI - 1e-9) == 1
    assert epsilon_sign(TWO_PI + 1e-9) == -1
    assert epsilon_sign(2 * TWO_PI + 0.1) == 1
    xs = np.array([0.1, TWO_PI + 0.1, 2 * TWO_PI + 0.1, 3 * TWO_PI + 0.1])
    assert epsilon_signs(xs).tolist() == [1, -1, 1, -1]
    with pytest.raises(ValueError):
        epsilon_sign(-1.0)


def test_eta_weight():
    assert eta_weight(0.25) == 0.0
    assert eta_weight(0.75) == 2.0
    assert eta_weight(1.6) == 2.0
    assert eta_weight(1.4) == 0.0


def test_sin_minus():
    assert sin_minus(math.pi / 2.0) == 0.0
    assert sin_minus(3.0 * math.pi / 2.0) == pytest.approx(1.0)


def test_sin_minus_integral_closed_form():
    expect = (EULER_GAMMA + LOG2 - 1.0) / 4.0
    assert expect == pytest.approx(0.0675907, abs=5e-8)
    assert sin_minus_integral() == pytest.approx(expect, abs=1e-6)


def test_theta_at_zero_and_one():
    assert theta_fn(0.0).value == pytest.approx(EULER_GAMMA + 2.0 * LOG2)
    # frozen from an independent 30-digit evaluation of
    # gamma + log 4 - int_0^1 tanh(pi w)/w dw
    assert theta_fn(1.0).value.real == pytest.approx(-0.00052032523021, abs=1e-9)


def test_theta_path_guards():
    with pytest.raises(PathError):
        theta_fn(0.6j)  # pole of tanh(pi w)/w at w = i/2
    with pytest.raises(PathError):
        theta_fn(0.01 + 0.5j)
    # imaginary axis below the first pole is fine and purely real-offset
    v = theta_fn(0.25j).value
    assert v.real == pytest.approx(EULER_GAMMA + 2.0 * LOG2, abs=1e-10)


def test_psi_derivative_identity():
    h = 1e-5
    for sg in (0.5, 1.0, 2.0, 5.0):
        deriv = (psi_fn(sg + h).value - psi_fn(sg - h).value) / (2.0 * h)
        assert deriv == pytest.approx(math.tanh(sg / 4.0) / sg, abs=1e-6)


def test_psi_small_sigma_limit():
    assert psi_fn(0.01).value == pytest.approx(math.log(math.pi) - EULER_GAMMA, abs=0.1)
    with pytest.raises(ValueError):
        psi_fn(0.0)


def test_theta_psi_bridge():
    # Theta(z) + Psi(4 pi z) is constant = log(4 pi) for real z > 0
    for z in (0.05, 0.1, 0.2, 0.3):
        total = theta_fn(z).value.real + psi_fn(4.0 * math.pi * z).value
        assert total == pytest.approx(math.log(4.0 * math.pi), abs=1e-6)


def test_extremal_series_signs():
    series = make_extremal_series(0.5, 10**3)
    # sign flips at ln p = 2 pi k / delta = 4 pi k
    for p, s in zip(series.primes, series.signs):
        expect = 1 if math.floor(0.5 * math.log(p) / TWO_PI) % 2 == 0 else -1
        assert s == expect
    assert series.sign_of(2) == 1
    with pytest.raises(KeyError):
        series.sign_of(4)


def test_product_strict_guard():
    series = make_extremal_series(0.3, 10**3)
    with pytest.raises(PrecisionError):
        log_zeta_delta_product(1.0 + 0.01j, series)
    val, tail = log_zeta_delta_product(1.5, series, strict=False)
    assert tail > 0


def test_closed_form_vs_product_off_line():
    # two independent evaluation paths agree at sigma = 1.3
    delta = 0.2
    series = make_extremal_series(delta, 10**6)
    s = 1.3
    prod, tail = log_zeta_delta_product(s, series)
    closed = log_zeta_delta_closed(s, delta).value
    assert abs(prod - closed) < max(5e-3, 3.0 * tail)


def test_closed_form_on_line_modulus():
    # |zeta_delta(1)| = 4 e^gamma / delta to leading order
    for delta in (0.2, 0.1):
        v = log_zeta_delta_closed(1.0, delta).value.real
        expect = math.log(4.0 * math.exp(EULER_GAMMA) / delta)
        assert abs(v - expect) < 0.5 * delta * delta


def test_pair_closed_modulus():
    delta = 0.1
    v = abs(zeta_delta_pair_closed(1.0, delta))
    direct, inverse = lemma4_constants(delta)
    assert v == pytest.approx(direct, rel=0.01)


def test_lemma4_constants():
    direct, inverse = lemma4_constants(0.4)
    assert inverse == pytest.approx(0.4 * math.exp(-EULER_GAMMA) / 4.0, abs=1e-15)
    assert direct / inverse == pytest.approx(ZETA2, abs=1e-15)
    with pytest.raises(ValueError):
        lemma4_constants(1.5)
