import math

import mpmath as mp
import numpy as np
import pytest

from zetaline.constants import EULER_GAMMA, ZETA2
from zetaline.errors import PoleError
from zetaline.norms import (
    NormRequest,
    example1_value,
    example2_ratio,
    interval_norm,
    jensen_gap,
    log_abs_zeta_delta,
    sup_norm_predictions,
    target_constant,
    target_inv_zeta,
    target_zeta,
    target_zeta_delta,
    theorem3_predictions,
    theorem6_constants,
    theorem6_residual,
)


def test_l1_constant_target():
    res = interval_norm(NormRequest(target_constant(3.0), 5.0, 0.4, mode="L1"))
    assert res.value == pytest.approx(1.2, abs=1e-12)


def test_lp_normalization():
    req = NormRequest(target_constant(2.0), 1.0, 0.5, mode="Lp", p=3.0)
    assert interval_norm(req).value == pytest.approx(2.0, abs=1e-12)
    plain = NormRequest(target_constant(2.0), 1.0, 0.5, mode="Lp", p=3.0, normalized=False)
    assert interval_norm(plain).value == pytest.approx(4.0, abs=1e-12)
    neg = NormRequest(target_constant(2.0), 1.0, 0.5, mode="negLp", p=2.0)
    assert interval_norm(neg).value == pytest.approx(0.5, abs=1e-12)


def test_sup_min_modes():
    target = target_zeta(1.0)
    sup = interval_norm(NormRequest(target, 10.0, 0.5, mode="sup")).value
    low = interval_norm(NormRequest(target, 10.0, 0.5, mode="min")).value
    mid = float(np.abs(target(np.array([10.25])))[0])
    assert low <= mid <= sup
    assert low > 0


def test_pole_guard():
    with pytest.raises(PoleError):
        interval_norm(NormRequest(target_zeta(1.0), -0.1, 0.4))


def test_request_invariants():
    with pytest.raises(ValueError):
        NormRequest(target_constant(), 0.0, 3.0)
    with pytest.raises(ValueError):
        NormRequest(target_constant(), 0.0, 0.5, mode="L7")
    with pytest.raises(ValueError):
        NormRequest(target_constant(), 0.0, 0.5, mode="Lp", p=-1.0)


def test_jensen_gap_nonnegative():
    for T in (10.0, 50.0, 333.3):
        assert jensen_gap(NormRequest(target_zeta(1.0), T, 0.2, tol=1e-10)) >= -1e-9


def test_theorem3_predictions_values():
    direct, inverse = theorem3_predictions(0.1)
    assert inverse == pytest.approx(math.exp(-EULER_GAMMA) / 4.0 * 0.01, abs=1e-15)
    assert direct == pytest.approx(math.pi**2 * math.exp(-EULER_GAMMA) / 24.0 * 0.01, rel=1e-12)
    with pytest.raises(ValueError):
        theorem3_predictions(1.5)


def test_theorem3_lower_bounds_sampled():
    rng = np.random.default_rng(7)
    for T in rng.uniform(10.0, 1e4, size=5):
        for delta in (0.1, 0.2):
            pd, pi_ = theorem3_predictions(delta)
            v1 = interval_norm(NormRequest(target_zeta(1.0), T, delta, tol=1e-8)).value
            v2 = interval_norm(NormRequest(target_inv_zeta(1.0), T, delta, tol=1e-8)).value
            assert v1 >= 0.9 * pd
            assert v2 >= 0.9 * pi_


def test_sup_norm_predictions():
    lo, hi = sup_norm_predictions(0.1)
    assert lo == pytest.approx(math.exp(-EULER_GAMMA) * math.pi**2 / 240.0, rel=1e-12)
    assert hi == pytest.approx(40.0 * math.exp(EULER_GAMMA), rel=1e-12)


def test_min_zeta_delta_closed_form():
    # the extremal product's modulus on its window is 4 e^gamma/delta + O(delta^2)
    delta = 0.1
    target = target_zeta_delta(delta)
    window = 0.99 * delta
    res = interval_norm(NormRequest(target, -0.5 * window, window, mode="min"))
    assert res.value == pytest.approx(4.0 * math.exp(EULER_GAMMA) / delta, rel=2e-3)


def test_log_abs_zeta_delta_flatness():
    delta = 0.2
    ts = np.linspace(-0.45 * delta, 0.45 * delta, 41)
    vals = log_abs_zeta_delta(ts, delta)
    center = -math.log(delta) + EULER_GAMMA + math.log(4.0)
    assert np.max(np.abs(vals - center)) < 0.1 * delta * delta
    with pytest.raises(PoleError):
        log_abs_zeta_delta(np.array([0.6 * delta]), delta)


def test_theorem6_constants_ratio():
    c_inv, c_dir = theorem6_constants(0.25)
    assert c_dir - c_inv == pytest.approx(math.log(ZETA2), abs=1e-15)
    assert c_inv == pytest.approx(math.log(0.25) - math.log(4.0) - EULER_GAMMA, abs=1e-15)


@pytest.mark.parametrize("which", ["inv", "direct"])
def test_theorem6_residual_decay(which):
    r = {d: abs(theorem6_residual(d, which, tol=1e-9)) for d in (0.4, 0.2, 0.1)}
    assert 3.0 <= r[0.4] / r[0.2] <= 5.0
    assert 3.0 <= r[0.2] / r[0.1] <= 5.0
    with pytest.raises(ValueError):
        theorem6_residual(0.7, which)


def test_example1_quadratic():
    vals = {d: example1_value(d) for d in (0.1, 0.2)}
    for d, v in vals.items():
        assert abs(v - d * d / 4.0) <= 2.0 * d**4
    ratio = vals[0.2] / vals[0.1]
    assert abs(ratio - 4.0) <= 0.4


def test_example2_against_oracle():
    v = example2_ratio()
    assert 0.90 < v < 0.96
    # independent high-precision oracle for the same integral
    mp.mp.dps = 20
    root = 1.0 / mp.sqrt(6)
    ref = 4 * mp.quad(
        lambda t: abs(t * t - mp.mpf(1) / 6) ** mp.mpf("0.25") * abs(t) ** mp.mpf("0.5"),
        [-0.5, -root, 0, root, 0.5],
    )
    assert v == pytest.approx(float(ref), abs=1e-9)
    assert round(v, 4) == 0.9518
