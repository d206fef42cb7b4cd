import math

import mpmath as mp
import numpy as np
import pytest

from zetaline.characters import characters_mod
from zetaline.errors import PoleError
from zetaline.zeta import (
    dirichlet_l,
    hurwitz_zeta,
    inv_zeta_taylor,
    log_zeta_prime_sum,
    mollifier,
    zeta,
    zeta_laurent_product,
    zeta_line,
)

mp.mp.dps = 25


@pytest.mark.parametrize(
    "s",
    [2.0, 3.0, 1.5, 1.0 + 14.134j, 0.5 + 25.0j, 1.0 + 1000.0j, 2.5 - 7.0j],
)
def test_zeta_vs_mpmath(s):
    ref = complex(mp.zeta(s))
    assert zeta(s) == pytest.approx(ref, abs=1e-10)


def test_zeta_known_values():
    assert zeta(2.0).real == pytest.approx(math.pi**2 / 6.0, abs=1e-12)
    assert zeta(4.0).real == pytest.approx(math.pi**4 / 90.0, abs=1e-12)


def test_zeta_pole_and_domain():
    with pytest.raises(PoleError):
        zeta(1.0)
    with pytest.raises(ValueError):
        zeta(0.25)
    with pytest.raises(ValueError):
        zeta(1.0 + 2e6j)


@pytest.mark.parametrize("s,a", [(2.0, 0.5), (1.5 + 3.0j, 0.25), (3.0, 1.0)])
def test_hurwitz_vs_mpmath(s, a):
    ref = complex(mp.zeta(s, a))
    assert hurwitz_zeta(s, a) == pytest.approx(ref, abs=1e-10)


def test_zeta_line_matches_pointwise():
    ts = np.array([0.5, 3.0, 17.2, 100.0])
    vals = zeta_line(ts, 1.0)
    for t, v in zip(ts, vals):
        assert v == pytest.approx(zeta(1.0 + 1j * t), abs=1e-9)


def test_zeta_line_large_height_accuracy():
    # asymptotic path against mpmath; its sharp-cutoff error is O(t^(-1/2))
    for t in (5e4, 1e6):
        v = zeta_line(np.array([t]), 1.0)[0]
        ref = complex(mp.zeta(1.0 + 1j * t))
        assert abs(v - ref) / abs(ref) < 3.0 / math.sqrt(t)


def test_zeta_line_crossover_consistency():
    # the two evaluation paths agree near the switch height
    ts = np.array([3.9e4, 4.1e4])
    both = zeta_line(ts, 1.0)
    ref = [complex(mp.zeta(1.0 + 1j * float(t))) for t in ts]
    for v, r in zip(both, ref):
        assert abs(v - r) / abs(r) < 5e-3


def test_zeta_line_conjugate_symmetry():
    ts = np.array([-5e4, 5e4])
    v = zeta_line(ts, 1.0)
    assert v[0] == pytest.approx(np.conj(v[1]), abs=1e-12)


def test_laurent_product_regular_at_pole():
    # log(zeta(s)(s-1)) -> 0 as s -> 1
    assert abs(zeta_laurent_product(1.0)) == 0.0
    near = zeta_laurent_product(1.0 + 1e-6)
    from zetaline.constants import EULER_GAMMA

    assert near.real == pytest.approx(EULER_GAMMA * 1e-6, abs=1e-9)
    far = zeta_laurent_product(2.0)
    assert far == pytest.approx(complex(mp.log(mp.zeta(2) * 1)), abs=1e-10)


def test_log_zeta_prime_sum():
    val, tail = log_zeta_prime_sum(2.0, 10**5)
    ref = complex(mp.log(mp.zeta(2)))
    assert abs(val - ref) <= tail
    assert abs(val - ref) < 1e-4
    with pytest.raises(ValueError):
        log_zeta_prime_sum(1.0, 100)


def test_dirichlet_l_catalan():
    # L(2, chi_4) is Catalan's constant
    chi = next(c for c in characters_mod(4) if not c.is_principal)
    assert dirichlet_l(2.0, chi).real == pytest.approx(float(mp.catalan), abs=1e-10)


def test_dirichlet_l_at_one():
    # L(1, chi_4) = pi/4
    chi = next(c for c in characters_mod(4) if not c.is_principal)
    assert dirichlet_l(1.0, chi).real == pytest.approx(math.pi / 4.0, abs=1e-8)
    with pytest.raises(PoleError):
        principal = characters_mod(4)[0]
        dirichlet_l(1.0, principal)


def test_mollifier():
    # M_X(s) = sum mu(n) n^-s approximates 1/zeta
    v = mollifier(2.0, 10**4)
    assert abs(v - 1.0 / zeta(2.0)) < 1e-3
    with pytest.raises(ValueError):
        mollifier(2.0, 1)


def test_inv_zeta_taylor():
    z = 0.01
    exact = 1.0 / zeta(1.0 + z)
    assert inv_zeta_taylor(1.0 + z) == pytest.approx(exact, abs=1e-5)
    with pytest.raises(ValueError):
        inv_zeta_taylor(2.0)
