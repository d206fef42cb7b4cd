import math

import numpy as np
import pytest

from zetaline.errors import ConvergenceError
from zetaline.framework import ones_series
from zetaline.modular import (
    SATO_TATE_ALPHA,
    catalan,
    coefficient_alpha,
    exponent_table,
    hecke_extend,
    sato_tate_alpha,
    sato_tate_sample,
    sato_tate_series,
    tau_series,
    tau_table,
    theorem19_check,
)
from zetaline.primes import sieve_primes


def _eta24_oracle(n_max: int) -> list[int]:
    """Independent tau oracle: direct bigint expansion of q prod (1-q^n)^24."""
    c = [0] * (n_max + 1)
    c[0] = 1
    for n in range(1, n_max + 1):
        for _ in range(24):
            for j in range(n_max, n - 1, -1):
                c[j] -= c[j - n]
    return c[: n_max]  # tau(k) = c[k-1]


def test_tau_small_values():
    table = tau_table(50)
    oracle = _eta24_oracle(30)
    for n in range(1, 31):
        assert table[n] == oracle[n - 1]
    assert table[2] == -24
    assert table[3] == 252
    assert table[6] == -6048


def test_tau_multiplicativity():
    table = tau_table(300)
    for m, n in ((2, 3), (2, 5), (3, 5), (4, 7), (9, 11)):
        assert table[m * n] == table[m] * table[n]
    # Hecke relation at p^2: tau(p^2) = tau(p)^2 - p^11
    for p in (2, 3, 5, 7, 11, 13):
        assert table[p * p] == table[p] ** 2 - p**11


def test_tau_deligne_bound():
    table = tau_table(10**4)
    for p in sieve_primes(10**4).primes:
        assert table[int(p)] ** 2 <= 4 * int(p) ** 11


def test_tau_bounds():
    table = tau_table(10)
    with pytest.raises(IndexError):
        table[11]
    with pytest.raises(IndexError):
        table[0]
    with pytest.raises(ValueError):
        tau_table(10**5)


def test_hecke_extend_chebyshev():
    # a_p = 2 cos(theta) gives a(p^k) = sin((k+1)theta)/sin(theta)
    theta = 0.7
    vals = hecke_extend(2.0 * math.cos(theta), 5, 8)
    for k, v in enumerate(vals):
        assert v == pytest.approx(math.sin((k + 1) * theta) / math.sin(theta), abs=1e-12)
    with pytest.raises(ValueError):
        hecke_extend(2.5, 2, 4)


def test_sato_tate_sample_reproducible():
    s1 = sato_tate_sample(99, 10**4)
    s2 = sato_tate_sample(99, 10**4)
    assert np.array_equal(s1.angles, s2.angles)
    s3 = sato_tate_sample(100, 10**4)
    assert not np.array_equal(s1.angles, s3.angles)
    assert np.all((s1.angles >= 0) & (s1.angles <= math.pi))
    assert np.all(np.abs(s1.ap()) <= 2.0)


def test_sato_tate_sample_statistics():
    s = sato_tate_sample(7, 10**6)
    a = s.ap()
    n = a.size
    # semicircle law: mean 0, variance 1, mean |a| = 8/(3 pi)
    assert abs(a.mean()) < 5.0 / math.sqrt(n)
    assert abs((a * a).mean() - 1.0) < 5.0 / math.sqrt(n)
    assert abs(np.abs(a).mean() - SATO_TATE_ALPHA) < 5.0 / math.sqrt(n)


def test_sato_tate_alpha_quadrature():
    assert sato_tate_alpha() == pytest.approx(8.0 / (3.0 * math.pi), abs=1e-9)


def test_catalan_numbers():
    assert [catalan(k) for k in range(1, 5)] == [1, 2, 5, 14]
    assert catalan(10) == 16796
    with pytest.raises(ValueError):
        catalan(0)
    with pytest.raises(ValueError):
        catalan(16)


def test_coefficient_alpha_tau():
    table = tau_table(10**4)
    fit = coefficient_alpha(tau_series(table), 10**4)
    assert 0.6 <= fit.alpha <= 1.0


def test_coefficient_alpha_sato_tate():
    fit = coefficient_alpha(sato_tate_series(sato_tate_sample(3, 10**5)), 10**5)
    assert abs(fit.alpha - SATO_TATE_ALPHA) < 0.1


def test_exponent_table():
    table = exponent_table()
    assert table.corollary1(0.5) == (1.5, 0.5)
    assert table.corollary2 == (23.0 / 12.0, 1.0 / 12.0)
    lo, hi = table.corollary3
    assert lo == pytest.approx(1.0 + 8.0 / (3.0 * math.pi), abs=1e-15)
    assert hi == pytest.approx(1.0 - 8.0 / (3.0 * math.pi), abs=1e-15)
    assert table.catalan_exponents == (1, 2, 5, 14)


def test_theorem19_two_sided_bounds():
    series = sato_tate_series(sato_tate_sample(11, 10**4))
    rep = theorem19_check(series, SATO_TATE_ALPHA, t_samples=10, prime_cutoff=3000)
    assert rep.passed
    assert rep.c_lower > 0
    assert len(rep.rows) == 30


def test_theorem19_alpha_guard():
    with pytest.raises(ValueError):
        theorem19_check(ones_series(), 1.0)
    with pytest.raises(ValueError):
        theorem19_check(ones_series(), 0.0)
