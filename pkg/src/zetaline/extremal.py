"""The extremal Euler product zeta_delta and its special-function closed form.

Two evaluation paths are provided: the raw truncated sign-twisted product
(trusted only off the line, sigma >= 1 + 1/ln P) and the closed form through
the auxiliary functions Theta and Psi, which is the primary path on sigma = 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .constants import EULER_GAMMA, LOG2, PI, ZETA2
from .errors import PathError, PrecisionError
from .primes import PrimeTable, sieve_primes
from .quadrature import _WK, _XK, integrate_segment
from .zeta import zeta, zeta_laurent_product

TWO_PI = 2.0 * PI


def epsilon_sign(x: float) -> int:
    """sign(sin(x/2)) resolved at boundaries as (-1)^floor(x/(2 pi))."""
    if x < 0:
        raise ValueError("x >= 0 required")
    return -1 if math.floor(x / TWO_PI) % 2 else 1


def epsilon_signs(x: np.ndarray) -> np.ndarray:
    return 1 - 2 * (np.floor(np.asarray(x) / TWO_PI).astype(np.int64) % 2)


def eta_weight(x: float) -> float:
    """Weight picking out the sign-flipped primes: 2 on {x} in (1/2, 1), else 0."""
    if x < 0:
        raise ValueError("x >= 0 required")
    frac = x - math.floor(x)
    return 2.0 if 0.5 < frac < 1.0 else 0.0


def sin_minus(x: float) -> float:
    """Negative part of sin: -sin(x) where sin(x) < 0, else 0."""
    s = math.sin(x)
    return -s if s < 0.0 else 0.0


def sin_minus_integral(periods: int = 4000) -> float:
    """int_0^inf sin^-(x/2)/x^2 dx, evaluated period by period.

    sin(x/2) is negative exactly on (2 pi (2k+1), 4 pi (k+1)); each such
    window gets one 15-point panel and the remainder beyond the last window
    is replaced by its mean-value tail 1/(pi X).
    """
    k = np.arange(periods, dtype=np.float64)
    lo = TWO_PI * (2.0 * k + 1.0)
    hi = 2.0 * TWO_PI * (k + 1.0)
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    x = mid[:, None] + half[:, None] * _XK[None, :]
    vals = -np.sin(0.5 * x) / (x * x)
    total = float(np.sum(half * (vals * _WK[None, :]).sum(axis=1)))
    return total + 1.0 / (PI * hi[-1])


@dataclass(frozen=True)
class ExtremalSeries:
    """delta, a prime cutoff, and the sign assignment eps_p.

    mode 'direct' represents zeta_delta itself; 'reciprocal-pair' the
    companion product zeta(2s)/zeta_delta(s) = prod (1 + eps_p p^-s)^-1.
    """

    delta: float
    prime_cutoff: int
    primes: np.ndarray
    logs: np.ndarray
    signs: np.ndarray  # int64, +-1 per prime
    mode: str = "direct"

    def sign_of(self, p: int) -> int:
        i = int(np.searchsorted(self.primes, p))
        if i >= len(self.primes) or self.primes[i] != p:
            raise KeyError(f"{p} not in series prime table")
        return int(self.signs[i])


def make_extremal_series(
    delta: float,
    prime_cutoff: int,
    mode: str = "direct",
    table: PrimeTable | None = None,
) -> ExtremalSeries:
    if delta < 0:
        raise ValueError("delta >= 0 required")
    if mode not in ("direct", "reciprocal-pair"):
        raise ValueError(f"unknown mode {mode!r}")
    if table is None or table.limit < prime_cutoff:
        table = sieve_primes(prime_cutoff)
    keep = table.primes <= prime_cutoff
    primes = table.primes[keep]
    logs = table.logs[keep]
    return ExtremalSeries(
        delta=delta,
        prime_cutoff=prime_cutoff,
        primes=primes,
        logs=logs,
        signs=epsilon_signs(delta * logs),
        mode=mode,
    )


def log_zeta_delta_product(
    s: complex, series: ExtremalSeries, strict: bool = True
) -> tuple[complex, float]:
    """log of the truncated product, with the prime tail sum_{p>P} p^-sigma.

    Only trusted for sigma >= 1 + 1/ln(P); closer to the line the truncated
    sign sum converges too slowly to mean anything.  strict=False skips the
    guard for validation runs that accept the (large) reported tail.
    """
    s = complex(s)
    p_cut = series.prime_cutoff
    if strict and s.real < 1.0 + 1.0 / math.log(p_cut):
        raise PrecisionError(
            f"sigma = {s.real} too close to 1 for prime cutoff {p_cut}"
        )
    eps = series.signs if series.mode == "direct" else -series.signs
    terms = eps * np.exp(-s * series.logs)
    value = complex(-np.sum(np.log(1.0 - terms)))
    # integral bound on sum_{p>P} p^-sigma via the prime number theorem
    tail = p_cut ** (1.0 - s.real) / ((s.real - 1.0) * math.log(p_cut))
    return value, tail


def zeta_delta_product(s: complex, series: ExtremalSeries) -> complex:
    return cmath.exp(log_zeta_delta_product(s, series)[0])


@dataclass(frozen=True)
class SpecialFnValue:
    value: complex
    path_note: str
    err: float


_THETA_POLE_IMAGS = np.arange(0.5, 20.0, 1.0)  # tanh(pi w) poles at w = +-i(k+1/2)


def _theta_integrand(w: np.ndarray) -> np.ndarray:
    """tanh(pi w)/w, extended by the value pi at w = 0 (4-term series)."""
    w = np.asarray(w, dtype=np.complex128)
    small = np.abs(w) < 0.05
    ws = np.where(small, 0.0, w)
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = np.tanh(PI * ws) / ws
    w2 = w * w
    series = PI - PI**3 / 3.0 * w2 + 2.0 * PI**5 / 15.0 * w2**2 - 17.0 * PI**7 / 315.0 * w2**3
    return np.where(small, series, direct)


def _segment_pole_clearance(z: complex) -> float:
    """Min distance from the straight path 0 -> z to the tanh(pi w)/w poles."""
    best = math.inf
    for im in _THETA_POLE_IMAGS:
        for pole in (1j * im, -1j * im):
            # distance from pole to segment [0, z]
            if z == 0:
                d = abs(pole)
            else:
                u = (pole.real * z.real + pole.imag * z.imag) / abs(z) ** 2
                u = min(1.0, max(0.0, u))
                d = abs(pole - u * z)
            best = min(best, d)
    return best


def theta_fn(z: complex, tol: float = 1e-11) -> SpecialFnValue:
    """Theta(z) = gamma + log 4 - int_0^z tanh(pi w)/w dw along the straight path."""
    z = complex(z)
    if z.real == 0.0:
        if abs(z.imag) >= 0.5:
            raise PathError("on the imaginary axis |Im z| < 1/2 is required")
    elif _segment_pole_clearance(z) < 0.05:
        raise PathError("integration path passes within 0.05 of a pole of tanh(pi w)/w")
    if z == 0.0:
        return SpecialFnValue(EULER_GAMMA + 2.0 * LOG2, "constant term only", 0.0)
    val, err = integrate_segment(_theta_integrand, 0.0, z, tol=tol)
    return SpecialFnValue(
        EULER_GAMMA + 2.0 * LOG2 - val, f"straight path 0 -> {z}", err
    )


def psi_fn(sigma: float, tiny: float = 1e-16) -> SpecialFnValue:
    """Psi(sigma) = log sigma + 2 sum_n int_{n-1/2}^n e^(-sigma t)/t dt.

    Panels are truncated once e^(-sigma n) drops below `tiny`.  The sign of
    the log term is fixed by the two identities Psi'(s) = tanh(s/4)/s and
    lim_{s->0+} Psi(s) = log pi - gamma: the integral behaves like -log s
    near 0, so only +log s keeps the limit finite.
    """
    if sigma <= 0:
        raise ValueError("sigma > 0 required")
    n_max = max(2, math.ceil(-math.log(tiny) / sigma))
    n = np.arange(1, n_max + 1, dtype=np.float64)
    mid = n - 0.25
    x = mid[:, None] + 0.25 * _XK[None, :]
    vals = np.exp(-sigma * x) / x
    panels = 0.25 * (vals * _WK[None, :]).sum(axis=1)
    trunc = 2.0 * math.exp(-sigma * n_max) / (sigma * n_max)
    return SpecialFnValue(
        math.log(sigma) + 2.0 * float(panels.sum()),
        f"{n_max} panels",
        trunc + 1e-14 * n_max,
    )


def log_zeta_delta_closed(s: complex, delta: float) -> SpecialFnValue:
    """log zeta_delta(s) = -log delta + Theta((s-1)/delta) + log(zeta(s)(s-1)).

    The dropped remainder is exponentially small in delta^(-1/2); the err
    field logs the reporting heuristic e^(-delta^(-1/2)).
    """
    if delta <= 0:
        raise ValueError("delta > 0 required")
    theta = theta_fn((s - 1.0) / delta)
    value = -math.log(delta) + theta.value + zeta_laurent_product(s)
    return SpecialFnValue(
        value, theta.path_note, theta.err + math.exp(-delta**-0.5)
    )


def zeta_delta_closed(s: complex, delta: float) -> complex:
    return cmath.exp(log_zeta_delta_closed(s, delta).value)


def zeta_delta_pair_closed(s: complex, delta: float) -> complex:
    """zeta(2s)/zeta_delta(s) via the closed form for the denominator."""
    return zeta(2.0 * s) * cmath.exp(-log_zeta_delta_closed(s, delta).value)


def lemma4_constants(delta: float) -> tuple[float, float]:
    """Predicted near-constant moduli: (direct, inverse) per unit interval.

    direct = delta pi^2 e^-gamma / 24 for |zeta(2s)/zeta_delta(s)|,
    inverse = delta e^-gamma / 4 for |zeta_delta(s)|^-1; their ratio is zeta(2).
    """
    if not 0 <= delta <= 1:
        raise ValueError("0 <= delta <= 1 required")
    inverse = delta * math.exp(-EULER_GAMMA) / 4.0
    return ZETA2 * inverse, inverse
