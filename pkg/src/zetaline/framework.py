"""General multiplicative-series machinery on the 1-line.

Local Euler-factor extrema, the correction sums lambda_0/lambda_1, growth
fits (alpha, beta) in the two conventions (prime-sum and Lambda-weighted),
residue-derived beta, generalized sign-twisted extremal products, and the
predicted short-interval infimum constants.

The master constant is e^(-beta_w)/4 * delta^alpha with beta_w the
Lambda-weighted growth constant; in prime-sum terms beta_w = beta - lambda_1
(inverse norms) or beta - lambda_0 (direct norms).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .constants import EULER_GAMMA, ZETA2
from .errors import ConvergenceError, PrecisionError
from .extremal import epsilon_signs
from .primes import euler_phi, sieve_primes

FACTOR_ORDER = 32  # truncation order K for all Euler factors


@dataclass(frozen=True)
class EulerFactor:
    """Truncated local factor f_p(z) = 1 + sum_k a(p^k) z^k."""

    p: int
    coeffs: np.ndarray  # complex, coeffs[0] = 1
    tail_bound: float = 0.0

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.complex128)
        if c.size == 0 or c[0] != 1.0:
            raise ValueError("coeffs[0] must be 1")
        object.__setattr__(self, "coeffs", c)

    def on_circle(self, phis: np.ndarray) -> np.ndarray:
        """f_p evaluated at z = e^(i phi)/p."""
        z = np.exp(1j * np.asarray(phis)) / self.p
        out = np.zeros(z.shape, dtype=np.complex128)
        for c in self.coeffs[::-1]:
            out = out * z + c
        return out


def geometric_factor(p: int, a: complex, order: int = FACTOR_ORDER) -> EulerFactor:
    """Completely multiplicative local factor 1/(1 - a z), truncated.

    The order grows beyond the default where needed (small p, |a| near 1)
    to push the truncation tail on |z| = 1/p below 1e-13.
    """
    q = abs(a) / p
    if q >= 1:
        raise ValueError("|a| < p required")
    if q > 0:
        order = max(order, min(256, math.ceil(math.log(1e-13 * (1 - q)) / math.log(q))))
    coeffs = np.power(complex(a), np.arange(order + 1))
    tail = q ** (order + 1) / (1.0 - q) if q > 0 else 0.0
    return EulerFactor(p=p, coeffs=coeffs, tail_bound=tail)


@dataclass(frozen=True)
class MultiplicativeSeries:
    """Dirichlet series with multiplicative coefficients, given locally.

    `ap` maps an array of primes to a(p); `factor` builds the full local
    factor on demand. kind 'completely-multiplicative' unlocks the closed
    forms that bypass truncation.
    """

    kind: str  # completely-multiplicative | general | positive-coefficients
    name: str
    ap: Callable[[np.ndarray], np.ndarray]
    factor: Callable[[int], EulerFactor]

    def __post_init__(self):
        if self.kind not in ("completely-multiplicative", "general", "positive-coefficients"):
            raise ValueError(f"unknown kind {self.kind!r}")


def ones_series() -> MultiplicativeSeries:
    """a(n) = 1 for all n: the series of zeta itself."""
    return MultiplicativeSeries(
        kind="completely-multiplicative",
        name="ones",
        ap=lambda p: np.ones(np.asarray(p).shape),
        factor=lambda p: geometric_factor(p, 1.0),
    )


def character_magnitude_series(modulus: int) -> MultiplicativeSeries:
    """|chi(p)| for a character mod D: 1 off the modulus, 0 on p | D."""
    if modulus < 1:
        raise ValueError("modulus >= 1 required")

    def ap(p):
        p = np.asarray(p)
        return np.where(modulus % np.maximum(p, 1) == 0, 0.0, 1.0) if modulus > 1 else np.ones(p.shape)

    return MultiplicativeSeries(
        kind="completely-multiplicative",
        name=f"chi-magnitude mod {modulus}",
        ap=ap,
        factor=lambda p: geometric_factor(p, 0.0 if modulus % p == 0 else 1.0),
    )


def residue_class_series(modulus: int, residue: int) -> MultiplicativeSeries:
    """Indicator coefficients a(p) = 1 on p = residue (mod modulus), else 0.

    Half-density prime support (e.g. modulus 4, residue 1) gives growth
    exponent alpha = 1/2.
    """

    def ap(p):
        return (np.asarray(p) % modulus == residue).astype(np.float64)

    return MultiplicativeSeries(
        kind="completely-multiplicative",
        name=f"primes {residue} mod {modulus}",
        ap=ap,
        factor=lambda p: geometric_factor(p, 1.0 if p % modulus == residue else 0.0),
    )


def series_from_ap(name: str, ap: Callable[[np.ndarray], np.ndarray]) -> MultiplicativeSeries:
    """Completely multiplicative series from a vectorized a(p) rule."""
    return MultiplicativeSeries(
        kind="completely-multiplicative",
        name=name,
        ap=ap,
        factor=lambda p: geometric_factor(p, complex(ap(np.array([p]))[0])),
    )


@dataclass(frozen=True)
class GrowthFit:
    alpha: float
    beta: float
    n_used: int
    residual: float


def local_extrema(factor: EulerFactor, samples: int = 4096) -> tuple[float, float]:
    """(min, max) of log|f_p(z)| over |z| = 1/p by sampling plus refinement."""
    if factor.tail_bound > 1e-12:
        raise PrecisionError(f"factor tail bound {factor.tail_bound:.2e} too large")
    phis = np.linspace(0.0, 2.0 * math.pi, samples, endpoint=False)
    mod = np.abs(factor.on_circle(phis))
    if np.min(mod) <= 10.0 * max(factor.tail_bound, 1e-300):
        raise ConvergenceError(f"local factor at p={factor.p} nearly vanishes on |z|=1/p")

    def refine(i: int, want_max: bool) -> float:
        h = 2.0 * math.pi / samples
        lo, hi = phis[i] - h, phis[i] + h
        g = (math.sqrt(5.0) - 1.0) / 2.0
        sgn = 1.0 if want_max else -1.0
        x1, x2 = hi - g * (hi - lo), lo + g * (hi - lo)
        f1 = sgn * abs(factor.on_circle(np.array([x1]))[0])
        f2 = sgn * abs(factor.on_circle(np.array([x2]))[0])
        for _ in range(60):
            if f1 >= f2:
                hi, x2, f2 = x2, x1, f1
                x1 = hi - g * (hi - lo)
                f1 = sgn * abs(factor.on_circle(np.array([x1]))[0])
            else:
                lo, x1, f1 = x1, x2, f2
                x2 = lo + g * (hi - lo)
                f2 = sgn * abs(factor.on_circle(np.array([x2]))[0])
        return sgn * max(f1, f2)

    m = refine(int(np.argmin(mod)), want_max=False)
    big = refine(int(np.argmax(mod)), want_max=True)
    return math.log(m), math.log(big)


def lambda_sums(series: MultiplicativeSeries, prime_cutoff: int) -> tuple[float, float]:
    """(lambda_0, lambda_1): local-extrema correction sums over p <= cutoff.

    lambda_1 = sum (|a_p|/p - max log|f_p|), lambda_0 = sum (min log|f_p| +
    |a_p|/p); both summands are O(p^-2) for bounded coefficients, so the
    truncation tail is O(sum_{p>P} p^-2).
    """
    table = sieve_primes(prime_cutoff)
    primes = table.primes[table.primes <= prime_cutoff]
    if series.kind == "completely-multiplicative":
        a = np.abs(series.ap(primes))
        q = a / primes
        if np.any(q >= 1.0):
            raise ConvergenceError("|a(p)| >= p: local factor diverges on the circle")
        big = -np.log1p(-q)   # max log|f_p| at aligned z
        small = -np.log1p(q)  # min log|f_p| at anti-aligned z
        lam1 = float(np.sum(q - big))
        lam0 = float(np.sum(small + q))
        return lam0, lam1
    lam0 = lam1 = 0.0
    for p in primes:
        fac = series.factor(int(p))
        a1 = abs(fac.coeffs[1]) / p if fac.coeffs.size > 1 else 0.0
        m, big = local_extrema(fac)
        lam1 += a1 - big
        lam0 += m + a1
    return lam0, lam1


def _prime_power_sum(series: MultiplicativeSeries, n: float, primes: np.ndarray) -> float:
    """sum over prime powers p^k <= n, k >= 2, of |a(p^k)|/(k p^k)."""
    total = 0.0
    k = 2
    while 2.0**k <= n:
        ps = primes[primes.astype(np.float64) ** k <= n]
        if ps.size == 0:
            break
        if series.kind == "completely-multiplicative":
            a = np.abs(series.ap(ps)) ** k
        else:
            a = np.array([abs(series.factor(int(p)).coeffs[k]) for p in ps])
        total += float(np.sum(a / (k * ps.astype(np.float64) ** k)))
        k += 1
    return total


def alpha_beta_fit(
    series: MultiplicativeSeries, n_max: int, convention: str = "prime-sum"
) -> GrowthFit:
    """Least-squares (alpha, beta) against log log N over N_j = n_max^(j/8).

    prime-sum fits sum_{p<=N} |a(p)|/p; lambda-weighted additionally counts
    prime powers with weight |a(p^k)|/(k p^k), the von Mangoldt form whose
    a=1 calibration limit is gamma rather than the Mertens constant.
    """
    if n_max < 1000:
        raise ValueError("n_max >= 1000 required")
    if convention not in ("prime-sum", "lambda-weighted"):
        raise ValueError(f"unknown convention {convention!r}")
    table = sieve_primes(n_max)
    a_over_p = np.abs(series.ap(table.primes)) / table.primes
    cum = np.cumsum(a_over_p)

    xs, ys = [], []
    for j in range(4, 9):
        n_j = float(n_max) ** (j / 8.0)
        i = int(np.searchsorted(table.primes, n_j, side="right"))
        y = float(cum[i - 1]) if i > 0 else 0.0
        if convention == "lambda-weighted":
            y += _prime_power_sum(series, n_j, table.primes)
        xs.append(math.log(math.log(n_j)))
        ys.append(y)
    design = np.column_stack([xs, np.ones(len(xs))])
    (alpha, beta), *_ = np.linalg.lstsq(design, np.array(ys), rcond=None)
    residual = abs(ys[-1] - (alpha * xs[-1] + beta))
    return GrowthFit(alpha=float(alpha), beta=float(beta), n_used=n_max, residual=residual)


def beta_from_residue(r: float) -> float:
    """beta attained by a series whose square has a simple pole of residue r.

    Calibrated so that a(n) = 1 (residue 1) gives beta = gamma; then
    e^(-beta)/4 reproduces the residue-scaled infimum constants.
    """
    if r <= 0:
        raise ValueError("r > 0 required")
    return EULER_GAMMA + math.log(r)


def predicted_infima(
    alpha: float, beta: float, lambda0: float, lambda1: float, delta: float
) -> tuple[float, float]:
    """(direct, inverse) predicted normalized-norm infima e^-(beta-lambda)/4 delta^alpha.

    beta here is the prime-sum convention constant; beta - lambda_1 (resp.
    lambda_0) equals the Lambda-weighted constant entering e^(-beta_w)/4.
    The a=1 calibration collapses to (pi^2 e^-gamma/24, e^-gamma/4) delta.
    """
    if not 0.0 < delta <= 1.0:
        raise ValueError("0 < delta <= 1 required")
    direct = math.exp(-(beta - lambda0)) / 4.0 * delta**alpha
    inverse = math.exp(-(beta - lambda1)) / 4.0 * delta**alpha
    return direct, inverse


def theorem13_constants(modulus: int, delta: float) -> tuple[float, float]:
    """(direct, inverse) per-interval infimum constants for |chi| coefficients.

    The ratio to the a=1 constants is D/phi(D): dropping the primes p | D
    from the Lambda-weighted sum lowers beta by log(phi(D)/D).
    """
    if modulus < 1:
        raise ValueError("modulus >= 1 required")
    scale = modulus / euler_phi(modulus)
    inv = math.exp(-EULER_GAMMA) / 4.0 * scale * delta
    return ZETA2 * inv, inv


def _exp_integral_e1(z: complex) -> complex:
    """E1(z) for Re z > 0: series for small |z|, continued fraction beyond."""
    z = complex(z)
    if z.real <= 0:
        raise ValueError("Re z > 0 required")
    if abs(z) <= 4.0:
        total = 0.0j
        term = 1.0 + 0.0j
        for k in range(1, 60):
            term *= -z / k
            total += term / k
        return -EULER_GAMMA - math.log(abs(z)) - 1j * math.atan2(z.imag, z.real) - total
    # modified Lentz continued fraction e^-z/(z+1-1/(z+3-4/(z+5-...)))
    b = z + 1.0
    c = 1e300
    d = 1.0 / b
    h = d
    for k in range(1, 80):
        a = -(k * k)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        h *= c * d
    import cmath

    return cmath.exp(-z) * h


def _twisted_tail_rule(
    delta: float, log_cutoff: float, sigma: float, max_periods: int = 4000
) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature rule (u, w) for the prime-number-theorem tail estimate of
    sum_{p > P} eps_p p^(-s), so that the tail is sum w * exp(-i t u) at
    s = sigma + i t.

    The integral int_{ln P}^inf eps(e^u) e^((1-s)u)/u du is split at the
    sign flips u = 2 pi k/delta; the alternation keeps it conditionally
    convergent even at sigma = 1, which is exactly how the extremal product
    stays finite on the line while zeta itself diverges.
    """
    from .quadrature import _WK, _XK

    if sigma < 1.0:
        raise PrecisionError("sigma >= 1 required")
    period = 2.0 * math.pi / delta
    k0 = int(math.floor(log_cutoff / period))
    edges = np.concatenate(
        [[log_cutoff], period * np.arange(k0 + 1, k0 + 1 + max_periods)]
    )
    # drop segments whose alternating envelope is negligible
    keep = np.exp((1.0 - sigma) * edges[:-1]) * period / edges[:-1] > 1e-12
    lo, hi = edges[:-1][keep], edges[1:][keep]
    signs = 1.0 - 2.0 * (np.arange(k0, k0 + edges.size - 1)[keep] % 2)
    mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
    u = (mid[:, None] + half[:, None] * _XK[None, :]).ravel()
    w = (signs[:, None] * half[:, None] * _WK[None, :]).ravel()
    w = w * np.exp((1.0 - sigma) * u) / u
    return u, w


class GeneralExtremalSeries:
    """Sign-twisted Euler product prod (1 - eps_p |a(p)| p^-s)^(-1).

    The rotation eps_p = (-1)^floor(delta ln p/(2 pi)) is the factor-wise
    extremal choice for window length delta.  If `alpha` (prime density of
    the coefficients) is given, the truncated log-product is completed by a
    sign-aware prime-number-theorem tail, making evaluation meaningful down
    to sigma = 1.
    """

    def __init__(
        self,
        series: MultiplicativeSeries,
        delta: float,
        prime_cutoff: int,
        alpha: float | None = None,
    ):
        if series.kind != "completely-multiplicative":
            raise ValueError("completely-multiplicative series required")
        table = sieve_primes(prime_cutoff)
        keep = table.primes <= prime_cutoff
        self.primes = table.primes[keep]
        self.logs = table.logs[keep]
        self.delta = float(delta)
        self.prime_cutoff = int(prime_cutoff)
        self.alpha = alpha
        self.amps = np.abs(series.ap(self.primes)) * epsilon_signs(self.delta * self.logs)
        self.name = f"extremal[{series.name}]"

    def log_value(self, s: complex) -> complex:
        s = complex(s)
        if s.real < 1.0 or (self.alpha is None and s.real <= 1.0):
            raise PrecisionError("sigma too small for the truncated product")
        terms = self.amps * np.exp(-s * self.logs)
        val = complex(-np.sum(np.log(1.0 - terms)))
        if self.alpha is not None:
            u, w = _twisted_tail_rule(self.delta, math.log(self.prime_cutoff), s.real)
            val += self.alpha * complex(np.sum(w * np.exp(-1j * s.imag * u)))
        return val

    def log_abs_line(self, ts: np.ndarray, sigma: float) -> np.ndarray:
        """Vectorized log| . | on the line sigma + i t."""
        ts = np.asarray(ts, dtype=np.float64)
        if sigma < 1.0 or (self.alpha is None and sigma <= 1.0):
            raise PrecisionError("sigma too small for the truncated product")
        damp = self.amps * np.exp(-sigma * self.logs)
        phase = np.exp(np.outer(-1j * ts, self.logs))
        out = -np.log(np.abs(1.0 - damp[None, :] * phase)).sum(axis=1)
        if self.alpha is not None:
            u, w = _twisted_tail_rule(self.delta, math.log(self.prime_cutoff), sigma)
            out += self.alpha * (np.cos(np.outer(ts, u)) @ w)
        return out


def load_factors_csv(path: str) -> dict[int, EulerFactor]:
    """Read local factors from CSV rows "p,a1,a2,..." (a0 = 1 implied)."""
    out: dict[int, EulerFactor] = {}
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].lstrip().startswith("#"):
                continue
            p = int(row[0])
            coeffs = np.concatenate([[1.0], np.array([float(x) for x in row[1:]])])
            out[p] = EulerFactor(p=p, coeffs=coeffs.astype(np.complex128))
    return out
