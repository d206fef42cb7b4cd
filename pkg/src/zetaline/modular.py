"""Modular-form coefficient sources and the exponent arithmetic built on them.

Ramanujan tau via the Eisenstein identity with CRT-combined integer
convolutions, Hecke recursion, reproducible Sato-Tate angle samples, Catalan
exponents, and the two-sided short-interval bound checker.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .constants import PI
from .errors import ConvergenceError
from .framework import GrowthFit, MultiplicativeSeries, alpha_beta_fit, geometric_factor
from .primes import sieve_primes
from .quadrature import integrate

SATO_TATE_ALPHA = 8.0 / (3.0 * PI)


@dataclass(frozen=True)
class TauTable:
    """Exact Ramanujan tau values tau(1..N)."""

    n_max: int
    tau: tuple[int, ...]

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.n_max:
            raise IndexError(f"n must be in [1, {self.n_max}]")
        return self.tau[n - 1]


def _divisor_power_sums(n_max: int, k: int) -> np.ndarray:
    """sigma_k(n) for n = 1..n_max (index 0 unused)."""
    out = np.zeros(n_max + 1, dtype=object)
    for d in range(1, n_max + 1):
        out[d::d] += d**k
    return out


def tau_table(n_max: int) -> TauTable:
    """tau(n) from Delta = (E4^3 - E6^2)/1728, exact integers throughout.

    Power-series multiplications run as int64 convolutions modulo several
    ~1.5e7 primes and the results are CRT-combined, keeping every
    intermediate inside machine range while the final values are exact.
    """
    if not 1 <= n_max <= 2 * 10**4:
        raise ValueError("1 <= n_max <= 2e4 required")
    sig3 = _divisor_power_sums(n_max, 3)
    sig5 = _divisor_power_sums(n_max, 5)
    e4 = np.concatenate([[1], 240 * sig3[1 : n_max + 1]])
    e6 = np.concatenate([[1], -504 * sig5[1 : n_max + 1]])

    table = sieve_primes(15_000_000)
    moduli = [int(p) for p in table.primes[-4:]]
    residues = []
    for m in moduli:
        a4 = (e4 % m).astype(np.int64)
        a6 = (e6 % m).astype(np.int64)
        sq = np.convolve(a4, a4)[: n_max + 1] % m
        cube = np.convolve(sq, a4)[: n_max + 1] % m
        e6sq = np.convolve(a6, a6)[: n_max + 1] % m
        inv1728 = pow(1728, -1, m)
        residues.append((cube - e6sq) * inv1728 % m)

    big_m = math.prod(moduli)
    basis = [big_m // m * pow(big_m // m, -1, m) for m in moduli]
    taus = []
    for n in range(1, n_max + 1):
        x = sum(int(r[n]) * b for r, b in zip(residues, basis)) % big_m
        if x > big_m // 2:
            x -= big_m
        taus.append(x)
    if taus[0] != 1:
        raise ConvergenceError("tau(1) != 1: CRT reconstruction failed")
    return TauTable(n_max=n_max, tau=tuple(taus))


def hecke_extend(a_p: float, p: int, order: int) -> np.ndarray:
    """Coefficients a(p^k), k = 0..order, from the degree-2 local recursion.

    a(p^(k+1)) = a_p a(p^k) - a(p^(k-1)); these are the Chebyshev values
    U_k(a_p/2), the expansion of (1 - a_p z + z^2)^(-1).
    """
    if abs(a_p) > 2.0:
        raise ValueError("|a_p| <= 2 required")
    out = np.empty(order + 1)
    out[0] = 1.0
    if order >= 1:
        out[1] = a_p
    for k in range(1, order):
        out[k + 1] = a_p * out[k] - out[k - 1]
    return out


def _splitmix64(seed: int, count: int) -> np.ndarray:
    """Deterministic uniform(0,1) stream from the SplitMix64 generator."""
    k = np.arange(1, count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed) + k * np.uint64(0x9E3779B97F4A7C15)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))


@dataclass(frozen=True)
class SatoTateSample:
    """Seeded angles theta_p in [0, pi] with density (2/pi) sin^2 theta."""

    seed: int
    prime_cutoff: int
    primes: np.ndarray
    angles: np.ndarray

    def ap(self) -> np.ndarray:
        return 2.0 * np.cos(self.angles)


def sato_tate_sample(seed: int, prime_cutoff: int) -> SatoTateSample:
    """i.i.d. draws from the semicircle-angle law by inverting the CDF.

    The CDF equation theta - sin(theta)cos(theta) = pi u is monotone, so 60
    bisection steps bracket the root to machine width; a final Newton step
    polishes where the derivative 2 sin^2(theta) is not degenerate.
    """
    if prime_cutoff > 10**6:
        raise ValueError("prime_cutoff <= 1e6 required")
    table = sieve_primes(max(2, prime_cutoff))
    primes = table.primes[table.primes <= prime_cutoff]
    u = _splitmix64(seed, primes.size)
    u = np.clip(u, 1e-12, 1.0 - 1e-12)
    g = lambda th: th - np.sin(th) * np.cos(th) - PI * u
    lo = np.zeros_like(u)
    hi = np.full_like(u, PI)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        neg = g(mid) < 0.0
        lo = np.where(neg, mid, lo)
        hi = np.where(neg, hi, mid)
    theta = 0.5 * (lo + hi)
    deriv = 2.0 * np.sin(theta) ** 2
    theta = np.where(deriv > 1e-6, theta - g(theta) / np.maximum(deriv, 1e-6), theta)
    residual = np.max(np.abs(g(theta)))
    if residual > 1e-13:
        raise ConvergenceError(f"inverse-CDF residual {residual:.2e}")
    return SatoTateSample(seed=seed, prime_cutoff=prime_cutoff, primes=primes, angles=theta)


def sato_tate_alpha(tol: float = 1e-12) -> float:
    """Mean of |2 cos theta| under the semicircle law: 2(2/pi) int |t| sqrt(1-t^2) dt."""
    f = lambda ts: np.abs(ts) * np.sqrt(np.clip(1.0 - ts * ts, 0.0, None))
    res = integrate(f, -1.0, 1.0, tol=tol, breakpoints=[0.0])
    return 2.0 * (2.0 / PI) * float(res.value)


def catalan(k: int) -> int:
    """Catalan number (2k)!/((k+1)! k!)."""
    if not 1 <= k <= 15:
        raise ValueError("1 <= k <= 15 required")
    return math.comb(2 * k, k) // (k + 1)


def tau_series(table: TauTable) -> MultiplicativeSeries:
    """Normalized |tau(p)|/p^(11/2) coefficients as a framework series."""
    lookup = {}
    for p in sieve_primes(table.n_max).primes:
        if p <= table.n_max:
            lookup[int(p)] = abs(table[int(p)]) / float(p) ** 5.5

    def ap(ps):
        ps = np.asarray(ps)
        return np.array([lookup.get(int(p), 0.0) for p in ps])

    return MultiplicativeSeries(
        kind="general",
        name="tau-normalized",
        ap=ap,
        factor=lambda p: geometric_factor(p, lookup.get(int(p), 0.0)),
    )


def sato_tate_series(sample: SatoTateSample) -> MultiplicativeSeries:
    lookup = dict(zip(sample.primes.tolist(), np.abs(sample.ap()).tolist()))

    def ap(ps):
        ps = np.asarray(ps)
        return np.array([lookup.get(int(p), 0.0) for p in ps])

    return MultiplicativeSeries(
        kind="completely-multiplicative",
        name=f"sato-tate(seed={sample.seed})",
        ap=ap,
        factor=lambda p: geometric_factor(p, lookup.get(int(p), 0.0)),
    )


def coefficient_alpha(source: MultiplicativeSeries, n_max: int) -> GrowthFit:
    """Growth exponent alpha of sum |a(p)|/p, by the prime-sum fit."""
    return alpha_beta_fit(source, n_max, "prime-sum")


@dataclass(frozen=True)
class ExponentTable:
    """Short-interval exponent pairs (lower, upper) per result family."""

    corollary2: tuple[float, float] = (23.0 / 12.0, 1.0 / 12.0)
    corollary3: tuple[float, float] = (1.0 + SATO_TATE_ALPHA, 1.0 - SATO_TATE_ALPHA)
    catalan_exponents: tuple[int, ...] = field(
        default_factory=lambda: tuple(catalan(k) for k in range(1, 5))
    )

    @staticmethod
    def corollary1(p: float) -> tuple[float, float]:
        return 1.0 + abs(p), 1.0 - abs(p)


def exponent_table() -> ExponentTable:
    return ExponentTable()


@dataclass(frozen=True)
class BoundReport:
    alpha: float
    c_lower: float
    c_upper: float
    rows: tuple[tuple[float, float, float, float, float], ...]  # (delta, T, value, lo, hi)
    violations: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return not self.violations


class _LineProduct:
    """|A(sigma + i t)| for a positive-coefficient series, truncated product."""

    def __init__(self, series: MultiplicativeSeries, prime_cutoff: int, sigma: float):
        table = sieve_primes(prime_cutoff)
        keep = table.primes <= prime_cutoff
        self.logs = table.logs[keep]
        self.amps = np.abs(series.ap(table.primes[keep]))
        self.sigma = sigma

    def abs_line(self, ts: np.ndarray) -> np.ndarray:
        damp = self.amps * np.exp(-self.sigma * self.logs)
        phase = np.exp(np.outer(-1j * np.asarray(ts, dtype=np.float64), self.logs))
        return np.exp(-np.log(np.abs(1.0 - damp[None, :] * phase)).sum(axis=1))


def theorem19_check(
    series: MultiplicativeSeries,
    alpha: float,
    deltas: Sequence[float] = (0.4, 0.2, 0.1),
    t_samples: int = 20,
    seed: int = 20260823,
    sigma: float = 1.01,
    prime_cutoff: int = 10**4,
) -> BoundReport:
    """Two-sided law c delta^(1+alpha) <= int |A(1+it)| <= C delta^(1-alpha).

    The series is evaluated through its truncated Euler product on the
    sigma = 1.01 proxy line; c and C are calibrated on the largest delta's
    samples and then frozen, so the check is of the delta-scaling, not of
    absolute constants.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("0 < alpha < 1 required (alpha = 1 series excluded)")
    deltas = sorted(deltas, reverse=True)
    prod = _LineProduct(series, prime_cutoff, sigma)
    rng = np.random.default_rng(seed)
    t_starts = rng.uniform(10.0, 1e4, size=t_samples)

    values = {
        d: np.array(
            [
                integrate(prod.abs_line, T, T + d, tol=1e-8).value
                for T in t_starts
            ]
        )
        for d in deltas
    }
    d0 = deltas[0]
    c_lower = float(np.min(values[d0]) / d0 ** (1.0 + alpha))
    c_upper = float(np.max(values[d0]) / d0 ** (1.0 - alpha))

    rows = []
    violations = []
    i = 0
    for d in deltas:
        lo = c_lower * d ** (1.0 + alpha)
        hi = c_upper * d ** (1.0 - alpha)
        for T, v in zip(t_starts, values[d]):
            rows.append((d, float(T), float(v), lo, hi))
            if not lo <= v <= hi:
                violations.append(i)
            i += 1
    return BoundReport(
        alpha=alpha,
        c_lower=c_lower,
        c_upper=c_upper,
        rows=tuple(rows),
        violations=tuple(violations),
    )
