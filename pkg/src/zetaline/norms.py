"""Short-interval norms (L1, Lp, log-L1, sup, min) and the worked examples.

Targets are wrapped as SeriesTarget: a vectorized map from t-values to the
series values on the chosen vertical line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .constants import EULER_GAMMA, STIELTJES_1, STIELTJES_2, ZETA2
from .errors import PoleError
from .extremal import theta_fn
from .quadrature import NormResult, integrate
from .zeta import zeta_line

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class SeriesTarget:
    """Evaluable Dirichlet-series modulus |A(sigma + i t)| on a line."""

    name: str
    fn: Callable[[np.ndarray], np.ndarray]  # t array -> |A| array
    pole_at_zero: bool = False

    def __call__(self, ts: np.ndarray) -> np.ndarray:
        return self.fn(np.asarray(ts, dtype=np.float64))


def target_zeta(sigma: float = 1.0) -> SeriesTarget:
    return SeriesTarget(
        "zeta", lambda ts: np.abs(zeta_line(ts, sigma)), pole_at_zero=sigma <= 1.0
    )


def target_inv_zeta(sigma: float = 1.0) -> SeriesTarget:
    return SeriesTarget("1/zeta", lambda ts: 1.0 / np.abs(zeta_line(ts, sigma)))


def target_constant(value: float = 1.0) -> SeriesTarget:
    return SeriesTarget(f"const:{value}", lambda ts: np.full(ts.shape, float(value)))


def log_abs_zeta_product(ts: np.ndarray, sigma: float = 1.0) -> np.ndarray:
    """log|zeta(s)(s-1)| on s = sigma + i t, regular across t = 0 on sigma = 1."""
    ts = np.asarray(ts, dtype=np.float64)
    z = (sigma - 1.0) + 1j * ts
    out = np.empty(ts.shape)
    small = np.abs(z) < 1e-3
    if np.any(small):
        zs = z[small]
        w = EULER_GAMMA * zs - STIELTJES_1 * zs * zs + 0.5 * STIELTJES_2 * zs**3
        out[small] = np.log(np.abs(1.0 + w))
    if np.any(~small):
        out[~small] = np.log(np.abs(zeta_line(ts[~small], sigma) * z[~small]))
    return out


def log_abs_zeta_delta(ts: np.ndarray, delta: float, sigma: float = 1.0) -> np.ndarray:
    """log|zeta_delta(sigma+it)| via the closed form, vectorized over t.

    On the line sigma = 1 the Theta term contributes the constant
    gamma + log 4 to the real part (its integral is purely imaginary on the
    imaginary axis), so only the Laurent factor needs per-point work.
    """
    ts = np.asarray(ts, dtype=np.float64)
    base = -math.log(delta) + log_abs_zeta_product(ts, sigma)
    if sigma == 1.0:
        if np.any(np.abs(ts) >= 0.5 * delta):
            raise PoleError("closed form valid for |t| < delta/2 on sigma = 1")
        return base + EULER_GAMMA + math.log(4.0)
    return base + np.array(
        [theta_fn(complex(sigma - 1.0, t) / delta).value.real for t in ts]
    )


def target_zeta_delta(delta: float, sigma: float = 1.0) -> SeriesTarget:
    return SeriesTarget(
        f"zeta_delta({delta})",
        lambda ts: np.exp(log_abs_zeta_delta(ts, delta, sigma)),
    )


def target_zeta_pair(delta: float, sigma: float = 1.0) -> SeriesTarget:
    """|zeta(2s)/zeta_delta(s)|."""

    def fn(ts):
        return np.abs(zeta_line(2.0 * ts, 2.0 * sigma)) * np.exp(
            -log_abs_zeta_delta(ts, delta, sigma)
        )

    return SeriesTarget(f"zeta_pair({delta})", fn)


@dataclass(frozen=True)
class NormRequest:
    target: SeriesTarget
    T: float
    delta: float
    sigma: float = 1.0
    mode: str = "L1"          # L1 | Lp | negLp | logL1 | sup | min
    p: float = 1.0
    normalized: bool = True   # Lp/negLp: ((1/delta) int ...)^(1/p) vs plain int
    tol: float = 1e-9

    def __post_init__(self):
        if not 0.0 < self.delta <= 2.0:
            raise ValueError("0 < delta <= 2 required")
        if self.mode not in ("L1", "Lp", "negLp", "logL1", "sup", "min"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.p <= 0:
            raise ValueError("p > 0 required")


def _sample_extremum(target: SeriesTarget, a: float, b: float, want_max: bool):
    """Dense scan (2048 steps) plus golden-section polish."""
    ts = np.linspace(a, b, 2049)
    vals = target(ts)
    i = int(np.argmax(vals) if want_max else np.argmin(vals))
    lo = ts[max(0, i - 1)]
    hi = ts[min(len(ts) - 1, i + 1)]
    sign = 1.0 if want_max else -1.0

    x1 = hi - GOLDEN * (hi - lo)
    x2 = lo + GOLDEN * (hi - lo)
    f1 = sign * float(target(np.array([x1]))[0])
    f2 = sign * float(target(np.array([x2]))[0])
    evals = len(ts) + 2
    while hi - lo > 1e-12 * max(1.0, abs(hi)) and evals < 2048 + 200:
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - GOLDEN * (hi - lo)
            f1 = sign * float(target(np.array([x1]))[0])
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + GOLDEN * (hi - lo)
            f2 = sign * float(target(np.array([x2]))[0])
        evals += 1
    return sign * max(f1, f2), evals


def interval_norm(req: NormRequest) -> NormResult:
    """Short-interval norm per the request's mode.

    L1 is the plain integral int |f| dt; Lp and negLp default to the
    normalized form ((1/delta) int |f|^(+-p) dt)^(1/p); logL1 is the
    interval average of log|f|.
    """
    a, b = req.T, req.T + req.delta
    if req.target.pole_at_zero and a <= 0.0 <= b:
        raise PoleError(f"[{a}, {b}] contains the pole of {req.target.name}")

    if req.mode in ("sup", "min"):
        val, evals = _sample_extremum(req.target, a, b, want_max=req.mode == "sup")
        return NormResult(value=val, error_estimate=0.0, evaluations=evals, converged=True)

    if req.mode == "L1":
        f = lambda ts: req.target(ts)
    elif req.mode == "Lp":
        f = lambda ts: req.target(ts) ** req.p
    elif req.mode == "negLp":
        f = lambda ts: req.target(ts) ** (-req.p)
    else:  # logL1
        f = lambda ts: np.log(req.target(ts))

    res = integrate(f, a, b, tol=req.tol)
    value = res.value
    err = res.error_estimate
    if req.mode == "logL1":
        value /= req.delta
        err /= req.delta
    elif req.mode in ("Lp", "negLp") and req.normalized:
        plain = value
        value = (plain / req.delta) ** (1.0 / req.p)
        # first-order error propagation through x -> (x/delta)^(1/p)
        if plain > 0:
            err = value * err / (req.p * plain)
    return NormResult(value=value, error_estimate=err, evaluations=res.evaluations,
                      converged=res.converged)


def jensen_gap(req: NormRequest) -> float:
    """log((1/delta) int |f|) - (1/delta) int log|f|; nonnegative up to tol."""
    l1 = interval_norm(
        NormRequest(req.target, req.T, req.delta, req.sigma, "L1", tol=req.tol)
    )
    lg = interval_norm(
        NormRequest(req.target, req.T, req.delta, req.sigma, "logL1", tol=req.tol)
    )
    return math.log(l1.value / req.delta) - lg.value


def theorem3_predictions(delta: float) -> tuple[float, float]:
    """Predicted plain-L1 infima over length-delta intervals: (zeta, 1/zeta)."""
    if not 0.0 < delta <= 1.0:
        raise ValueError("0 < delta <= 1 required")
    inv = math.exp(-EULER_GAMMA) / 4.0 * delta * delta
    return ZETA2 * inv, inv


def sup_norm_predictions(delta: float) -> tuple[float, float]:
    """(inf_T max |zeta|, sup_T min |zeta|) over length-delta intervals."""
    if not 0.0 < delta <= 1.0:
        raise ValueError("0 < delta <= 1 required")
    return (
        math.exp(-EULER_GAMMA) * math.pi**2 / 24.0 * delta,
        4.0 * math.exp(EULER_GAMMA) / delta,
    )


def theorem6_constants(delta: float) -> tuple[float, float]:
    """Predicted interval averages of log|.|: (inverse target, direct target).

    inverse: log delta - log 4 - gamma for log|zeta_delta|^-1.
    direct:  log delta - log 4 - gamma + log zeta(2) for log|zeta(2s)/zeta_delta|;
    the gamma term is forced by the closed-form modulus delta pi^2 e^-gamma/24
    even though some displays drop it.
    """
    c_inv = math.log(delta) - math.log(4.0) - EULER_GAMMA
    return c_inv, c_inv + math.log(ZETA2)


def theorem6_residual(delta: float, which: str, tol: float = 1e-9) -> float:
    """Interval average of log|target| minus its predicted constant (O(delta^2))."""
    if not 0.0 < delta <= 0.5:
        raise ValueError("0 < delta <= 0.5 required")
    c_inv, c_dir = theorem6_constants(delta)
    if which == "inv":
        f = lambda ts: -log_abs_zeta_delta(ts, delta)
        predicted = c_inv
    elif which == "direct":
        f = lambda ts: np.log(np.abs(zeta_line(2.0 * ts, 2.0))) - log_abs_zeta_delta(
            ts, delta
        )
        predicted = c_dir
    else:
        raise ValueError("which must be 'inv' or 'direct'")
    res = integrate(f, -0.5 * delta + 1e-12, 0.5 * delta - 1e-12, tol=tol)
    return res.value / delta - predicted


def example1_value(delta: float, tol: float = 1e-10) -> float:
    """int_0^delta |zeta(1 + i(t - delta/2))|^-1 dt = delta^2/4 + O(delta^4)."""
    if not 0.0 < delta <= 0.3:
        raise ValueError("0 < delta <= 0.3 required")

    def f(ts):
        return 1.0 / np.abs(zeta_line(ts - 0.5 * delta, 1.0))

    res = integrate(f, 0.0, delta, tol=tol, breakpoints=[0.5 * delta])
    return float(res.value)


def example2_ratio(tol: float = 1e-11) -> float:
    """4 x int_{-1/2}^{1/2} |t^2 - 1/6|^(1/4) |t|^(1/2) dt (compared to 0.9518)."""
    root = 1.0 / math.sqrt(6.0)

    def f(ts):
        return np.abs(ts * ts - 1.0 / 6.0) ** 0.25 * np.abs(ts) ** 0.5

    res = integrate(f, -0.5, 0.5, tol=tol, breakpoints=[-root, 0.0, root])
    return 4.0 * float(res.value)
