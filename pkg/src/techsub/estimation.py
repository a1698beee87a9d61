"""Model fitting: simple OLS with diagnostics, the killer/victim log-log
regression, regime classification of the growth coefficient B, nonlinear
logistic fitting and the Fisher-Pry share-substitution fit.

All logarithms are natural. Non-positive observations are dropped from
log-space fits (and counted), never clamped.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import stats

from .errors import EstimationError, ValidationError
from .growth import LogisticParams, logistic_value
from .ingest import TimeSeries, align_pair


@dataclass(frozen=True)
class RegressionFit:
    """Simple linear regression y = alpha + beta*x with full diagnostics.

    se_estimate is the residual standard error; r2_adj penalizes degrees
    of freedom; f_stat equals the squared slope t statistic (simple
    regression identity), with p values from the t/F distributions on
    n - 2 degrees of freedom.
    """

    alpha: float
    beta: float
    se_alpha: float
    se_beta: float
    r2: float
    r2_adj: float
    se_estimate: float
    f_stat: float
    p_value_f: float
    p_value_beta: float
    n: int


class Regime(enum.Enum):
    """How fast the killer technology grows relative to the victim."""

    UNDER_DEVELOPMENT = "under-development"
    PROPORTIONAL_GROWTH = "proportional-growth"
    DEVELOPMENT = "development"


@dataclass(frozen=True)
class TTestTolerance:
    """Proportionality band from a two-sided t test of slope = 1."""

    alpha: float = 0.05

    def tolerance(self, fit: RegressionFit) -> float:
        t_crit = float(stats.t.ppf(1.0 - self.alpha / 2.0, fit.n - 2))
        return t_crit * fit.se_beta


@dataclass(frozen=True)
class AbsoluteTolerance:
    """Fixed half-width band around slope = 1."""

    value: float = 0.05

    def tolerance(self, fit: RegressionFit) -> float:
        return self.value


DEFAULT_TOLERANCE = TTestTolerance()


@dataclass(frozen=True)
class KillerFit:
    """Result of regressing log killer level on log victim level."""

    regression: RegressionFit
    regime: Regime
    co_movement: str
    years_used: tuple[int, ...]
    n_dropped: int


@dataclass(frozen=True)
class FisherPryFit:
    """Straight-line fit of the log share odds ln(f/(1-f)) against time."""

    slope: float
    intercept: float
    t_half: float
    regression: RegressionFit


def ols_fit(xs: Sequence[float], ys: Sequence[float]) -> RegressionFit:
    """Ordinary least squares of ys on xs with diagnostics.

    Requires n >= 3 (residual degrees of freedom) and non-degenerate xs.
    Perfect fits report se_estimate 0, infinite F and zero p values.
    """
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    n = len(x)
    if len(y) != n:
        raise EstimationError(f"xs and ys lengths differ ({n} vs {len(y)})")
    if n < 3:
        raise EstimationError(f"need at least 3 observations, got {n}")
    x_mean = float(x.mean())
    y_mean = float(y.mean())
    dx = x - x_mean
    dy = y - y_mean
    sxx = float(dx @ dx)
    if sxx == 0.0:
        raise EstimationError("xs have zero variance, slope undefined")
    sxy = float(dx @ dy)
    sst = float(dy @ dy)

    beta = sxy / sxx
    alpha = y_mean - beta * x_mean
    resid = y - (alpha + beta * x)
    sse = float(resid @ resid)
    dof = n - 2

    r2 = 1.0 - sse / sst if sst > 0.0 else 1.0
    r2_adj = 1.0 - (1.0 - r2) * (n - 1) / dof
    se_estimate = math.sqrt(sse / dof)
    se_beta = se_estimate / math.sqrt(sxx)
    se_alpha = se_estimate * math.sqrt(1.0 / n + x_mean**2 / sxx)

    if se_beta > 0.0:
        t_beta = beta / se_beta
    else:
        t_beta = math.inf if beta != 0.0 else 0.0
    f_stat = t_beta * t_beta
    p_value_beta = float(2.0 * stats.t.sf(abs(t_beta), dof))
    p_value_f = float(stats.f.sf(f_stat, 1, dof))

    return RegressionFit(
        alpha=alpha,
        beta=beta,
        se_alpha=se_alpha,
        se_beta=se_beta,
        r2=r2,
        r2_adj=r2_adj,
        se_estimate=se_estimate,
        f_stat=f_stat,
        p_value_f=p_value_f,
        p_value_beta=p_value_beta,
        n=n,
    )


def classify_regime(fit: RegressionFit, policy=None) -> Regime:
    """Label the estimated growth coefficient B = fit.beta against 1.

    Proportional growth when |beta - 1| falls inside the policy's band
    (default: two-sided t test at 5%), development when beta exceeds 1 by
    more than the band, under-development otherwise. The comparison is
    literal, so a large negative beta still lands in under-development;
    sign is reported separately as co-movement direction.
    """
    policy = policy or DEFAULT_TOLERANCE
    deviation = fit.beta - 1.0
    if abs(deviation) <= policy.tolerance(fit):
        return Regime.PROPORTIONAL_GROWTH
    if deviation > 0.0:
        return Regime.DEVELOPMENT
    return Regime.UNDER_DEVELOPMENT


def killer_fit(
    killer: TimeSeries,
    victim: TimeSeries,
    bounds: tuple[int, int] | None = None,
    policy=None,
) -> KillerFit:
    """Fit log(killer) = alpha + B*log(victim) on year-aligned observations.

    Aligns the two series on year (inner join, optionally restricted to
    bounds), drops years where either level is non-positive, and runs OLS
    in natural-log space. Needs at least 3 usable aligned observations.
    """
    pair = align_pair(killer, victim, bounds)
    years = []
    log_k = []
    log_v = []
    dropped = 0
    for year, kv, vv in zip(pair.years, pair.killer_values, pair.victim_values):
        if kv > 0.0 and vv > 0.0:
            years.append(year)
            log_k.append(math.log(kv))
            log_v.append(math.log(vv))
        else:
            dropped += 1
    if len(years) < 3:
        raise EstimationError(
            f"only {len(years)} aligned strictly-positive observations "
            f"(need 3); {dropped} dropped for non-positivity"
        )
    regression = ols_fit(log_v, log_k)
    regime = classify_regime(regression, policy)
    co_movement = "inverse" if regression.beta < 0 else "direct"
    return KillerFit(
        regression=regression,
        regime=regime,
        co_movement=co_movement,
        years_used=tuple(years),
        n_dropped=dropped,
    )


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def _logit_ols(K: float, t: np.ndarray, v: np.ndarray) -> tuple[float, float, float]:
    """Closed-form (a, b, level SSE) for a fixed capacity candidate K."""
    z = np.log((K - v) / v)
    t_mean = t.mean()
    z_mean = z.mean()
    dt = t - t_mean
    slope = float(dt @ (z - z_mean)) / float(dt @ dt)
    b = -slope
    a = z_mean + b * t_mean
    with np.errstate(over="ignore"):
        pred = K / (1.0 + np.exp(np.clip(a - b * t, -700.0, 700.0)))
    resid = v - pred
    return a, b, float(resid @ resid)


def logistic_fit(
    series: TimeSeries,
    k_epsilon: float = 1e-14,
    k_max_factor: float = 50.0,
    grid_size: int = 384,
) -> LogisticParams:
    """Fit a logistic curve to a series by least squares on levels.

    Outer one-dimensional search over the capacity K on
    (max(series)*(1+k_epsilon), max(series)*k_max_factor]: a coarse scan
    followed by golden-section refinement, both over ln(K - max) so the
    sharp minimum near a saturated series stays resolvable. For each
    candidate K the remaining parameters come from closed-form OLS on the
    logit-linearized data ln((K-v)/v) = a - b*t; the objective is the sum
    of squared level residuals.

    Non-positive observations are dropped; at least 4 must remain and the
    series must rise somewhere (constant or decreasing-only data has no
    S-shaped growth to fit).
    """
    pts = [(y, v) for y, v in series.points if v > 0.0]
    if len(pts) < 4:
        raise EstimationError(
            f"need at least 4 strictly positive observations, got {len(pts)}"
        )
    t = np.array([y for y, _ in pts], dtype=float)
    v = np.array([x for _, x in pts], dtype=float)
    if np.all(v == v[0]):
        raise EstimationError("series is constant, no S-shaped growth to fit")
    if np.all(np.diff(v) <= 0.0):
        raise EstimationError("series never increases, no S-shaped growth to fit")

    v_max = float(v.max())
    # gap = K - max(series); searched in log space
    u_lo = math.log(k_epsilon * v_max)
    u_hi = math.log((k_max_factor - 1.0) * v_max)

    def sse_at(u: float) -> float:
        return _logit_ols(v_max + math.exp(u), t, v)[2]

    grid = np.linspace(u_lo, u_hi, grid_size)
    sses = [sse_at(u) for u in grid]
    best = int(np.argmin(sses))
    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, grid_size - 1)]

    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    f_c = sse_at(c)
    f_d = sse_at(d)
    while hi - lo > 1e-12:
        if f_c < f_d:
            hi, d, f_d = d, c, f_c
            c = hi - _INV_PHI * (hi - lo)
            f_c = sse_at(c)
        else:
            lo, c, f_c = c, d, f_d
            d = lo + _INV_PHI * (hi - lo)
            f_d = sse_at(d)

    K = v_max + math.exp((lo + hi) / 2.0)
    a, b, _ = _logit_ols(K, t, v)
    if b == 0.0:
        raise EstimationError("degenerate fit: zero growth rate")
    return LogisticParams(K=K, a=a, b=b)


def logistic_sse(params: LogisticParams, series: TimeSeries) -> float:
    """Sum of squared level residuals of a logistic curve over a series."""
    return sum((v - logistic_value(params, y)) ** 2 for y, v in series.points)


def fisher_pry_fit(shares: TimeSeries) -> FisherPryFit:
    """Fit the substitution line ln(f/(1-f)) = intercept + slope*t.

    All share values must lie strictly in (0, 1). The half-substitution
    time t_half = -intercept/slope is where the fitted share crosses 1/2;
    a zero slope leaves it undefined and raises EstimationError.
    """
    for year, f in shares.points:
        if not (0.0 < f < 1.0):
            raise ValidationError(
                f"share at year {year} must lie strictly in (0, 1), got {f}"
            )
    if len(shares) < 3:
        raise EstimationError(f"need at least 3 observations, got {len(shares)}")
    years = [float(y) for y in shares.years]
    logits = [math.log(f / (1.0 - f)) for f in shares.values]
    regression = ols_fit(years, logits)
    if regression.beta == 0.0:
        raise EstimationError("share series has zero trend, t_half undefined")
    return FisherPryFit(
        slope=regression.beta,
        intercept=regression.alpha,
        t_half=-regression.alpha / regression.beta,
        regression=regression,
    )
