"""Two-index market model with GARCH(p, q) errors, fitted by Gaussian MLE.

The mean equation regresses a firm's return on an intercept, the local
index return, and the US index return; the error's conditional variance
follows h_t = alpha0 + sum_j alphas[j] * e_{t-j}^2 + sum_k gammas[k] * h_{t-k}.

Estimation maximizes the conditional log-likelihood over transformed
parameters: alpha0 through a log map, and (alphas, gammas) jointly through
a logistic simplex map that keeps every coefficient nonnegative with a sum
strictly below one, so stationarity and positive variances hold for every
parameter vector the optimizer can reach.  Returns are rescaled to unit
residual variance internally and mapped back, which keeps the optimizer's
tolerances scale-free.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize
from scipy.signal import lfilter

from .errors import NonFiniteLikelihood, NonStationaryParameters, SeriesTooShort
from .linear_models import ols_fit
from .stats_core import ReturnSeries

MAX_VARIANCE_LAGS = 2
MIN_OBSERVATIONS = 60

_LOG_2PI = float(np.log(2.0 * np.pi))
_BIG = 1e10
_Z_CLIP = 40.0


@dataclass(frozen=True)
class GarchSpec:
    """Lag orders: p conditional-variance lags (gammas), q squared-error lags (alphas)."""

    p: int = 1
    q: int = 1

    def __post_init__(self) -> None:
        for name, v in (("p", self.p), ("q", self.q)):
            if not 0 <= v <= MAX_VARIANCE_LAGS:
                raise ValueError(f"{name} must be in [0, {MAX_VARIANCE_LAGS}], got {v}")


@dataclass(frozen=True)
class GarchFit:
    """Fitted market model with GARCH errors.

    `std_errors` covers all parameters in the order: mean coefficients
    (intercept, local index, US index), alpha0, alphas, gammas.
    """

    mean_coefficients: np.ndarray
    alpha0: float
    alphas: np.ndarray
    gammas: np.ndarray
    conditional_variances: np.ndarray
    log_likelihood: float
    std_errors: np.ndarray
    converged: bool

    @property
    def spec(self) -> GarchSpec:
        return GarchSpec(p=self.gammas.shape[0], q=self.alphas.shape[0])

    @property
    def persistence(self) -> float:
        return float(self.alphas.sum() + self.gammas.sum())

    @property
    def variance_lag_t_stats(self) -> np.ndarray:
        """t statistics of alphas then gammas (the lag-selection criterion)."""
        q = self.alphas.shape[0]
        p = self.gammas.shape[0]
        values = np.concatenate([self.alphas, self.gammas])
        ses = self.std_errors[4 : 4 + q + p] if q + p else np.empty(0)
        with np.errstate(divide="ignore", invalid="ignore"):
            return values / ses


@dataclass(frozen=True)
class GarchSimConfig:
    """Ground-truth process for the simulation oracle."""

    spec: GarchSpec
    true_mean_coefficients: tuple[float, float, float]
    true_alpha0: float
    true_alphas: tuple[float, ...]
    true_gammas: tuple[float, ...]
    length: int
    seed: int
    instrument_id: str = "sim"

    def __post_init__(self) -> None:
        if len(self.true_alphas) != self.spec.q or len(self.true_gammas) != self.spec.p:
            raise ValueError("true_alphas/true_gammas lengths must match the spec's q and p")
        if self.length < 1:
            raise ValueError(f"length must be >= 1, got {self.length}")
        _check_stationary(self.true_alpha0, self.true_alphas, self.true_gammas)


def _check_stationary(alpha0, alphas, gammas) -> None:
    if alpha0 <= 0:
        raise NonStationaryParameters(f"alpha0 must be > 0, got {alpha0}")
    if any(a < 0 for a in alphas) or any(g < 0 for g in gammas):
        raise NonStationaryParameters("alphas and gammas must be nonnegative")
    if sum(alphas) + sum(gammas) >= 1.0:
        raise NonStationaryParameters(
            f"sum of alphas and gammas must be < 1, got {sum(alphas) + sum(gammas)}"
        )


def _series_values(x) -> np.ndarray:
    if isinstance(x, ReturnSeries):
        return x.values
    return np.asarray(x, dtype=float).ravel()


def _conditional_variances(eps, alpha0, alphas, gammas, h0) -> np.ndarray:
    """Variance recursion with pre-sample squared errors and variances pinned at h0.

    When the recursion has any memory (p + q > 0) the first in-sample
    variance equals h0; with p = q = 0 the process is homoskedastic at alpha0.
    """
    T = eps.shape[0]
    q = len(alphas)
    p = len(gammas)
    if p == 0 and q == 0:
        return np.full(T, alpha0)
    eps2 = eps * eps
    drive = np.full(T, alpha0, dtype=float)
    for j in range(1, q + 1):
        lagged = np.empty(T)
        lagged[:j] = h0
        lagged[j:] = eps2[: T - j]
        drive += alphas[j - 1] * lagged
    for k in range(2, p + 1):
        drive[1:k] += gammas[k - 1] * h0
    drive[0] = h0
    if p == 0:
        return drive
    ar = np.empty(p + 1)
    ar[0] = 1.0
    ar[1:] = -np.asarray(gammas, dtype=float)
    return lfilter([1.0], ar, drive)


def _gaussian_loglik(eps, h) -> float:
    return float(-0.5 * np.sum(_LOG_2PI + np.log(h) + eps * eps / h))


def _decode(theta, q, p):
    beta = theta[:3]
    alpha0 = float(np.exp(min(theta[3], 60.0)))
    z = np.clip(theta[4 : 4 + q + p], -_Z_CLIP, _Z_CLIP)
    e = np.exp(z)
    coefs = e / (1.0 + e.sum())
    return beta, alpha0, coefs[:q], coefs[q:]


def _encode(beta, alpha0, alphas, gammas) -> np.ndarray:
    c = np.concatenate([alphas, gammas])
    z = np.log(c / (1.0 - c.sum())) if c.size else np.empty(0)
    return np.concatenate([beta, [np.log(alpha0)], z])


def _natural_loglik(params, y, X, q, p, h0) -> float:
    beta = params[:3]
    alpha0 = params[3]
    alphas = params[4 : 4 + q]
    gammas = params[4 + q :]
    if alpha0 <= 0:
        return np.nan
    eps = y - X @ beta
    h = _conditional_variances(eps, alpha0, alphas, gammas, h0)
    if not np.all(np.isfinite(h)) or np.any(h <= 0):
        return np.nan
    return _gaussian_loglik(eps, h)


def _numerical_hessian(f, x, rel_step=1e-4) -> np.ndarray:
    """Central-difference Hessian with steps relative to each parameter."""
    k = x.shape[0]
    steps = rel_step * np.maximum(np.abs(x), 1e-8)
    H = np.empty((k, k))
    f0 = f(x)
    for i in range(k):
        ei = np.zeros(k)
        ei[i] = steps[i]
        H[i, i] = (f(x + ei) - 2.0 * f0 + f(x - ei)) / steps[i] ** 2
        for j in range(i + 1, k):
            ej = np.zeros(k)
            ej[j] = steps[j]
            H[i, j] = H[j, i] = (
                f(x + ei + ej) - f(x + ei - ej) - f(x - ei + ej) + f(x - ei - ej)
            ) / (4.0 * steps[i] * steps[j])
    return H


def _hessian_std_errors(params, y, X, q, p, h0) -> np.ndarray:
    H = _numerical_hessian(lambda v: _natural_loglik(v, y, X, q, p, h0), params)
    if not np.all(np.isfinite(H)):
        return np.full(params.shape[0], np.nan)
    try:
        cov = np.linalg.inv(-H)
    except np.linalg.LinAlgError:
        cov = np.linalg.pinv(-H)
    diag = np.diag(cov)
    with np.errstate(invalid="ignore"):
        return np.where(diag > 0, np.sqrt(np.abs(diag)), np.nan)


def fit_garch_market_model(y, local_index, us_index, spec: GarchSpec = GarchSpec()) -> GarchFit:
    """Maximum-likelihood fit of the two-index market model with GARCH errors.

    Inputs may be ReturnSeries or plain arrays; all three must be aligned
    and of equal length >= 60.  With p = q = 0 the result is the exact
    homoskedastic MLE (OLS coefficients, constant variance RSS/n).  If the
    optimizer exhausts its iteration budget the best fit found is still
    returned with converged=False.
    """
    yv = _series_values(y)
    loc = _series_values(local_index)
    us = _series_values(us_index)
    if not (yv.shape[0] == loc.shape[0] == us.shape[0]):
        raise ValueError("y, local_index, and us_index must have equal length")
    if all(isinstance(s, ReturnSeries) for s in (y, local_index, us_index)):
        if not (y.dates == local_index.dates == us_index.dates):
            raise ValueError("series dates are not aligned")
    n = yv.shape[0]
    if n < MIN_OBSERVATIONS:
        raise SeriesTooShort(f"need >= {MIN_OBSERVATIONS} observations, got {n}")

    X = np.column_stack([np.ones(n), loc, us])
    base = ols_fit(yv, [loc, us])
    resid = base.residuals
    resid_var = float(resid.var(ddof=1))
    if resid_var <= 0 or not np.isfinite(resid_var):
        raise NonFiniteLikelihood("OLS residual variance is not positive and finite")
    q, p = spec.q, spec.p

    if p == 0 and q == 0:
        sigma2 = float(resid @ resid) / n
        params = np.concatenate([base.coefficients, [sigma2]])
        h = np.full(n, sigma2)
        return GarchFit(
            mean_coefficients=base.coefficients,
            alpha0=sigma2,
            alphas=np.empty(0),
            gammas=np.empty(0),
            conditional_variances=h,
            log_likelihood=_gaussian_loglik(resid, h),
            std_errors=_hessian_std_errors(params, yv, X, q, p, resid_var),
            converged=True,
        )

    # work on returns rescaled to unit OLS residual variance
    scale = 1.0 / np.sqrt(resid_var)
    ys = yv * scale
    Xs = np.column_stack([np.ones(n), loc * scale, us * scale])
    h0s = 1.0

    alphas0 = np.full(q, 0.01)
    if q:
        alphas0[0] = 0.05
    gammas0 = np.full(p, 0.02)
    if p:
        gammas0[0] = max(0.90 - 0.02 * (p - 1) - 0.01 * max(q - 1, 0), 0.05)
    if q == 0:
        # without squared-error feedback keep the start mildly persistent
        gammas0[0] = 0.5
    alpha0_start = max(1.0 - alphas0.sum() - gammas0.sum(), 1e-6)
    beta_s = base.coefficients.copy()
    beta_s[0] *= scale
    theta0 = _encode(beta_s, alpha0_start, alphas0, gammas0)

    best_f = np.inf
    best_x = theta0.copy()

    def objective(theta: np.ndarray) -> float:
        nonlocal best_f, best_x
        beta, a0, al, ga = _decode(theta, q, p)
        eps = ys - Xs @ beta
        h = _conditional_variances(eps, a0, al, ga, h0s)
        if not np.all(np.isfinite(h)) or np.any(h <= 0):
            return _BIG
        ll = _gaussian_loglik(eps, h)
        if not np.isfinite(ll):
            return _BIG
        f = -ll
        if f < best_f:
            best_f = f
            best_x = theta.copy()
        return f

    if objective(theta0) >= _BIG:
        raise NonFiniteLikelihood("log-likelihood is not finite at the starting point")

    res_qn = minimize(objective, theta0, method="BFGS", options={"maxiter": 500, "gtol": 1e-7})
    res_nm = minimize(
        objective,
        best_x,
        method="Nelder-Mead",
        options={"maxiter": 500, "fatol": 1e-8, "xatol": 1e-8},
    )
    converged = bool(res_qn.success or res_nm.success)

    beta_hat_s, alpha0_s, alphas_hat, gammas_hat = _decode(best_x, q, p)
    mean_coefficients = beta_hat_s.copy()
    mean_coefficients[0] /= scale
    alpha0_hat = alpha0_s / scale**2

    eps = yv - X @ mean_coefficients
    h = _conditional_variances(eps, alpha0_hat, alphas_hat, gammas_hat, resid_var)
    ll = _gaussian_loglik(eps, h)
    params = np.concatenate([mean_coefficients, [alpha0_hat], alphas_hat, gammas_hat])
    return GarchFit(
        mean_coefficients=mean_coefficients,
        alpha0=float(alpha0_hat),
        alphas=alphas_hat,
        gammas=gammas_hat,
        conditional_variances=h,
        log_likelihood=ll,
        std_errors=_hessian_std_errors(params, yv, X, q, p, resid_var),
        converged=converged,
    )


def select_lags(
    y,
    local_index,
    us_index,
    max_p: int = 1,
    max_q: int = 1,
    include_homoskedastic: bool = False,
) -> tuple[GarchSpec, GarchFit]:
    """Pick lag orders by likelihood among specs whose lag coefficients are significant.

    Candidates are every (p, q) with 1 <= p <= max_p and 1 <= q <= max_q,
    plus (0, 0) when `include_homoskedastic` is set (it qualifies vacuously,
    having no lag coefficients).  A spec qualifies when every alpha and
    gamma has |t| >= 1.96; among qualifiers the highest log-likelihood
    wins.  If none qualifies the (1, 1) fit is returned as the fallback.
    """
    for name, v in (("max_p", max_p), ("max_q", max_q)):
        if not 1 <= v <= MAX_VARIANCE_LAGS:
            raise ValueError(f"{name} must be in [1, {MAX_VARIANCE_LAGS}], got {v}")
    candidates = [GarchSpec(p=p, q=q) for p in range(1, max_p + 1) for q in range(1, max_q + 1)]
    if include_homoskedastic:
        candidates.insert(0, GarchSpec(p=0, q=0))

    fits: dict[tuple[int, int], GarchFit] = {}
    last_error: Exception | None = None
    for spec in candidates:
        try:
            fits[(spec.p, spec.q)] = fit_garch_market_model(y, local_index, us_index, spec)
        except (NonFiniteLikelihood, SeriesTooShort) as exc:
            last_error = exc
    if not fits:
        assert last_error is not None
        raise last_error

    qualified: list[tuple[int, int]] = []
    for key, fit in fits.items():
        t = fit.variance_lag_t_stats
        if t.size == 0 or bool(np.all(np.isfinite(t)) and np.all(np.abs(t) >= 1.96)):
            qualified.append(key)
    if qualified:
        best = max(qualified, key=lambda key: fits[key].log_likelihood)
    elif (1, 1) in fits:
        best = (1, 1)
    else:
        best = max(fits, key=lambda key: fits[key].log_likelihood)
    return GarchSpec(p=best[0], q=best[1]), fits[best]


def simulate_garch(config: GarchSimConfig, local_index, us_index) -> ReturnSeries:
    """Simulate the market model with GARCH errors; the verification oracle.

    Deterministic for a fixed seed.  The first conditional variance is the
    unconditional variance alpha0 / (1 - sum(alphas) - sum(gammas)), and
    pre-sample lags are pinned at that value.  Index inputs may be
    ReturnSeries (whose dates carry over) or plain arrays (a weekday grid
    is synthesized).
    """
    loc = _series_values(local_index)
    us = _series_values(us_index)
    T = config.length
    if loc.shape[0] != T or us.shape[0] != T:
        raise ValueError("index series must match config.length")
    beta = np.asarray(config.true_mean_coefficients, dtype=float)
    alphas = np.asarray(config.true_alphas, dtype=float)
    gammas = np.asarray(config.true_gammas, dtype=float)
    alpha0 = float(config.true_alpha0)
    q, p = alphas.shape[0], gammas.shape[0]
    uncond = alpha0 / (1.0 - alphas.sum() - gammas.sum()) if q + p else alpha0

    rng = np.random.default_rng(config.seed)
    z = rng.standard_normal(T)
    h = np.empty(T)
    eps = np.empty(T)
    for t in range(T):
        if t == 0 and q + p:
            ht = uncond
        else:
            ht = alpha0
            for j in range(1, q + 1):
                ht += alphas[j - 1] * (eps[t - j] ** 2 if t - j >= 0 else uncond)
            for k in range(1, p + 1):
                ht += gammas[k - 1] * (h[t - k] if t - k >= 0 else uncond)
        h[t] = ht
        eps[t] = np.sqrt(ht) * z[t]

    X = np.column_stack([np.ones(T), loc, us])
    if isinstance(local_index, ReturnSeries):
        dates = local_index.dates
    else:
        grid = np.busday_offset(np.datetime64("2001-01-01"), np.arange(T), roll="forward")
        dates = tuple(grid.astype("datetime64[D]").tolist())
    return ReturnSeries(instrument_id=config.instrument_id, dates=dates, values=X @ beta + eps)


def unconditional_variance(fit: GarchFit) -> float:
    """Long-run error variance alpha0 / (1 - sum(alphas) - sum(gammas))."""
    return fit.alpha0 / (1.0 - fit.persistence)
