"""OLS market-model estimation, autocorrelation diagnostics, CAPM, and the
out-of-sample forecast standard error used to standardize abnormal returns."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import (
    AllZeroResiduals,
    ExactFitNoVariance,
    RankDeficient,
    TooFewObservations,
    TooManyLags,
)

# Exact fits are detected relative to the scale of y; below this the residual
# variance is reported as exactly 0 and standardization downstream is refused.
_EXACT_FIT_RTOL = 1e-12

DW_POSITIVE_THRESHOLD = 1.5
DW_NEGATIVE_THRESHOLD = 2.5


@dataclass(frozen=True)
class OlsFit:
    """Least-squares fit of y on an intercept plus the given regressors.

    `xtx_inverse` is the inverse Gram matrix of the intercept-augmented
    design, kept for forecast-error variances; `s2` is the residual
    variance with divisor n - k (k = regressors incl. intercept).
    """

    alpha: float
    betas: np.ndarray
    residuals: np.ndarray
    s2: float
    r_squared: float
    n_obs: int
    regressor_means: np.ndarray
    xtx_inverse: np.ndarray

    @property
    def coefficients(self) -> np.ndarray:
        """Intercept-first coefficient vector."""
        return np.concatenate([[self.alpha], self.betas])

    @property
    def std_errors(self) -> np.ndarray:
        return np.sqrt(self.s2 * np.diag(self.xtx_inverse))

    @property
    def t_stats(self) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.coefficients / self.std_errors


@dataclass(frozen=True)
class BreuschGodfreyResult:
    """LM test of serial correlation in regression residuals."""

    lm_statistic: float
    lags: int
    p_value: float


@dataclass(frozen=True)
class DiagnosticsReport:
    dw_statistic: float
    dw_assessment: str
    bg_lm_statistic: float
    bg_lags: int
    bg_p_value: float
    heteroskedastic_5pct: bool


@dataclass(frozen=True)
class CapmResult:
    beta: float
    risk_free: float
    market_mean: float
    expected_return: float


def ols_fit(y, regressors) -> OlsFit:
    """Fit y = a + X b + e by least squares.

    `regressors` is a list of equal-length vectors (no intercept column;
    one is prepended).  Raises TooFewObservations unless n exceeds the
    number of columns, and RankDeficient if the augmented design does not
    have full column rank.
    """
    y = np.asarray(y, dtype=float).ravel()
    cols = [np.asarray(r, dtype=float).ravel() for r in regressors]
    n = y.shape[0]
    for c in cols:
        if c.shape[0] != n:
            raise ValueError("all regressors must have the same length as y")
    X = np.column_stack([np.ones(n)] + cols)
    k = X.shape[1]
    if n <= k:
        raise TooFewObservations(f"need more than {k} observations, got {n}")
    if np.linalg.matrix_rank(X) < k:
        raise RankDeficient("intercept-augmented regressor matrix is rank deficient")
    coef, _, _, _ = np.linalg.lstsq(X, y, rcond=None)
    residuals = y - X @ coef
    rss = float(residuals @ residuals)
    exact_tol = (_EXACT_FIT_RTOL * max(1.0, float(np.linalg.norm(y)))) ** 2
    s2 = 0.0 if rss <= exact_tol else rss / (n - k)
    tss = float(np.sum((y - y.mean()) ** 2))
    if tss > 0.0:
        r_squared = 1.0 - rss / tss
    else:
        r_squared = 1.0 if s2 == 0.0 else 0.0
    gram = X.T @ X
    xtx_inverse = np.linalg.inv(gram)

    # orthogonality is a structural identity of least squares; a violation
    # means numerical failure upstream, not a data problem
    scale = np.linalg.norm(X, axis=0) * np.linalg.norm(residuals)
    if np.any(np.abs(X.T @ residuals) > 1e-8 * np.maximum(scale, 1.0)):
        raise RuntimeError("least-squares residuals are not orthogonal to the design")

    return OlsFit(
        alpha=float(coef[0]),
        betas=coef[1:],
        residuals=residuals,
        s2=s2,
        r_squared=float(r_squared),
        n_obs=n,
        regressor_means=X[:, 1:].mean(axis=0),
        xtx_inverse=xtx_inverse,
    )


def durbin_watson(residuals) -> float:
    """DW = sum((e_t - e_{t-1})^2) / sum(e_t^2); always in [0, 4]."""
    e = np.asarray(residuals, dtype=float).ravel()
    if e.shape[0] < 2:
        raise ValueError(f"need >= 2 residuals, got {e.shape[0]}")
    denom = float(e @ e)
    if denom == 0.0:
        raise AllZeroResiduals("Durbin-Watson is undefined for all-zero residuals")
    return float(np.sum(np.diff(e) ** 2) / denom)


def classify_durbin_watson(dw: float) -> str:
    """Informal reading of the statistic; exact critical values are not tabulated."""
    if dw < DW_POSITIVE_THRESHOLD:
        return "positive autocorrelation suspected"
    if dw > DW_NEGATIVE_THRESHOLD:
        return "negative autocorrelation suspected"
    return "none"


def breusch_godfrey(fit: OlsFit, regressors, lags: int = 1) -> BreuschGodfreyResult:
    """LM serial-correlation test on the residuals of `fit`.

    Regresses the residuals on the original regressors plus `lags` lagged
    residuals (zero-padded at the sample start), then LM = n * R^2 of the
    auxiliary regression, referred to chi-squared with `lags` dof.
    """
    if lags < 1:
        raise ValueError(f"lags must be >= 1, got {lags}")
    cols = [np.asarray(r, dtype=float).ravel() for r in regressors]
    e = fit.residuals
    n = fit.n_obs
    if lags >= n - len(cols) - 1:
        raise TooManyLags(f"lags {lags} too large for {n} observations and {len(cols)} regressors")
    if fit.s2 == 0.0 or float(e @ e) == 0.0:
        raise AllZeroResiduals("Breusch-Godfrey is undefined for (numerically) zero residuals")
    lagged = []
    for ell in range(1, lags + 1):
        col = np.zeros(n)
        col[ell:] = e[:-ell]
        lagged.append(col)
    aux = ols_fit(e, cols + lagged)
    lm = n * aux.r_squared
    return BreuschGodfreyResult(
        lm_statistic=float(lm),
        lags=lags,
        p_value=float(stats.chi2.sf(lm, lags)),
    )


def diagnostics_report(fit: OlsFit, regressors, lags: int = 1) -> DiagnosticsReport:
    dw = durbin_watson(fit.residuals)
    bg = breusch_godfrey(fit, regressors, lags)
    return DiagnosticsReport(
        dw_statistic=dw,
        dw_assessment=classify_durbin_watson(dw),
        bg_lm_statistic=bg.lm_statistic,
        bg_lags=bg.lags,
        bg_p_value=bg.p_value,
        heteroskedastic_5pct=bg.p_value < 0.05,
    )


def capm_expected_return(beta: float, risk_free: float, market_mean: float) -> CapmResult:
    """E(R) = R_f + beta * (R_market - R_f), all rates per period."""
    if not all(math.isfinite(v) for v in (beta, risk_free, market_mean)):
        raise ValueError("beta, risk_free, and market_mean must be finite")
    return CapmResult(
        beta=beta,
        risk_free=risk_free,
        market_mean=market_mean,
        expected_return=risk_free + beta * (market_mean - risk_free),
    )


def prediction_se(fit: OlsFit, new_row, window_length: int | None = None) -> float:
    """Out-of-sample forecast standard error at the regressor row `new_row`.

    sqrt(s2 * (1 + x'(X'X)^{-1}x)) with x intercept-augmented; this is the
    day-specific scale used to standardize abnormal returns.  When given,
    `window_length` must equal the length of the estimation sample.
    """
    if fit.s2 == 0.0:
        raise ExactFitNoVariance("forecast standard error undefined for an exact fit")
    row = np.asarray(new_row, dtype=float).ravel()
    if row.shape[0] != fit.betas.shape[0]:
        raise ValueError(f"new_row must have {fit.betas.shape[0]} entries, got {row.shape[0]}")
    if window_length is not None and window_length != fit.n_obs:
        raise ValueError(
            f"window_length {window_length} does not match the fit's {fit.n_obs} observations"
        )
    x = np.concatenate([[1.0], row])
    return float(np.sqrt(fit.s2 * (1.0 + x @ fit.xtx_inverse @ x)))
