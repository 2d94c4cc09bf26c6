"""Cross-listing analysis toolkit.

Loads and aligns dual-listing market data, estimates CAPM and two-index
market models (OLS or GARCH maximum likelihood), and runs listing-date
event studies with standardized abnormal returns and variance-ratio tests.
"""

from . import errors
from .event_study import (
    EventPanelResult,
    EventWindows,
    FirmEventResult,
    OffsetRange,
    VarianceRatioReport,
    VarianceRatioRow,
    abnormal_returns,
    aggregate,
    cap_weights,
    standardize,
    study_firm,
    variance_ratio_report,
    window_values,
)
from .garch import (
    GarchFit,
    GarchSimConfig,
    GarchSpec,
    fit_garch_market_model,
    select_lags,
    simulate_garch,
    unconditional_variance,
)
from .linear_models import (
    BreuschGodfreyResult,
    CapmResult,
    DiagnosticsReport,
    OlsFit,
    breusch_godfrey,
    capm_expected_return,
    classify_durbin_watson,
    diagnostics_report,
    durbin_watson,
    ols_fit,
    prediction_se,
)
from .market_data import (
    AlignedPanel,
    Currency,
    EventFrame,
    InstrumentRecord,
    PriceSeries,
    RateSeries,
    align,
    build_event_frame,
    convert_to_usd,
    load_fx,
    load_manifest,
    load_prices,
    load_risk_free,
    write_prices,
)
from .stats_core import (
    FTestResult,
    ReturnSeries,
    log_returns,
    rolling_volatility,
    variance_f_test,
)

__version__ = "0.1.0"

__all__ = [
    "AlignedPanel",
    "BreuschGodfreyResult",
    "CapmResult",
    "Currency",
    "DiagnosticsReport",
    "EventFrame",
    "EventPanelResult",
    "EventWindows",
    "FTestResult",
    "FirmEventResult",
    "GarchFit",
    "GarchSimConfig",
    "GarchSpec",
    "InstrumentRecord",
    "OffsetRange",
    "OlsFit",
    "PriceSeries",
    "RateSeries",
    "ReturnSeries",
    "VarianceRatioReport",
    "VarianceRatioRow",
    "abnormal_returns",
    "aggregate",
    "align",
    "breusch_godfrey",
    "build_event_frame",
    "cap_weights",
    "capm_expected_return",
    "classify_durbin_watson",
    "convert_to_usd",
    "diagnostics_report",
    "durbin_watson",
    "errors",
    "fit_garch_market_model",
    "load_fx",
    "load_manifest",
    "load_prices",
    "load_risk_free",
    "log_returns",
    "ols_fit",
    "prediction_se",
    "rolling_volatility",
    "select_lags",
    "simulate_garch",
    "standardize",
    "study_firm",
    "unconditional_variance",
    "variance_f_test",
    "variance_ratio_report",
    "window_values",
    "write_prices",
]
