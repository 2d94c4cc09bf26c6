"""Batch front-end: validate data bundles, run the CAPM comparison, run the
event study, and generate synthetic bundles.

Commands are deterministic given (config, seed): repeated runs write
byte-identical CSV and JSON reports.  Exit codes: 0 success, 1 analysis
failed (e.g. every firm skipped), 2 input or configuration error.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import json
import math
import sys
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import market_data
from .errors import CrosslistError
from .event_study import (
    EventWindows,
    OffsetRange,
    Z_CRITICAL_5PCT,
    aggregate,
    cap_weights,
    study_firm,
    variance_ratio_report,
)
from .garch import GarchSimConfig, GarchSpec, MAX_VARIANCE_LAGS, simulate_garch
from .linear_models import (
    capm_expected_return,
    classify_durbin_watson,
    diagnostics_report,
    durbin_watson,
    ols_fit,
)
from .market_data import Currency, PriceSeries, align, build_event_frame
from .stats_core import ReturnSeries

PERIODS_PER_YEAR = {"monthly": 12, "daily": 252}

CAPM_CSV_HEADER = (
    "class,alpha,alpha_se,alpha_t,beta,beta_se,beta_t,dw,expected_return"
)
EVENT_CSV_HEADER = "offset,aar,car,z,significant"
VARIANCE_CSV_HEADER = "firm,ratio,f_stat,p_value,significant"
COEFFICIENTS_CSV_HEADER = "code,r_const,r_sse,r_nyse,arch_lags,garch_lags,weight"


class ConfigError(CrosslistError):
    pass


@dataclass
class RunConfig:
    """Everything a command needs, resolved from the config file and flags."""

    config_dir: Path
    manifest_path: Path | None = None
    local_index_path: Path | None = None
    us_index_path: Path | None = None
    fx_path: Path | None = None
    local_risk_free_path: Path | None = None
    us_risk_free_path: Path | None = None
    capm_a_prices: Path | None = None
    capm_n_prices: Path | None = None
    period: str = "daily"
    windows: EventWindows = EventWindows()
    max_p: int = 1
    max_q: int = 1
    seed: int = 0
    output_dir: Path = Path("out")
    sim_firms: int = 10
    sim_days: int = 300
    sim_effect: float = 0.0


def _parse_range(text: str, key: str) -> OffsetRange:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise ConfigError(f"{key} must be 'lo,hi', got {text!r}")
    try:
        return OffsetRange(int(parts[0]), int(parts[1]))
    except ValueError as exc:
        raise ConfigError(f"{key}: {exc}") from None


def load_config(path: str | Path) -> RunConfig:
    """Parse the flat sectioned key=value config file."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    parser = configparser.ConfigParser()
    try:
        parser.read(path, encoding="utf-8")
    except configparser.Error as exc:
        raise ConfigError(f"{path}: {exc}") from None

    base = path.parent

    def _path(section: str, key: str) -> Path | None:
        raw = parser.get(section, key, fallback="").strip()
        return (base / raw) if raw else None

    windows_kwargs = {}
    for key in ("estimation", "event", "pre_var", "post_var"):
        raw = parser.get("windows", key, fallback="").strip()
        if raw:
            windows_kwargs[key] = _parse_range(raw, f"windows.{key}")
    try:
        windows = EventWindows(**windows_kwargs)
        config = RunConfig(
            config_dir=base,
            manifest_path=_path("data", "manifest"),
            local_index_path=_path("data", "local_index"),
            us_index_path=_path("data", "us_index"),
            fx_path=_path("data", "fx"),
            local_risk_free_path=_path("data", "local_risk_free"),
            us_risk_free_path=_path("data", "us_risk_free"),
            capm_a_prices=_path("capm", "a_prices"),
            capm_n_prices=_path("capm", "n_prices"),
            period=parser.get("capm", "period", fallback="daily").strip(),
            windows=windows,
            max_p=parser.getint("garch", "max_p", fallback=1),
            max_q=parser.getint("garch", "max_q", fallback=1),
            seed=parser.getint("run", "seed", fallback=0),
            output_dir=base / parser.get("run", "output_dir", fallback="out").strip(),
            sim_firms=parser.getint("simulate", "firms", fallback=10),
            sim_days=parser.getint("simulate", "days", fallback=300),
            sim_effect=parser.getfloat("simulate", "effect", fallback=0.0),
        )
    except (ValueError, configparser.Error) as exc:
        raise ConfigError(f"{path}: {exc}") from None
    if config.period not in PERIODS_PER_YEAR:
        raise ConfigError(f"capm period must be one of {sorted(PERIODS_PER_YEAR)}, got {config.period!r}")
    if not (1 <= config.max_p <= MAX_VARIANCE_LAGS and 1 <= config.max_q <= MAX_VARIANCE_LAGS):
        raise ConfigError(f"garch max_p/max_q must be in [1, {MAX_VARIANCE_LAGS}]")
    return config


def _fmt(value) -> str:
    """Report numbers at nine significant digits with a decimal point."""
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return format(value, ".9g")
    return str(value)


def _write_csv(path: Path, header: str, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header.split(","))
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _say(message: str) -> None:
    print(message)


def _warn(message: str) -> None:
    print(message, file=sys.stderr)


# --------------------------------------------------------------------------
# validate
# --------------------------------------------------------------------------

def cmd_validate(config: RunConfig) -> int:
    """Check every configured file: schema, row counts, date ranges, alignment."""
    problems = 0

    def _describe_prices(label: str, path: Path) -> PriceSeries | None:
        nonlocal problems
        if not path.exists():
            _warn(f"error: {label}: file not found: {path}")
            problems += 1
            return None
        try:
            series = market_data.load_prices(path, Currency.OTHER)
        except CrosslistError as exc:
            _warn(f"error: {label}: {exc}")
            problems += 1
            return None
        _say(
            f"{label}: {len(series)} rows, "
            f"{series.dates[0].isoformat()}..{series.dates[-1].isoformat()}"
        )
        return series

    records = []
    if config.manifest_path is not None:
        if not config.manifest_path.exists():
            _warn(f"error: manifest: file not found: {config.manifest_path}")
            problems += 1
        else:
            try:
                records = market_data.load_manifest(config.manifest_path)
                _say(f"manifest: {len(records)} instruments")
                if not records:
                    _warn("warning: no instruments in manifest")
            except CrosslistError as exc:
                _warn(f"error: manifest: {exc}")
                problems += 1

    indexes: list[PriceSeries] = []
    for label, path in (("local_index", config.local_index_path), ("us_index", config.us_index_path)):
        if path is not None:
            series = _describe_prices(label, path)
            if series is not None:
                indexes.append(series)

    for rec in records:
        path = config.manifest_path.parent / rec.price_file
        series = _describe_prices(f"prices[{rec.n_code}]", path)
        if series is not None and len(indexes) == 2:
            try:
                panel = align([series] + indexes)
                lost = len(series) - len(panel.common_dates)
                _say(f"alignment[{rec.n_code}]: {len(panel.common_dates)} common dates (lost {lost})")
            except CrosslistError as exc:
                _warn(f"error: alignment[{rec.n_code}]: {exc}")
                problems += 1

    for label, path in (
        ("fx", config.fx_path),
        ("local_risk_free", config.local_risk_free_path),
        ("us_risk_free", config.us_risk_free_path),
    ):
        if path is None:
            continue
        if not path.exists():
            _warn(f"error: {label}: file not found: {path}")
            problems += 1
            continue
        try:
            loader = market_data.load_fx if label == "fx" else market_data.load_risk_free
            rates = loader(path)
            _say(f"{label}: {len(rates.dates)} rows")
        except CrosslistError as exc:
            _warn(f"error: {label}: {exc}")
            problems += 1

    if problems:
        _warn(f"validation failed: {problems} problem(s)")
        return 2
    _say("validation ok")
    return 0


# --------------------------------------------------------------------------
# capm
# --------------------------------------------------------------------------

def _mean_annual_yield_as_period_rate(path: Path, period: str) -> float:
    rates = market_data.load_risk_free(path)
    return float(np.mean(rates.values)) / 100.0 / PERIODS_PER_YEAR[period]


def _capm_class_row(label: str, prices_path: Path, index_path: Path, rf_path: Path | None,
                    period: str) -> list:
    if rf_path is None:
        raise ConfigError(f"class {label}: no risk-free series configured")
    stock = replace(market_data.load_prices(prices_path, Currency.OTHER), instrument_id="stock")
    index = replace(market_data.load_prices(index_path, Currency.OTHER), instrument_id="index")
    panel = align([stock, index])
    closes = panel.series_by_id
    y = np.diff(np.log(closes["stock"]))
    x = np.diff(np.log(closes["index"]))
    fit = ols_fit(y, [x])
    if fit.s2 == 0.0:
        dw = float("nan")  # exact fit: the statistic is 0/0
    else:
        try:
            dw = durbin_watson(fit.residuals)
        except CrosslistError:
            dw = float("nan")
    rf = _mean_annual_yield_as_period_rate(rf_path, period)
    market_mean = float(np.mean(x))
    capm = capm_expected_return(float(fit.betas[0]), rf, market_mean)
    se = fit.std_errors
    t = fit.t_stats
    return [
        label,
        fit.alpha, float(se[0]), float(t[0]),
        float(fit.betas[0]), float(se[1]), float(t[1]),
        dw,
        capm.expected_return,
    ]


def cmd_capm(config: RunConfig) -> int:
    """Estimate the market model and CAPM expected return per share class."""
    classes = []
    if config.capm_a_prices is not None:
        classes.append(("A", config.capm_a_prices, config.local_index_path, config.local_risk_free_path))
    if config.capm_n_prices is not None:
        classes.append(("N", config.capm_n_prices, config.us_index_path, config.us_risk_free_path))
    if not classes:
        _warn("error: no capm classes configured (set capm a_prices and/or n_prices)")
        return 2

    rows = []
    for label, prices_path, index_path, rf_path in classes:
        if index_path is None:
            _warn(f"class {label} skipped: no index series configured")
            continue
        try:
            rows.append(_capm_class_row(label, prices_path, index_path, rf_path, config.period))
        except (CrosslistError, OSError) as exc:
            _warn(f"class {label} skipped: {exc}")
    if not rows:
        _warn("capm failed: every class was skipped")
        return 1

    config.output_dir.mkdir(parents=True, exist_ok=True)
    out = config.output_dir / "capm.csv"
    _write_csv(out, CAPM_CSV_HEADER, rows)
    _say(f"{len(rows)} class(es) -> {out}")
    _say(
        f"rates are per {config.period} period; "
        f"market mean is the sample mean of index returns over the sample"
    )
    for row in rows:
        dw_note = classify_durbin_watson(row[7]) if not math.isnan(row[7]) else "undefined"
        _say(f"class {row[0]}: beta={_fmt(row[4])} dw={_fmt(row[7])} ({dw_note})")
    return 0


# --------------------------------------------------------------------------
# event-study
# --------------------------------------------------------------------------

def _event_offsets(frame, return_dates) -> np.ndarray:
    return np.array([frame.day_index[d] for d in return_dates])


def cmd_event_study(config: RunConfig) -> int:
    """Run the full pipeline over the manifest and write the four reports."""
    if config.manifest_path is None or config.local_index_path is None or config.us_index_path is None:
        _warn("error: event-study needs manifest, local_index, and us_index configured")
        return 2
    try:
        records = market_data.load_manifest(config.manifest_path)
        local_prices = market_data.load_prices(config.local_index_path, Currency.OTHER)
        us_prices = market_data.load_prices(config.us_index_path, Currency.USD)
        fx = market_data.load_fx(config.fx_path) if config.fx_path else None
    except (CrosslistError, OSError) as exc:
        _warn(f"error: {exc}")
        return 2
    if not records:
        _warn("event-study failed: manifest has no instruments")
        return 1

    windows = config.windows
    needed = OffsetRange(
        min(windows.estimation.lo, windows.pre_var.lo, windows.event.lo),
        max(windows.event.hi, windows.post_var.hi),
    )

    firm_results = []
    firm_returns_for_variance = {}
    skipped: dict[str, str] = {}
    diagnostics: dict[str, dict] = {}
    analyzed: list[str] = []

    for rec in records:
        firm_id = rec.n_code
        try:
            prices = market_data.load_prices(
                config.manifest_path.parent / rec.price_file, Currency.CNY
            )
            if fx is not None:
                prices = market_data.convert_to_usd(prices, fx)
            panel = align([prices, local_prices, us_prices])
            frame = build_event_frame(panel, rec.us_listing_date)
            closes = panel.series_by_id
            ret_dates = panel.common_dates[1:]
            returns = np.diff(np.log(closes[prices.instrument_id]))
            loc_ret = np.diff(np.log(closes[local_prices.instrument_id]))
            us_ret = np.diff(np.log(closes[us_prices.instrument_id]))
            offsets = _event_offsets(frame, ret_dates)
            if offsets.min() > needed.lo or offsets.max() < needed.hi:
                raise CrosslistError(
                    f"coverage [{offsets.min()}, {offsets.max()}] does not span "
                    f"[{needed.lo}, {needed.hi}]"
                )
            result = study_firm(
                firm_id, returns, loc_ret, us_ret, offsets, windows,
                weight=1.0, max_p=config.max_p, max_q=config.max_q,
            )
            est_mask = (offsets >= windows.estimation.lo) & (offsets <= windows.estimation.hi)
            diag = diagnostics_report(
                ols_fit(returns[est_mask], [loc_ret[est_mask], us_ret[est_mask]]),
                [loc_ret[est_mask], us_ret[est_mask]],
            )
            diagnostics[firm_id] = {
                "dw": diag.dw_statistic,
                "bg_p_value": diag.bg_p_value,
                "heteroskedastic_5pct": diag.heteroskedastic_5pct,
                "converged": result.fit.converged,
            }
            firm_results.append(result)
            firm_returns_for_variance[firm_id] = (returns, offsets)
            analyzed.append(firm_id)
        except (CrosslistError, OSError) as exc:
            skipped[firm_id] = str(exc)
            _warn(f"firm {firm_id} skipped: {exc}")

    if not firm_results:
        _warn("event-study failed: every firm was skipped")
        return 1

    weights = cap_weights(records, analyzed)
    firm_results = [replace(res, weight=weights[res.firm_id]) for res in firm_results]
    panel_result = aggregate(firm_results, windows)
    var_report = variance_ratio_report(firm_returns_for_variance, windows)

    config.output_dir.mkdir(parents=True, exist_ok=True)

    coef_rows = []
    for res in firm_results:
        coef = res.fit.mean_coefficients
        coef_rows.append([
            res.firm_id,
            float(coef[0]), float(coef[1]), float(coef[2]),
            res.fit.alphas.shape[0], res.fit.gammas.shape[0],
            res.weight,
        ])
    _write_csv(config.output_dir / "coefficients.csv", COEFFICIENTS_CSV_HEADER, coef_rows)

    event_rows = []
    for i, offset in enumerate(panel_result.offsets):
        z = float(panel_result.z[i])
        event_rows.append([
            int(offset),
            float(panel_result.aar[i]),
            float(panel_result.car[i]),
            z,
            "true" if (math.isfinite(z) and abs(z) > Z_CRITICAL_5PCT) else "false",
        ])
    _write_csv(config.output_dir / "event.csv", EVENT_CSV_HEADER, event_rows)

    variance_rows = []
    for row in var_report.rows:
        if row.error is not None:
            variance_rows.append([row.firm_id, "nan", "nan", "nan", "error"])
        else:
            variance_rows.append([
                row.firm_id,
                float(row.ratio),
                float(row.f_result.ratio),
                float(row.f_result.p_value),
                "true" if row.f_result.significant_5pct else "false",
            ])
    _write_csv(config.output_dir / "variance.csv", VARIANCE_CSV_HEADER, variance_rows)

    day0 = int(np.where(panel_result.offsets == 0)[0][0])
    summary = {
        "n_firms_analyzed": len(analyzed),
        "n_firms_skipped": len(skipped),
        "skipped": skipped,
        "currency_mode": "usd" if fx is not None else "local-currency",
        "day0_aar": float(panel_result.aar[day0]),
        "day0_z": float(panel_result.z[day0]),
        "day0_significant_5pct": bool(abs(panel_result.z[day0]) > Z_CRITICAL_5PCT),
        "cz_full_window": panel_result.cz_full_window,
        "car_full_window": float(panel_result.car[-1]),
        "windows": {
            "estimation": [windows.estimation.lo, windows.estimation.hi],
            "event": [windows.event.lo, windows.event.hi],
            "pre_var": [windows.pre_var.lo, windows.pre_var.hi],
            "post_var": [windows.post_var.lo, windows.post_var.hi],
        },
        "diagnostics": diagnostics,
    }
    with open(config.output_dir / "summary.json", "w", encoding="utf-8") as f:
        json.dump(summary, f, indent=2, sort_keys=True)
        f.write("\n")

    _say(
        f"{len(analyzed)} firm(s) analyzed, {len(skipped)} skipped -> "
        f"{config.output_dir}/{{coefficients,event,variance}}.csv, summary.json"
    )
    return 0


# --------------------------------------------------------------------------
# simulate
# --------------------------------------------------------------------------

_INDUSTRIES = ("Energy", "Transport", "Utilities", "Insurance", "Materials", "Telecom")


def _business_dates(n_days: int) -> tuple:
    grid = np.busday_offset(np.datetime64("2006-01-02"), np.arange(n_days), roll="forward")
    return tuple(grid.astype("datetime64[D]").tolist())


def _prices_from_returns(first_close: float, returns: np.ndarray) -> np.ndarray:
    return first_close * np.exp(np.concatenate([[0.0], np.cumsum(returns)]))


def generate_bundle(out_dir: Path, n_firms: int, n_days: int, effect: float, seed: int) -> None:
    """Write a synthetic manifest + index and firm price CSVs under out_dir.

    Firms follow the two-index market model with GARCH(1,1) errors; `effect`
    is added to each firm's return on its listing day.  Byte-identical for
    a fixed seed.
    """
    if n_days < 3:
        raise ConfigError(f"need at least 3 days, got {n_days}")
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)
    dates = _business_dates(n_days)
    n_returns = n_days - 1

    loc_ret = 0.0002 + 0.012 * rng.standard_normal(n_returns)
    us_ret = 0.0002 + 0.010 * rng.standard_normal(n_returns)
    market_data.write_prices(
        PriceSeries("sse", dates, _prices_from_returns(100.0, loc_ret), Currency.CNY),
        out_dir / "sse.csv",
    )
    market_data.write_prices(
        PriceSeries("nyse", dates, _prices_from_returns(100.0, us_ret), Currency.USD),
        out_dir / "nyse.csv",
    )
    loc_series = ReturnSeries("sse", dates[1:], loc_ret)
    us_series = ReturnSeries("nyse", dates[1:], us_ret)

    lo = min(max(106, 1), n_days - 1)
    hi = max(n_days - 106, lo)
    manifest_rows = []
    for i in range(n_firms):
        n_code = f"F{i:02d}"
        beta = (float(rng.normal(0.0, 2e-4)), float(rng.uniform(0.4, 1.2)), float(rng.uniform(0.1, 0.6)))
        sigma = float(rng.uniform(0.012, 0.025))
        alpha1, gamma1 = 0.08, 0.85
        alpha0 = sigma**2 * (1.0 - alpha1 - gamma1)
        event_idx = int(rng.integers(lo, hi + 1))
        sim = simulate_garch(
            GarchSimConfig(
                spec=GarchSpec(1, 1),
                true_mean_coefficients=beta,
                true_alpha0=alpha0,
                true_alphas=(alpha1,),
                true_gammas=(gamma1,),
                length=n_returns,
                seed=int(rng.integers(0, 2**63)),
                instrument_id=n_code,
            ),
            loc_series,
            us_series,
        )
        returns = sim.values.copy()
        returns[event_idx - 1] += effect
        price_file = f"prices_{n_code}.csv"
        market_data.write_prices(
            PriceSeries(n_code, dates, _prices_from_returns(50.0, returns), Currency.CNY),
            out_dir / price_file,
        )
        manifest_rows.append([
            f"Firm {i:02d}",
            str(600100 + i),
            n_code,
            _INDUSTRIES[i % len(_INDUSTRIES)],
            repr(float(rng.uniform(2e9, 2.4e11))),
            dates[event_idx].isoformat(),
            dates[0].isoformat(),
            price_file,
        ])

    with open(out_dir / "manifest.csv", "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(market_data.MANIFEST_COLUMNS)
        writer.writerows(manifest_rows)

    run_ini = (
        "[data]\n"
        "manifest = manifest.csv\n"
        "local_index = sse.csv\n"
        "us_index = nyse.csv\n"
        "\n"
        "[garch]\n"
        "max_p = 1\n"
        "max_q = 1\n"
        "\n"
        "[run]\n"
        f"seed = {seed}\n"
        "output_dir = reports\n"
    )
    (out_dir / "run.ini").write_text(run_ini, encoding="utf-8")


def cmd_simulate(config: RunConfig) -> int:
    """Write a synthetic data bundle into the output directory."""
    try:
        generate_bundle(
            config.output_dir, config.sim_firms, config.sim_days, config.sim_effect, config.seed
        )
    except (ConfigError, OSError) as exc:
        _warn(f"error: {exc}")
        return 2
    _say(
        f"wrote {config.sim_firms} firm file(s), 2 index files, manifest.csv, run.ini "
        f"-> {config.output_dir}"
    )
    return 0


# --------------------------------------------------------------------------
# entry point
# --------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crosslist",
        description="Cross-listing analysis: data validation, CAPM, event study, simulation.",
    )
    parser.add_argument("command", choices=["validate", "capm", "event-study", "simulate"])
    parser.add_argument("--config", help="path to the run configuration file")
    parser.add_argument("--seed", type=int, help="override the configured seed")
    parser.add_argument("--out", help="override the configured output directory")
    parser.add_argument(
        "--windows",
        help="override event windows as est_lo,est_hi,ev_lo,ev_hi "
        "(variance windows become the estimation range and its mirror)",
    )
    parser.add_argument("--max-lags", help="override the lag search ceiling as p,q")
    return parser


def _apply_overrides(config: RunConfig, args: argparse.Namespace) -> RunConfig:
    if args.seed is not None:
        config.seed = args.seed
    if args.out is not None:
        config.output_dir = Path(args.out)
    if args.windows is not None:
        parts = [p.strip() for p in args.windows.split(",")]
        if len(parts) != 4:
            raise ConfigError(f"--windows must be four integers, got {args.windows!r}")
        try:
            a, b, c, d = (int(p) for p in parts)
            config.windows = EventWindows(
                estimation=OffsetRange(a, b),
                event=OffsetRange(c, d),
                pre_var=OffsetRange(a, b),
                post_var=OffsetRange(-b, -a),
            )
        except ValueError as exc:
            raise ConfigError(f"--windows: {exc}") from None
    if args.max_lags is not None:
        parts = [p.strip() for p in args.max_lags.split(",")]
        if len(parts) != 2:
            raise ConfigError(f"--max-lags must be p,q, got {args.max_lags!r}")
        try:
            config.max_p, config.max_q = int(parts[0]), int(parts[1])
        except ValueError:
            raise ConfigError(f"--max-lags must be integers, got {args.max_lags!r}") from None
        if not (1 <= config.max_p <= MAX_VARIANCE_LAGS and 1 <= config.max_q <= MAX_VARIANCE_LAGS):
            raise ConfigError(f"--max-lags values must be in [1, {MAX_VARIANCE_LAGS}]")
    return config


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.config is not None:
            config = load_config(args.config)
        else:
            config = RunConfig(config_dir=Path.cwd(), output_dir=Path.cwd() / "out")
        config = _apply_overrides(config, args)
    except ConfigError as exc:
        _warn(f"error: {exc}")
        return 2

    commands = {
        "validate": cmd_validate,
        "capm": cmd_capm,
        "event-study": cmd_event_study,
        "simulate": cmd_simulate,
    }
    try:
        return commands[args.command](config)
    except ConfigError as exc:
        _warn(f"error: {exc}")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
