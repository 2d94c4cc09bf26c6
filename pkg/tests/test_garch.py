"""GARCH market-model estimation, lag selection, and the simulation oracle."""

import numpy as np
import pytest

from crosslist.errors import NonStationaryParameters, SeriesTooShort
from crosslist.garch import (
    GarchFit,
    GarchSimConfig,
    GarchSpec,
    _conditional_variances,
    _gaussian_loglik,
    fit_garch_market_model,
    select_lags,
    simulate_garch,
    unconditional_variance,
)
from crosslist.linear_models import ols_fit


def make_indexes(rng, n):
    return 0.01 * rng.standard_normal(n), 0.01 * rng.standard_normal(n)


def sim_config(n, seed, alpha0=4e-5, alphas=(0.1,), gammas=(0.8,), beta=(0.0002, 0.6, 0.3)):
    return GarchSimConfig(
        spec=GarchSpec(p=len(gammas), q=len(alphas)),
        true_mean_coefficients=beta,
        true_alpha0=alpha0,
        true_alphas=alphas,
        true_gammas=gammas,
        length=n,
        seed=seed,
    )


class TestConditionalVariances:
    def test_matches_naive_recursion(self):
        # independent oracle: the textbook loop, lag by lag
        def naive(eps, a0, alphas, gammas, h0):
            T = eps.shape[0]
            q, p = len(alphas), len(gammas)
            if p == 0 and q == 0:
                return np.full(T, a0)
            h = np.empty(T)
            for t in range(T):
                if t == 0:
                    h[t] = h0
                    continue
                v = a0
                for j in range(1, q + 1):
                    v += alphas[j - 1] * (eps[t - j] ** 2 if t - j >= 0 else h0)
                for k in range(1, p + 1):
                    v += gammas[k - 1] * (h[t - k] if t - k >= 0 else h0)
                h[t] = v
            return h

        rng = np.random.default_rng(2)
        for p in range(3):
            for q in range(3):
                alphas = [0.06, 0.03][:q]
                gammas = [0.65, 0.1][:p]
                eps = rng.standard_normal(64)
                got = _conditional_variances(eps, 0.25, alphas, gammas, 1.4)
                np.testing.assert_allclose(got, naive(eps, 0.25, alphas, gammas, 1.4), rtol=1e-12)

    def test_positive_for_stationary_parameters(self):
        rng = np.random.default_rng(3)
        eps = rng.standard_normal(200)
        h = _conditional_variances(eps, 1e-6, [0.1], [0.85], 0.5)
        assert np.all(h > 0)


class TestDegenerateSpec:
    def test_matches_homoskedastic_mle(self):
        rng = np.random.default_rng(5)
        loc, us = make_indexes(rng, 400)
        y = 0.0003 + 0.5 * loc + 0.2 * us + 0.02 * rng.standard_normal(400)
        fit = fit_garch_market_model(y, loc, us, GarchSpec(0, 0))
        base = ols_fit(y, [loc, us])
        np.testing.assert_allclose(fit.mean_coefficients, base.coefficients, rtol=1e-6)
        rss = float(base.residuals @ base.residuals)
        sigma2 = rss / 400
        assert fit.alpha0 == pytest.approx(sigma2, rel=1e-12)
        expected_ll = -400 / 2 * (np.log(2 * np.pi) + np.log(sigma2) + 1.0)
        assert fit.log_likelihood == pytest.approx(expected_ll, rel=1e-12)
        assert np.all(fit.conditional_variances == sigma2)
        assert fit.converged


class TestSimulateGarch:
    def test_no_persistence_is_iid_gaussian(self):
        rng = np.random.default_rng(7)
        loc, us = make_indexes(rng, 20000)
        config = sim_config(20000, seed=1, alpha0=4e-4, alphas=(), gammas=())
        sim = simulate_garch(config, loc, us)
        eps = sim.values - (0.0002 + 0.6 * loc + 0.3 * us)
        assert eps.mean() == pytest.approx(0.0, abs=3 * 0.02 / np.sqrt(20000))
        assert eps.var() == pytest.approx(4e-4, rel=0.05)

    def test_same_seed_reproduces(self):
        rng = np.random.default_rng(9)
        loc, us = make_indexes(rng, 500)
        a = simulate_garch(sim_config(500, seed=33), loc, us)
        b = simulate_garch(sim_config(500, seed=33), loc, us)
        assert a.values.tolist() == b.values.tolist()
        assert a.dates == b.dates

    def test_non_stationary_rejected(self):
        with pytest.raises(NonStationaryParameters):
            sim_config(100, seed=1, alphas=(0.3,), gammas=(0.7,))
        with pytest.raises(NonStationaryParameters):
            sim_config(100, seed=1, alpha0=-1.0)

    def test_length_must_match_indexes(self):
        rng = np.random.default_rng(11)
        loc, us = make_indexes(rng, 100)
        with pytest.raises(ValueError):
            simulate_garch(sim_config(99, seed=1), loc, us)


class TestFitRecovery:
    def test_recovers_known_parameters(self):
        rng = np.random.default_rng(13)
        for seed in (101, 202, 303):
            loc, us = make_indexes(rng, 3000)
            sim = simulate_garch(sim_config(3000, seed=seed, alpha0=4e-5), loc, us)
            fit = fit_garch_market_model(sim.values, loc, us, GarchSpec(1, 1))
            assert abs(fit.alphas[0] - 0.1) < 0.05
            assert abs(fit.gammas[0] - 0.8) < 0.05
            assert np.all(fit.conditional_variances > 0)
            assert fit.persistence < 1.0

    def test_standardized_residuals_unit_variance(self):
        rng = np.random.default_rng(17)
        loc, us = make_indexes(rng, 5000)
        sim = simulate_garch(sim_config(5000, seed=404, alpha0=4e-5), loc, us)
        fit = fit_garch_market_model(sim.values, loc, us, GarchSpec(1, 1))
        X = np.column_stack([np.ones(5000), loc, us])
        eps = sim.values - X @ fit.mean_coefficients
        standardized = eps / np.sqrt(fit.conditional_variances)
        assert 0.9 <= standardized.var() <= 1.1

    def test_likelihood_not_degraded_from_start(self):
        # the optimizer keeps the best point seen, so the returned likelihood
        # can never fall below the homoskedastic-anchored starting point
        rng = np.random.default_rng(19)
        loc, us = make_indexes(rng, 1000)
        sim = simulate_garch(sim_config(1000, seed=505, alpha0=4e-5), loc, us)
        base = ols_fit(sim.values, [loc, us])
        resid_var = float(base.residuals.var(ddof=1))
        eps = base.residuals
        h_start = _conditional_variances(eps, 0.05 * resid_var, [0.05], [0.90], resid_var)
        start_ll = _gaussian_loglik(eps, h_start)
        fit = fit_garch_market_model(sim.values, loc, us, GarchSpec(1, 1))
        assert fit.log_likelihood >= start_ll - 1e-9

    def test_garch_beats_homoskedastic_on_garch_data(self):
        rng = np.random.default_rng(23)
        loc, us = make_indexes(rng, 3000)
        sim = simulate_garch(sim_config(3000, seed=606, alpha0=4e-5), loc, us)
        full = fit_garch_market_model(sim.values, loc, us, GarchSpec(1, 1))
        flat = fit_garch_market_model(sim.values, loc, us, GarchSpec(0, 0))
        assert full.log_likelihood > flat.log_likelihood + 10.0

    def test_series_too_short(self):
        rng = np.random.default_rng(29)
        loc, us = make_indexes(rng, 59)
        with pytest.raises(SeriesTooShort):
            fit_garch_market_model(np.zeros(59) + 0.01 * loc, loc, us)

    def test_std_error_layout(self):
        rng = np.random.default_rng(31)
        loc, us = make_indexes(rng, 2000)
        sim = simulate_garch(sim_config(2000, seed=707, alpha0=4e-5), loc, us)
        fit = fit_garch_market_model(sim.values, loc, us, GarchSpec(1, 1))
        assert fit.std_errors.shape == (3 + 1 + 1 + 1,)
        assert fit.variance_lag_t_stats.shape == (2,)


class TestSelectLags:
    def test_search_set_is_one_one_at_unit_ceiling(self):
        rng = np.random.default_rng(37)
        loc, us = make_indexes(rng, 800)
        sim = simulate_garch(sim_config(800, seed=808, alpha0=4e-5), loc, us)
        spec, fit = select_lags(sim.values, loc, us, max_p=1, max_q=1)
        assert (spec.p, spec.q) == (1, 1)
        assert isinstance(fit, GarchFit)

    def test_prefers_true_order_on_simulated_data(self):
        rng = np.random.default_rng(41)
        hits = 0
        n_seeds = 25
        for seed in range(n_seeds):
            loc, us = make_indexes(rng, 1500)
            sim = simulate_garch(sim_config(1500, seed=900 + seed, alpha0=4e-5), loc, us)
            spec, _ = select_lags(sim.values, loc, us, max_p=2, max_q=2)
            hits += (spec.p, spec.q) == (1, 1)
        assert hits / n_seeds >= 0.8

    def test_homoskedastic_data_selects_flat_spec_when_included(self):
        rng = np.random.default_rng(43)
        hits = 0
        n_seeds = 20
        for _ in range(n_seeds):
            loc, us = make_indexes(rng, 1200)
            y = 0.0002 + 0.6 * loc + 0.3 * us + 0.02 * rng.standard_normal(1200)
            spec, fit = select_lags(y, loc, us, max_p=1, max_q=1, include_homoskedastic=True)
            hits += (spec.p, spec.q) == (0, 0)
        assert hits / n_seeds >= 0.7

    def test_homoskedastic_data_falls_back_to_one_one(self):
        rng = np.random.default_rng(47)
        loc, us = make_indexes(rng, 1000)
        y = 0.0002 + 0.6 * loc + 0.3 * us + 0.02 * rng.standard_normal(1000)
        spec, fit = select_lags(y, loc, us, max_p=1, max_q=1)
        assert (spec.p, spec.q) == (1, 1)

    def test_ceiling_validated(self):
        rng = np.random.default_rng(53)
        loc, us = make_indexes(rng, 100)
        with pytest.raises(ValueError):
            select_lags(0.01 * loc, loc, us, max_p=3, max_q=1)


class TestUnconditionalVariance:
    def _fit_like(self, alpha0, alphas, gammas):
        return GarchFit(
            mean_coefficients=np.zeros(3),
            alpha0=alpha0,
            alphas=np.asarray(alphas, dtype=float),
            gammas=np.asarray(gammas, dtype=float),
            conditional_variances=np.ones(1),
            log_likelihood=0.0,
            std_errors=np.zeros(4 + len(alphas) + len(gammas)),
            converged=True,
        )

    def test_no_persistence(self):
        assert unconditional_variance(self._fit_like(0.2, [], [])) == pytest.approx(0.2)

    def test_closed_form(self):
        assert unconditional_variance(self._fit_like(0.1, [0.1], [0.8])) == pytest.approx(1.0)

    def test_matches_long_simulation(self):
        rng = np.random.default_rng(59)
        loc, us = make_indexes(rng, 50000)
        config = sim_config(50000, seed=1001, alpha0=4e-5)
        sim = simulate_garch(config, loc, us)
        eps = sim.values - (0.0002 + 0.6 * loc + 0.3 * us)
        target = 4e-5 / (1.0 - 0.1 - 0.8)
        assert eps.var() == pytest.approx(target, rel=0.1)


class TestSpecValidation:
    def test_lag_ceiling(self):
        with pytest.raises(ValueError):
            GarchSpec(p=3, q=0)
        with pytest.raises(ValueError):
            GarchSpec(p=0, q=-1)

    def test_sim_config_consistency(self):
        with pytest.raises(ValueError):
            GarchSimConfig(
                spec=GarchSpec(1, 1),
                true_mean_coefficients=(0.0, 0.5, 0.5),
                true_alpha0=1e-5,
                true_alphas=(0.1, 0.1),
                true_gammas=(0.8,),
                length=100,
                seed=1,
            )
