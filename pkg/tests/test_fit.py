"""Gaussian dip fitting: exact recovery, noisy coverage, failure modes."""

import numpy as np
import pytest

from homsim.errors import DegenerateInputError, FitConvergenceError
from homsim.mc.fitting import DipFit, fit_dip

TRUE = dict(baseline=500.0, visibility=0.93, center_ps=1.5, sigma_ps=8.36)


def _model(delays, baseline, visibility, center_ps, sigma_ps):
    return baseline * (
        1.0 - visibility * np.exp(-((delays - center_ps) ** 2) / (2.0 * sigma_ps**2))
    )


class TestExactRecovery:
    def test_noiseless_fit_recovers_parameters(self):
        delays = np.linspace(-30, 30, 31)
        counts = _model(delays, **TRUE)
        fit = fit_dip(delays, counts)
        assert fit.baseline == pytest.approx(TRUE["baseline"], rel=1e-6)
        assert fit.visibility == pytest.approx(TRUE["visibility"], rel=1e-6)
        assert fit.center_ps == pytest.approx(TRUE["center_ps"], abs=1e-5)
        assert fit.sigma_ps == pytest.approx(TRUE["sigma_ps"], rel=1e-6)

    def test_fwhm_relation(self):
        fit = DipFit(baseline=1.0, visibility=0.5, center_ps=0.0, sigma_ps=2.0,
                     covariance=np.zeros((4, 4)))
        assert fit.fwhm_ps == pytest.approx(2.0 * 2.0 * np.sqrt(2.0 * np.log(2.0)))

    def test_model_round_trip(self):
        delays = np.linspace(-20, 20, 15)
        fit = fit_dip(delays, _model(delays, **TRUE))
        assert np.allclose(fit.model(delays), _model(delays, **TRUE), rtol=1e-5)

    def test_probability_scale_input(self):
        # analytic dip curves are fit on the same model at unit weights
        delays = np.linspace(-30, 30, 30)
        probs = _model(delays, baseline=0.5, visibility=0.9997, center_ps=0.0, sigma_ps=8.4)
        fit = fit_dip(delays, probs)
        assert fit.visibility == pytest.approx(0.9997, abs=1e-4)


class TestNoisyCoverage:
    def test_poisson_coverage_over_seeds(self):
        # the fitted visibility should land within 3 reported sigmas of the
        # truth for the vast majority of noise realizations
        delays = np.linspace(-30, 30, 30)
        expect = _model(delays, **TRUE)
        hits = 0
        for seed in range(100):
            rng = np.random.default_rng(seed)
            counts = rng.poisson(expect).astype(float)
            fit = fit_dip(delays, counts)
            err = max(fit.errors[1], 1e-6)
            if abs(fit.visibility - TRUE["visibility"]) <= 3.0 * err:
                hits += 1
        assert hits >= 93

    def test_visibility_error_is_sane(self):
        delays = np.linspace(-30, 30, 30)
        rng = np.random.default_rng(1)
        counts = rng.poisson(_model(delays, **TRUE)).astype(float)
        fit = fit_dip(delays, counts)
        assert 1e-4 < fit.errors[1] < 0.2


class TestFailureModes:
    def test_constant_counts_rejected(self):
        with pytest.raises(DegenerateInputError):
            fit_dip(np.linspace(-10, 10, 10), np.full(10, 7.0))

    def test_too_few_points_rejected(self):
        with pytest.raises(DegenerateInputError):
            fit_dip(np.array([0.0, 1.0, 2.0]), np.array([1.0, 0.5, 1.0]))

    def test_shape_mismatch_rejected(self):
        with pytest.raises(DegenerateInputError):
            fit_dip(np.linspace(0, 1, 10), np.zeros(9))

    def test_convergence_error_carries_best_iterate(self):
        err = FitConvergenceError("no luck", best_params=np.array([1.0, 0.5, 0.0, 2.0]))
        assert err.best_params is not None
        assert "no luck" in str(err)
