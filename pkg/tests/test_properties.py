"""Property-based checks over the statistics and configuration layers."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homsim.beamsplitter import (
    classical_output_distribution,
    output_distribution,
    quantum_output_distribution,
)
from homsim.config import DEFAULTS, parse_config, serialize_config
from homsim.pair_stats import EmissionModel, photon_number_distribution
from homsim.regimes import evaluate_condition
from homsim.spectral import coherence_time, intensity_shape

photon_numbers = st.integers(min_value=0, max_value=6)
overlaps = st.floats(min_value=0.0, max_value=1.0)


class TestBeamSplitterProperties:
    @given(na=photon_numbers, nb=photon_numbers, t=overlaps)
    def test_output_distribution_is_probability(self, na, nb, t):
        dist = output_distribution(na, nb, t)
        assert len(dist) == na + nb + 1
        assert np.all(dist >= -1e-12)
        assert np.sum(dist) == pytest.approx(1.0, rel=1e-9)

    @given(na=photon_numbers, nb=photon_numbers, t=overlaps)
    def test_mean_occupancy_balanced(self, na, nb, t):
        dist = output_distribution(na, nb, t)
        m = np.arange(na + nb + 1)
        assert float(np.dot(m, dist)) == pytest.approx((na + nb) / 2, abs=1e-9)

    @given(na=photon_numbers, nb=photon_numbers)
    def test_output_symmetry(self, na, nb):
        # swapping the inputs mirrors the output distribution
        a = quantum_output_distribution(na, nb)
        b = quantum_output_distribution(nb, na)
        assert np.allclose(a, b[::-1])
        assert np.allclose(
            classical_output_distribution(na, nb),
            classical_output_distribution(nb, na)[::-1],
        )


class TestEmissionProperties:
    @given(
        mu=st.floats(min_value=0.0, max_value=2.0),
        nmax=st.integers(min_value=1, max_value=8),
        kind=st.sampled_from(["thermal", "poissonian"]),
    )
    def test_distribution_normalized(self, mu, nmax, kind):
        p = photon_number_distribution(EmissionModel(mu, kind, nmax))
        assert len(p) == nmax + 1
        assert np.all(p >= 0.0)
        assert p.sum() == pytest.approx(1.0, rel=1e-9)

    @given(mu=st.floats(min_value=1e-6, max_value=0.5))
    def test_thermal_is_monotone_decreasing(self, mu):
        p = photon_number_distribution(EmissionModel(mu, "thermal", 6))
        assert np.all(np.diff(p) < 0)


class TestCoherenceProperties:
    @given(
        fwhm=st.floats(min_value=1.0, max_value=1e4),
        scale=st.floats(min_value=1.1, max_value=10.0),
        lam=st.floats(min_value=400.0, max_value=1700.0),
    )
    def test_margin_inverse_in_bandwidth(self, fwhm, scale, lam):
        _, m1 = evaluate_condition(coherence_time(fwhm, lam), 1.0)
        _, m2 = evaluate_condition(coherence_time(fwhm * scale, lam), 1.0)
        assert m1 == pytest.approx(scale * m2, rel=1e-9)


class TestShapeProperties:
    @given(
        fwhm=st.floats(min_value=1e-3, max_value=1e3),
        shape=st.sampled_from(["gaussian", "lorentzian", "flattop"]),
    )
    def test_half_maximum_at_half_width(self, fwhm, shape):
        assert intensity_shape(fwhm / 2, fwhm, shape) == pytest.approx(0.5, rel=1e-6)
        assert float(intensity_shape(0.0, fwhm, shape)) == pytest.approx(1.0)


config_values = st.fixed_dictionaries(
    {},
    optional={
        "mean_pairs_per_pulse": st.floats(min_value=0.0, max_value=1.0),
        "rng_seed": st.integers(min_value=0, max_value=2**31 - 1),
        "grid_points": st.integers(min_value=16, max_value=2048),
        "pump_fwhm_pm": st.floats(min_value=1.0, max_value=1e4),
        "division_mode": st.sampled_from(["random_divider", "fixed_divider"]),
        "interfering_delay_ps": st.floats(
            min_value=-100, max_value=100, allow_nan=False
        ),
    },
)


class TestConfigProperties:
    @settings(max_examples=50)
    @given(overrides=config_values)
    def test_serialize_parse_round_trip(self, overrides):
        cfg = dict(DEFAULTS, **overrides)
        assert parse_config(serialize_config(cfg)) == cfg
