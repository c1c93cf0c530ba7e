"""Cross-regime timing benchmark."""

import math

import pytest

from homsim.errors import ConfigurationError, DomainError
from homsim.regimes import (
    RegimeConfig,
    build_table,
    bundled_comparison,
    evaluate_condition,
    predict_visibility_for_row,
    total_time_uncertainty,
)
from homsim.sources import reference_source


def _rounding_step(quoted):
    """Half the last printed digit of the quoted value."""
    text = f"{quoted:g}"
    if "e" in text or "E" in text:
        mantissa, exp = text.split("e")
        decimals = len(mantissa.split(".")[1]) if "." in mantissa else 0
        return 0.5 * 10.0 ** (int(exp) - decimals)
    decimals = len(text.split(".")[1]) if "." in text else 0
    if decimals:
        return 0.5 * 10.0 ** (-decimals)
    stripped = text.rstrip("0")
    return 0.5 * 10.0 ** (len(text) - len(stripped))


def quoted_tolerance(quoted):
    """2% of the quoted value, or its print-rounding step if larger."""
    return max(0.02 * quoted, _rounding_step(quoted))


class TestEvaluateCondition:
    def test_reference_margins(self):
        ok, margin = evaluate_condition(14.0, 1.2)
        assert ok and margin == pytest.approx(11.7, abs=0.1)
        ok, margin = evaluate_condition(350.0, 70.0)
        assert ok and margin == pytest.approx(5.0)
        ok, margin = evaluate_condition(0.335, 0.060, 0.002)
        assert ok and margin == pytest.approx(5.6, abs=0.05)
        ok, margin = evaluate_condition(2.3, 0.050, 0.260)
        assert ok and margin == pytest.approx(8.7, abs=0.05)

    def test_quadrature_vs_linear(self):
        assert total_time_uncertainty(3.0, 4.0) == pytest.approx(5.0)
        assert total_time_uncertainty(3.0, 4.0, combine="linear") == pytest.approx(7.0)
        with pytest.raises(ConfigurationError):
            total_time_uncertainty(1.0, 1.0, combine="rms")

    def test_condition_boundary(self):
        ok, margin = evaluate_condition(5.0, 5.0)
        assert ok and margin == pytest.approx(1.0)
        ok, _ = evaluate_condition(4.99, 5.0)
        assert not ok

    def test_zero_uncertainty(self):
        ok, margin = evaluate_condition(1.0, 0.0)
        assert ok and math.isinf(margin)

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            evaluate_condition(-1.0, 1.0)
        with pytest.raises(DomainError):
            evaluate_condition(1.0, -1.0)


class TestBuildTable:
    def test_coherence_times_match_quoted(self):
        rows = build_table(bundled_comparison(), predict=False)
        for row in rows:
            quoted = row.quoted_coherence_time_ps
            assert row.error is None
            assert abs(row.coherence_time_ps - quoted) <= quoted_tolerance(quoted), row.label

    def test_empty_input(self):
        assert build_table([]) == []

    def test_missing_field_produces_error_row(self):
        configs = [
            RegimeConfig(label="broken", n_lasers=1, regime="ps", filter_fwhm_pm=100.0),
            bundled_comparison()[0],
        ]
        rows = build_table(configs, predict=False)
        assert len(rows) == 2
        assert rows[0].error is not None and "missing" in rows[0].error
        assert rows[1].error is None

    def test_row_order_preserved(self):
        rows = build_table(bundled_comparison(), predict=False)
        assert [r.label for r in rows] == [c.label for c in bundled_comparison()]

    def test_margin_inverse_in_filter_width(self):
        a = RegimeConfig(label="a", n_lasers=1, regime="ps",
                         time_uncertainty_ps=1.0, filter_fwhm_pm=100.0, wavelength_nm=1550.0)
        b = RegimeConfig(label="b", n_lasers=1, regime="ps",
                         time_uncertainty_ps=1.0, filter_fwhm_pm=200.0, wavelength_nm=1550.0)
        ra, rb = build_table([a, b], predict=False)
        assert ra.condition_margin == pytest.approx(2.0 * rb.condition_margin, rel=1e-9)

    def test_hypothetical_narrow_filter_fs_row(self):
        row = build_table(
            [RegimeConfig(label="hypo", n_lasers=1, regime="fs",
                          time_uncertainty_ps=0.1, filter_fwhm_pm=10.0,
                          wavelength_nm=1550.0)],
            predict=False,
        )[0]
        assert row.condition_ok and row.condition_margin > 100


class TestPredictVisibility:
    def test_rows_without_spectral_detail_not_computable(self):
        cfg = bundled_comparison()[0]
        assert predict_visibility_for_row(cfg) is None

    def test_reference_row_high_visibility(self):
        cfg = next(c for c in bundled_comparison() if c.source is not None)
        vis = predict_visibility_for_row(cfg)
        assert vis is not None and vis >= 0.995

    def test_jitter_never_increases_visibility(self):
        base = RegimeConfig(label="x", n_lasers=1, regime="ps",
                            time_uncertainty_ps=1.2, filter_fwhm_pm=250.0,
                            wavelength_nm=1550.0, source=reference_source())
        jittered = RegimeConfig(label="x", n_lasers=2, regime="ps",
                                time_uncertainty_ps=1.2, sync_jitter_ps=4.0,
                                filter_fwhm_pm=250.0, wavelength_nm=1550.0,
                                source=reference_source())
        v0 = predict_visibility_for_row(base)
        v1 = predict_visibility_for_row(jittered)
        assert v1 <= v0

    def test_condition_verdicts(self):
        rows = build_table(bundled_comparison(), predict=False)
        verdicts = {r.label: r.condition_ok for r in rows}
        # the reference picosecond row passes comfortably; the row whose
        # pulse outlasts its coherence time is the only strict failure
        assert verdicts["Nice"]
        assert verdicts["Geneva CW"]
        assert not verdicts["Atsugi"]
