"""Command-line interface: config handling, outputs, exit codes."""

import json

import numpy as np
import pytest

from homsim.cli import main
from homsim.config import (
    DEFAULTS,
    config_hash,
    parse_config,
    serialize_config,
)
from homsim.errors import ConfigurationError


class TestConfigDocument:
    def test_defaults_round_trip(self):
        cfg = parse_config(serialize_config(dict(DEFAULTS)))
        assert cfg == dict(DEFAULTS)

    def test_round_trip_is_identity(self):
        text = "mean_pairs_per_pulse = 0.045\nrng_seed = 7\n"
        cfg = parse_config(text)
        assert parse_config(serialize_config(cfg)) == cfg

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigurationError):
            parse_config("pump_fwhm_nm = 0.25")

    def test_duplicate_key_rejected(self):
        with pytest.raises(ConfigurationError):
            parse_config("rng_seed = 1\nrng_seed = 2")

    def test_type_errors_rejected(self):
        with pytest.raises(ConfigurationError):
            parse_config("grid_points = 12.5")
        with pytest.raises(ConfigurationError):
            parse_config("pump_fwhm_pm = wide")

    def test_comments_and_blanks_ignored(self):
        cfg = parse_config("# comment\n\nrng_seed = 3  # trailing\n")
        assert cfg["rng_seed"] == 3

    def test_hash_stability_and_sensitivity(self):
        base = config_hash(dict(DEFAULTS))
        assert base == config_hash(dict(DEFAULTS))
        assert base != config_hash(dict(DEFAULTS, rng_seed=1))


class TestPurityCommand:
    def test_report(self, tmp_path, capsys):
        out = tmp_path / "purity.json"
        assert main(["purity", "--out", str(out)]) == 0
        report = json.loads(out.read_text())
        assert report["heralded_purity"] >= 0.995
        assert report["predicted_max_visibility"] >= 0.995
        assert abs(sum(c**2 for c in report["schmidt_coefficients"]) - 1.0) < 1e-6
        meta = report["metadata"]
        assert set(meta) >= {"config_hash", "seed", "version", "config"}

    def test_narrower_filter_raises_purity(self, tmp_path):
        base = tmp_path / "a.json"
        narrow_cfg = tmp_path / "narrow.cfg"
        narrow_cfg.write_text("interfering_filter_fwhm_pm = 100\ngrid_points = 256\n")
        wide_cfg = tmp_path / "wide.cfg"
        wide_cfg.write_text("interfering_filter_fwhm_pm = 800\ngrid_points = 256\n")
        narrow_out, wide_out = tmp_path / "n.json", tmp_path / "w.json"
        assert main(["purity", str(narrow_cfg), "--out", str(narrow_out)]) == 0
        assert main(["purity", str(wide_cfg), "--out", str(wide_out)]) == 0
        narrow = json.loads(narrow_out.read_text())["heralded_purity"]
        wide = json.loads(wide_out.read_text())["heralded_purity"]
        assert narrow > wide


class TestDipCommand:
    def test_analytic_zero_delay_probability(self, tmp_path):
        out = tmp_path / "dip.csv"
        assert main(["dip", "--analytic", "--delays=-30:30:31",
                     "--out", str(out)]) == 0
        rows = out.read_text().strip().splitlines()
        assert rows[0] == "delay_ps,coincidence_probability"
        assert out.read_text().endswith("\n")
        data = {float(r.split(",")[0]): float(r.split(",")[1]) for r in rows[1:]}
        assert data[0.0] <= 2.5e-3
        summary = json.loads((tmp_path / "dip.csv.json").read_text())
        assert summary["mode"] == "analytic"
        assert summary["fit"]["converged"]
        assert summary["fit"]["visibility"] >= 0.995

    def _bright_cfg(self, tmp_path):
        cfg = tmp_path / "bright.cfg"
        cfg.write_text("mean_pairs_per_pulse = 0.3\ndetector_efficiency = 0.4\n")
        return str(cfg)

    def test_monte_carlo_deterministic_bytes(self, tmp_path):
        args = ["dip", self._bright_cfg(tmp_path), "--monte-carlo",
                "--delays=-20:20:9", "--triggers", "200000", "--seed", "42"]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()
        summary = json.loads((tmp_path / "a.csv.json").read_text())
        assert summary["metadata"]["seed"] == 42
        assert summary["backend"] in ("python", "cython")

    def test_monte_carlo_csv_columns(self, tmp_path):
        out = tmp_path / "mc.csv"
        assert main(["dip", self._bright_cfg(tmp_path), "--monte-carlo",
                     "--delays=-20:20:9", "--triggers", "100000",
                     "--out", str(out)]) == 0
        header = out.read_text().splitlines()[0]
        assert header == "delay_ps,fourfold,twofold_a,twofold_b,accidentals"

    def test_sparse_counts_flag_fit_failure(self, tmp_path):
        # with the reference parameters and tiny statistics no dip can be
        # fitted; the CSV must still be produced and the failure flagged
        out = tmp_path / "sparse.csv"
        assert main(["dip", "--monte-carlo", "--delays=-20:20:5",
                     "--triggers", "10000", "--out", str(out)]) == 3
        assert out.exists()
        summary = json.loads((tmp_path / "sparse.csv.json").read_text())
        assert not summary["raw_fit"]["converged"]

    def test_bad_delays_is_config_error(self):
        assert main(["dip", "--delays", "oops"]) == 2
        assert main(["dip", "--delays", "10:0:5"]) == 2


class TestRatesCommand:
    def test_brightness_mu(self, tmp_path):
        out = tmp_path / "rates.json"
        assert main(["rates", "--out", str(out)]) == 0
        report = json.loads(out.read_text())
        assert report["mean_pairs_per_pulse_from_brightness"] == pytest.approx(
            5.3e-3, abs=5e-5
        )
        assert report["trigger_rate_per_s"] == pytest.approx(6e5)

    def test_fitted_loss_hits_target(self, tmp_path):
        out = tmp_path / "rates.json"
        assert main(["rates", "--fit-twofold-per-hour", "4000",
                     "--out", str(out)]) == 0
        report = json.loads(out.read_text())
        target = 4000.0 / 3600.0
        assert report["fitted_twofold_per_s"] == pytest.approx(target, rel=1e-6)
        assert 0.0 < report["fitted_arm_transmission"] < 1.0

    def test_power_scaling(self, tmp_path):
        # doubling the pump power doubles mu; in the low-gain limit the
        # two-fold rate follows linearly
        cold = tmp_path / "cold.cfg"
        cold.write_text("mean_pairs_per_pulse = 0.004\n")
        hot = tmp_path / "hot.cfg"
        hot.write_text("mean_pairs_per_pulse = 0.008\n")
        out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
        assert main(["rates", str(cold), "--out", str(out1)]) == 0
        assert main(["rates", str(hot), "--out", str(out2)]) == 0
        r1 = json.loads(out1.read_text())
        r2 = json.loads(out2.read_text())
        assert r2["twofold_per_s"] / r1["twofold_per_s"] == pytest.approx(2.0, rel=0.05)


class TestRegimesCommand:
    def test_csv_rows(self, tmp_path, capsys):
        out = tmp_path / "regimes.csv"
        assert main(["regimes", "--no-predict", "--out", str(out)]) == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0].startswith("label,")
        assert len(lines) == 8  # header + seven rows
        text = capsys.readouterr().out
        assert "Nice" in text and "Vienna" in text

    def test_condition_examples_flow_through(self, tmp_path):
        out = tmp_path / "regimes.csv"
        assert main(["regimes", "--no-predict", "--out", str(out)]) == 0
        rows = out.read_text().strip().splitlines()[1:]
        by_label = {r.split(",")[0]: r.split(",") for r in rows}
        header = out.read_text().splitlines()[0].split(",")
        margin_idx = header.index("condition_margin")
        assert float(by_label["Nice"][margin_idx]) == pytest.approx(11.75, abs=0.05)
        assert float(by_label["Geneva CW"][margin_idx]) == pytest.approx(5.04, abs=0.05)
        assert float(by_label["Vienna"][margin_idx]) == pytest.approx(8.87, abs=0.05)


class TestExitCodes:
    def test_config_error(self, tmp_path):
        bad = tmp_path / "bad.cfg"
        bad.write_text("bogus_key = 1\n")
        assert main(["purity", str(bad)]) == 2

    def test_missing_config_file_is_io_error(self):
        assert main(["purity", "/nonexistent/homsim.cfg"]) == 4

    def test_unwritable_out_is_io_error(self, tmp_path):
        assert main(["regimes", "--no-predict", "--out", str(tmp_path)]) == 4

    def test_help_exits_zero(self):
        assert main(["--help"]) == 0

    def test_missing_command_is_usage_error(self):
        assert main([]) == 2
