"""Command-line front end: purity, dip, rates, and regimes reports.

All numeric serialization is bit-stable: '.' decimal separator, no
thousands grouping, newline-terminated final row, and every output embeds
the effective config hash, the RNG seed, and the package version.
"""

import argparse
import json
import sys

import numpy as np

from . import __version__
from .config import (
    DEFAULTS,
    brightness_spec,
    config_hash,
    detector_model,
    emission_model,
    link_config,
    load_config,
    source_config,
    trigger_config,
)
from .errors import (
    ConfigurationError,
    DegenerateInputError,
    DomainError,
    FitConvergenceError,
    HomsimError,
)
from .mc.fitting import fit_dip
from .mc.kernels import kernel_backend
from .mc.simulate import dip_scan, overlap_curve
from .pair_stats import (
    effective_pair_rate,
    fit_excess_transmission,
    mean_pairs_per_pulse,
    predict_raw_visibility,
)
from .regimes import build_table, bundled_comparison
from .sources import build_filtered_jsa, interfering_state
from .spectral import schmidt_decompose, spectral_overlap

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4


def _metadata(config, seed=None):
    return {
        "config_hash": config_hash(config),
        "seed": int(config["rng_seed"] if seed is None else seed),
        "version": __version__,
        "config": dict(config),
    }


def _write(path, text):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def _json_text(payload):
    return json.dumps(payload, indent=2) + "\n"


def _load(args):
    if args.config is None:
        return dict(DEFAULTS)
    return load_config(args.config)


def _parse_delays(spec):
    parts = spec.split(":")
    if len(parts) != 3:
        raise ConfigurationError("--delays expects min:max:n, e.g. -30:30:30")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ConfigurationError(f"--delays could not parse {spec!r}")
    if n < 2 or hi <= lo:
        raise ConfigurationError("--delays needs n >= 2 and max > min")
    return np.linspace(lo, hi, n)


def cmd_purity(args):
    config = _load(args)
    src = source_config(config)
    jsa = build_filtered_jsa(src)
    schmidt = schmidt_decompose(jsa)
    report = {
        "schmidt_coefficients": [float(c) for c in schmidt.coefficients[:16]],
        "schmidt_number": float(schmidt.schmidt_number),
        "heralded_purity": float(schmidt.purity),
        "predicted_max_visibility": float(schmidt.purity),
        "surviving_fraction": float(jsa.norm_squared),
        "metadata": _metadata(config),
    }
    _write(args.out, _json_text(report))
    return EXIT_OK


def _csv(rows, header):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def _fit_block(delays, counts):
    try:
        fit = fit_dip(delays, counts)
    except FitConvergenceError as exc:
        return None, {
            "converged": False,
            "error": str(exc),
            "best_params": [float(v) for v in exc.best_params]
            if exc.best_params is not None
            else None,
        }
    except DegenerateInputError as exc:
        return None, {"converged": False, "error": str(exc), "best_params": None}
    errs = fit.errors
    return fit, {
        "converged": True,
        "baseline": fit.baseline,
        "visibility": fit.visibility,
        "visibility_error": float(errs[1]),
        "center_ps": fit.center_ps,
        "fwhm_ps": fit.fwhm_ps,
    }


def cmd_dip(args):
    config = _load(args)
    delays = _parse_delays(args.delays)
    seed = config["rng_seed"] if args.seed is None else int(args.seed)
    config = dict(config, rng_seed=seed)
    analytic = not args.monte_carlo
    summary = {"mode": "analytic" if analytic else "monte-carlo"}
    fit_failed = False

    if analytic:
        src = source_config(config)
        rho = interfering_state(src)
        overlap = np.array([spectral_overlap(rho, rho, d) for d in delays])
        pc = 0.5 * (1.0 - overlap)
        csv_text = _csv(
            [(float(d), float(p)) for d, p in zip(delays, pc)],
            ["delay_ps", "coincidence_probability"],
        )
        _, fit_info = _fit_block(delays, pc)
        summary["fit"] = fit_info
        summary["visibility_at_zero"] = float(
            1.0 - 2.0 * 0.5 * (1.0 - spectral_overlap(rho, rho, 0.0))
        )
        fit_failed = not fit_info["converged"]
    else:
        link = link_config(config, seed=seed)
        result = dip_scan(link, delays, args.triggers)
        rows = [
            (float(d), int(c4), int(a), int(b), int(acc))
            for d, c4, a, b, acc in zip(
                result.delays_ps,
                result.fourfold,
                result.twofold_a,
                result.twofold_b,
                result.accidental,
            )
        ]
        csv_text = _csv(
            rows, ["delay_ps", "fourfold", "twofold_a", "twofold_b", "accidentals"]
        )
        _, raw_fit = _fit_block(delays, result.fourfold.astype(float))
        _, net_fit = _fit_block(delays, result.genuine.astype(float))
        summary["triggers_per_point"] = result.triggers_per_point
        summary["backend"] = result.backend
        summary["raw_fit"] = raw_fit
        summary["net_fit"] = net_fit
        fit_failed = not (raw_fit["converged"] and net_fit["converged"])

    summary["metadata"] = _metadata(config, seed=seed)
    if args.out is not None:
        _write(args.out, csv_text)
        _write(args.out + ".json", _json_text(summary))
    else:
        sys.stdout.write(csv_text)
        sys.stdout.write(_json_text(summary))
    return EXIT_NUMERIC if fit_failed else EXIT_OK


def cmd_rates(args):
    config = _load(args)
    emission = emission_model(config)
    detectors = (detector_model(config),) * 4
    trigger = trigger_config(config)
    rate_mhz = trigger.trigger_rate_hz() / 1e6
    arms = (config["arm_transmission"],) * 4
    window = config["coincidence_window_ns"]
    pred = effective_pair_rate(
        detectors, rate_mhz, emission, arm_transmissions=arms, window_ns=window
    )
    spec = brightness_spec(config)
    report = {
        "mean_pairs_per_pulse": emission.mean_pairs_per_pulse,
        "mean_pairs_per_pulse_from_brightness": mean_pairs_per_pulse(spec),
        "trigger_rate_per_s": trigger.trigger_rate_hz(),
        "twofold_per_s": pred.twofold_a_per_s,
        "fourfold_per_s": pred.fourfold_per_s,
        "accidental_fourfold_per_s": pred.accidental_fourfold_per_s,
        "predicted_raw_visibility": predict_raw_visibility(
            1.0, emission, detectors, arm_transmissions=arms, window_ns=window
        ),
    }
    if args.fit_twofold_per_hour is not None:
        target = args.fit_twofold_per_hour / 3600.0
        fitted = fit_excess_transmission(
            target, detectors, rate_mhz, emission, window_ns=window
        )
        fitted_pred = effective_pair_rate(
            detectors, rate_mhz, emission,
            arm_transmissions=(fitted,) * 4, window_ns=window,
        )
        report["fitted_arm_transmission"] = fitted
        report["fitted_twofold_per_s"] = fitted_pred.twofold_a_per_s
        report["fitted_fourfold_per_s"] = fitted_pred.fourfold_per_s
        report["fitted_accidental_fourfold_per_s"] = fitted_pred.accidental_fourfold_per_s
    report["metadata"] = _metadata(config)
    _write(args.out, _json_text(report))
    return EXIT_OK


_REGIME_COLUMNS = [
    "label", "n_lasers", "regime", "time_uncertainty_ps", "sync_jitter_ps",
    "filter_fwhm_pm", "wavelength_nm", "coherence_time_ps", "condition_ok",
    "condition_margin", "predicted_visibility", "quoted_coherence_time_ps",
    "quoted_rate_pairs_per_s", "quoted_raw_visibility",
    "quoted_net_visibility", "error",
]


def _regime_cell(value):
    if value is None:
        return "NA"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.4g}"
    return str(value)


def cmd_regimes(args):
    config = _load(args)
    rows = build_table(bundled_comparison(), predict=not args.no_predict)
    table = [[_regime_cell(getattr(r, c)) for c in _REGIME_COLUMNS] for r in rows]
    widths = [
        max(len(c), *(len(row[i]) for row in table))
        for i, c in enumerate(_REGIME_COLUMNS)
    ]
    text_lines = ["  ".join(c.ljust(w) for c, w in zip(_REGIME_COLUMNS, widths))]
    for row in table:
        text_lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)))
    text = "\n".join(line.rstrip() for line in text_lines) + "\n"
    csv_text = _csv(table, _REGIME_COLUMNS)
    meta = _json_text({"metadata": _metadata(config)})
    if args.out is not None:
        _write(args.out, csv_text)
        sys.stdout.write(text)
        sys.stdout.write(meta)
    else:
        sys.stdout.write(text)
        sys.stdout.write(csv_text)
        sys.stdout.write(meta)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="homsim",
        description="Two-photon interference simulator for pulsed pair sources.",
    )
    parser.add_argument("--version", action="version", version=f"homsim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("config", nargs="?", default=None,
                       help="flat key=value config file (defaults used if omitted)")
        p.add_argument("--out", default=None, help="output path (default: stdout)")

    p = sub.add_parser("purity", help="Schmidt spectrum and heralded purity")
    add_common(p)
    p.set_defaults(func=cmd_purity)

    p = sub.add_parser("dip", help="delay scan of the coincidence dip")
    add_common(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--analytic", action="store_true",
                      help="analytic coincidence probability (default)")
    mode.add_argument("--monte-carlo", action="store_true",
                      help="stratified pulse-train Monte Carlo")
    p.add_argument("--delays", default="-30:30:30", help="scan range min:max:n (ps)")
    p.add_argument("--triggers", type=int, default=1_000_000,
                   help="triggers per scan point (Monte Carlo)")
    p.add_argument("--seed", type=int, default=None, help="override the RNG seed")
    p.set_defaults(func=cmd_dip)

    p = sub.add_parser("rates", help="pair statistics and coincidence rates")
    add_common(p)
    p.add_argument("--fit-twofold-per-hour", type=float, default=None,
                   help="solve for the excess arm transmission hitting this rate")
    p.set_defaults(func=cmd_rates)

    p = sub.add_parser("regimes", help="cross-regime timing comparison table")
    add_common(p)
    p.add_argument("--no-predict", action="store_true",
                   help="skip the (slower) per-row visibility prediction")
    p.set_defaults(func=cmd_regimes)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage and 0 on --help/--version
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ConfigurationError, DomainError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FitConvergenceError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except HomsimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
