"""Flat key-value run configuration.

One document drives every command.  Keys are flat and carry their unit in
the name, so a value can never be interpreted in the wrong unit silently.
Unknown keys are rejected; missing keys are filled from the documented
defaults below, and the effective values (defaults included) are echoed
into every output.
"""

import hashlib
from dataclasses import replace

from .detectors import DetectorModel
from .errors import ConfigurationError
from .mc.config import LinkConfig, TriggerConfig
from .pair_stats import BrightnessSpec, EmissionModel
from .sources import SourceConfig
from .spectral import FilterSpec

# key -> default; the default's Python type fixes the key's type.
DEFAULTS = {
    # pump and phase matching
    "pump_center_nm": 768.0,
    "pump_fwhm_pm": 250.0,
    "pump_duration_ps": 1.2,
    "pump_bandwidth_from": "duration",
    "pump_shape": "gaussian",
    "phasematch_center_nm": 1536.0,
    "phasematch_fwhm_nm": 50.0,
    "phasematch_shape": "gaussian",
    # filtering
    "herald_filter_center_nm": 1537.4,
    "herald_filter_fwhm_pm": 800.0,
    "herald_filter_shape": "gaussian",
    "interfering_filter_center_nm": 1534.6,
    "interfering_filter_fwhm_pm": 250.0,
    "interfering_filter_shape": "gaussian",
    "interfering_arm": "idler",
    # numerics
    "grid_points": 512,
    "grid_span_mult": 8.0,
    # emission statistics
    "mean_pairs_per_pulse": 0.04,
    "number_distribution": "thermal",
    "max_photon_number": 4,
    # brightness bookkeeping
    "brightness_pairs_per_s_per_pm_per_mw": 1.6e3,
    "pump_power_mw": 1.0,
    # detection
    "detector_efficiency": 0.10,
    "dark_prob_per_ns": 1e-5,
    "gate_width_ns": 2.5,
    "coincidence_window_ns": 2.5,
    "arm_transmission": 1.0,
    # triggering
    "laser_rep_rate_mhz": 76.0,
    "max_trigger_rate_mhz": 1.0,
    "effective_trigger_rate_mhz": 0.6,
    "division_mode": "random_divider",
    # link geometry and timing
    "interfering_delay_ps": 0.0,
    "sync_jitter_sigma_ps": 0.0,
    "rng_seed": 0,
}


def _coerce(key, raw):
    default = DEFAULTS[key]
    if isinstance(default, str):
        return str(raw)
    text = str(raw).strip()
    try:
        if isinstance(default, int) and not isinstance(default, bool):
            value = float(text)
            if value != int(value):
                raise ValueError
            return int(value)
        return float(text)
    except ValueError:
        kind = "an integer" if isinstance(default, int) else "a number"
        raise ConfigurationError(f"config key {key!r}: expected {kind}, got {raw!r}")


def parse_config(text):
    """Parse a flat ``key = value`` document (``#`` comments, blank lines
    allowed) into a fully-defaulted config dict."""
    provided = {}
    for lineno, line in enumerate(str(text).splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigurationError(f"config line {lineno}: expected 'key = value', got {line!r}")
        key, _, raw = body.partition("=")
        key = key.strip()
        if key not in DEFAULTS:
            raise ConfigurationError(f"config line {lineno}: unknown key {key!r}")
        if key in provided:
            raise ConfigurationError(f"config line {lineno}: duplicate key {key!r}")
        provided[key] = _coerce(key, raw.strip())
    config = dict(DEFAULTS)
    config.update(provided)
    return config


def serialize_config(config):
    """Canonical text form: every key, documented order, '.' decimals."""
    unknown = set(config) - set(DEFAULTS)
    if unknown:
        raise ConfigurationError(f"unknown config keys: {sorted(unknown)}")
    lines = []
    for key, default in DEFAULTS.items():
        value = config.get(key, default)
        if isinstance(default, str):
            lines.append(f"{key} = {value}")
        elif isinstance(default, int):
            lines.append(f"{key} = {int(value)}")
        else:
            lines.append(f"{key} = {float(value)!r}")
    return "\n".join(lines) + "\n"


def config_hash(config):
    """Stable short hash of the effective configuration."""
    return hashlib.sha256(serialize_config(config).encode()).hexdigest()[:16]


def load_config(path):
    with open(path, "r", encoding="utf-8") as handle:
        return parse_config(handle.read())


def source_config(config):
    return SourceConfig(
        pump_center_nm=config["pump_center_nm"],
        pump_fwhm_pm=config["pump_fwhm_pm"],
        pump_duration_ps=config["pump_duration_ps"],
        pump_bandwidth_from=config["pump_bandwidth_from"],
        pump_shape=config["pump_shape"],
        phasematch_center_nm=config["phasematch_center_nm"],
        phasematch_fwhm_nm=config["phasematch_fwhm_nm"],
        phasematch_shape=config["phasematch_shape"],
        herald_filter=FilterSpec(
            config["herald_filter_center_nm"],
            config["herald_filter_fwhm_pm"],
            config["herald_filter_shape"],
        ),
        interfering_filter=FilterSpec(
            config["interfering_filter_center_nm"],
            config["interfering_filter_fwhm_pm"],
            config["interfering_filter_shape"],
        ),
        interfering_arm=config["interfering_arm"],
        grid_points=config["grid_points"],
        grid_span_mult=config["grid_span_mult"],
    )


def emission_model(config):
    return EmissionModel(
        mean_pairs_per_pulse=config["mean_pairs_per_pulse"],
        number_distribution=config["number_distribution"],
        max_photon_number=config["max_photon_number"],
    )


def brightness_spec(config):
    return BrightnessSpec(
        pairs_per_s_per_pm_per_mw=config["brightness_pairs_per_s_per_pm_per_mw"],
        filter_fwhm_pm=config["interfering_filter_fwhm_pm"],
        pump_power_mw=config["pump_power_mw"],
        repetition_rate_mhz=config["laser_rep_rate_mhz"],
    )


def detector_model(config):
    return DetectorModel(
        quantum_efficiency=config["detector_efficiency"],
        dark_prob_per_ns=config["dark_prob_per_ns"],
        gate_width_ns=config["gate_width_ns"],
    )


def trigger_config(config):
    return TriggerConfig(
        laser_rep_rate_mhz=config["laser_rep_rate_mhz"],
        max_trigger_rate_mhz=config["max_trigger_rate_mhz"],
        effective_rate_mhz=config["effective_trigger_rate_mhz"],
        division_mode=config["division_mode"],
    )


def link_config(config, seed=None):
    src = source_config(config)
    return LinkConfig(
        source_a=src,
        source_b=src,
        emission=emission_model(config),
        trigger=trigger_config(config),
        detectors=(detector_model(config),) * 4,
        arm_transmissions=(config["arm_transmission"],) * 4,
        interfering_delay_ps=config["interfering_delay_ps"],
        synchronization_jitter_sigma_ps=config["sync_jitter_sigma_ps"],
        coincidence_window_ns=config["coincidence_window_ns"],
        rng_seed=config["rng_seed"] if seed is None else int(seed),
    )
