"""Per-pulse pair statistics, exhaustive outcome enumeration and rate
predictions.

The enumeration walks every truncated photon-number outcome (n_a, n_b),
every beam-splitter occupancy and the detector fire/no-fire algebra in
closed form; it is the oracle the Monte Carlo is checked against.
"""

from dataclasses import dataclass
from math import exp, factorial

import numpy as np

from .beamsplitter import output_distribution
from .detectors import DetectorModel
from .errors import ConfigurationError, DomainError

DETECTOR_ORDER = ("herald_a", "herald_b", "bs_out_1", "bs_out_2")


@dataclass(frozen=True)
class EmissionModel:
    mean_pairs_per_pulse: float = 0.04
    number_distribution: str = "thermal"  # thermal | poissonian | deterministic
    max_photon_number: int = 4

    def __post_init__(self):
        if self.mean_pairs_per_pulse < 0.0:
            raise DomainError("mean pair number must be non-negative")
        if self.max_photon_number < 1:
            raise DomainError("max_photon_number must be at least 1")


@dataclass(frozen=True)
class BrightnessSpec:
    pairs_per_s_per_pm_per_mw: float = 1.6e3
    filter_fwhm_pm: float = 250.0
    pump_power_mw: float = 1.0
    repetition_rate_mhz: float = 76.0

    def __post_init__(self):
        if min(
            self.pairs_per_s_per_pm_per_mw,
            self.filter_fwhm_pm,
            self.pump_power_mw,
            self.repetition_rate_mhz,
        ) <= 0:
            raise DomainError("all brightness-spec fields must be positive")


def mean_pairs_per_pulse(spec):
    """μ = brightness × filter FWHM × pump power / repetition rate."""
    return (
        spec.pairs_per_s_per_pm_per_mw
        * spec.filter_fwhm_pm
        * spec.pump_power_mw
        / (spec.repetition_rate_mhz * 1e6)
    )


def photon_number_distribution(model):
    """Truncated, renormalized p(n) for n = 0..max_photon_number."""
    mu = model.mean_pairs_per_pulse
    if mu < 0:
        raise DomainError("negative mean pair number")
    n = np.arange(model.max_photon_number + 1)
    if model.number_distribution == "thermal":
        p = mu**n / (1.0 + mu) ** (n + 1)
    elif model.number_distribution == "poissonian":
        p = np.array([exp(-mu) * mu**k / factorial(k) for k in n])
    elif model.number_distribution == "deterministic":
        p = np.zeros(len(n))
        p[min(int(round(mu)), model.max_photon_number)] = 1.0
    else:
        raise ConfigurationError(
            f"unknown number distribution {model.number_distribution!r}"
        )
    return p / p.sum()


@dataclass(frozen=True)
class DetectionParams:
    """Flattened per-detector detection probabilities for one trigger gate.

    Order follows DETECTOR_ORDER: heralds of source a and b, then the two
    beam-splitter outputs.
    """

    p_detect: tuple  # per-photon detection probability (transmission x QE)
    p_dark: tuple  # dark probability per gate

    @staticmethod
    def from_models(detectors, arm_transmissions, window_ns=None):
        if len(detectors) != 4 or len(arm_transmissions) != 4:
            raise ConfigurationError("need 4 detectors and 4 arm transmissions")
        for t in arm_transmissions:
            if not 0.0 < t <= 1.0:
                raise DomainError("arm transmissions must be in (0, 1]")
        return DetectionParams(
            p_detect=tuple(
                t * d.quantum_efficiency for t, d in zip(arm_transmissions, detectors)
            ),
            p_dark=tuple(d.dark_prob_per_gate(window_ns) for d in detectors),
        )


def _fire(m, p, dark):
    return 1.0 - (1.0 - dark) * (1.0 - p) ** m


def _fire_photon(m, p):
    return 1.0 - (1.0 - p) ** m


@dataclass(frozen=True)
class CellProbabilities:
    fourfold: float
    twofold_a: float
    twofold_b: float
    genuine_fourfold: float


def cell_outcome_probabilities(na, nb, overlap, params):
    """Detection outcome probabilities for a trigger with exactly (na, nb)
    pairs emitted; ``overlap`` only matters when both sources contribute."""
    p_ha, p_hb, p_o1, p_o2 = params.p_detect
    d_ha, d_hb, d_o1, d_o2 = params.p_dark
    ha = _fire(na, p_ha, d_ha)
    hb = _fire(nb, p_hb, d_hb)
    occ = output_distribution(na, nb, overlap)
    n = na + nb
    m1 = np.arange(n + 1)
    o1 = _fire(m1, p_o1, d_o1)
    o2 = _fire(n - m1, p_o2, d_o2)
    e12 = float(np.dot(occ, o1 * o2))
    # a two-fold is the herald plus the pair photon on *either* splitter
    # output; the photon exits one port or the other, so conditioning on a
    # single port would leak the interference into the monitor channel
    e_any = float(np.dot(occ, o1 + o2 - o1 * o2))
    genuine = 0.0
    if na == 1 and nb == 1:
        # all four detections photon-driven and the pair split across outputs
        genuine = (
            _fire_photon(1, p_ha)
            * _fire_photon(1, p_hb)
            * occ[1]
            * _fire_photon(1, p_o1)
            * _fire_photon(1, p_o2)
        )
    return CellProbabilities(ha * hb * e12, ha * e_any, hb * e_any, genuine)


@dataclass(frozen=True)
class TriggerProbabilities:
    fourfold: float
    twofold_a: float
    twofold_b: float
    genuine_fourfold: float

    @property
    def accidental_fourfold(self):
        return self.fourfold - self.genuine_fourfold


def trigger_outcome_probabilities(emission, params, overlap):
    """Exhaustively enumerated per-trigger outcome probabilities."""
    pn = photon_number_distribution(emission)
    tot = np.zeros(4)
    for na in range(len(pn)):
        for nb in range(len(pn)):
            w = pn[na] * pn[nb]
            if w == 0.0:
                continue
            c = cell_outcome_probabilities(na, nb, overlap, params)
            tot += w * np.array(
                [c.fourfold, c.twofold_a, c.twofold_b, c.genuine_fourfold]
            )
    return TriggerProbabilities(*tot)


def predict_raw_visibility(net_visibility, emission, detectors, arm_transmissions=(1.0,) * 4, window_ns=None):
    """Raw dip visibility once multi-pair and dark accidentals are stacked on
    the ideal floor; ``net_visibility`` is the single-pair interference
    visibility (the zero-delay spectral overlap)."""
    if not 0.0 <= net_visibility <= 1.0:
        raise DomainError("net visibility must be in [0, 1]")
    if emission.mean_pairs_per_pulse == 0.0:
        # no pairs: the dip has no accidental floor to stack, so raw = net
        return net_visibility
    params = DetectionParams.from_models(detectors, arm_transmissions, window_ns)
    dip = trigger_outcome_probabilities(emission, params, net_visibility)
    base = trigger_outcome_probabilities(emission, params, 0.0)
    if base.fourfold == 0.0:
        return net_visibility
    return 1.0 - dip.fourfold / base.fourfold


def accidental_rate(emission, detectors, window_ns, trigger_rate_mhz, arm_transmissions=(1.0,) * 4, overlap=0.0):
    """Expected four-fold accidental rate (1/s): everything except the
    genuine one-pair-per-source interference events."""
    params = DetectionParams.from_models(detectors, arm_transmissions, window_ns)
    probs = trigger_outcome_probabilities(emission, params, overlap)
    return probs.accidental_fourfold * trigger_rate_mhz * 1e6


@dataclass(frozen=True)
class RatePrediction:
    twofold_a_per_s: float
    twofold_b_per_s: float
    fourfold_per_s: float
    accidental_fourfold_per_s: float


def effective_pair_rate(detectors, trigger_rate_mhz, emission, arm_transmissions=(1.0,) * 4, overlap=0.0, window_ns=None):
    """Detected two-fold and four-fold rates at the given trigger rate."""
    params = DetectionParams.from_models(detectors, arm_transmissions, window_ns)
    probs = trigger_outcome_probabilities(emission, params, overlap)
    r = trigger_rate_mhz * 1e6
    return RatePrediction(
        twofold_a_per_s=probs.twofold_a * r,
        twofold_b_per_s=probs.twofold_b * r,
        fourfold_per_s=probs.fourfold * r,
        accidental_fourfold_per_s=probs.accidental_fourfold * r,
    )


def fit_excess_transmission(target_twofold_per_s, detectors, trigger_rate_mhz, emission, window_ns=None):
    """Solve for the single per-arm excess transmission that reproduces a
    measured two-fold rate; returns the fitted transmission in (0, 1]."""
    from scipy.optimize import brentq

    def f(t):
        pred = effective_pair_rate(
            detectors, trigger_rate_mhz, emission, arm_transmissions=(t,) * 4,
            window_ns=window_ns,
        )
        return pred.twofold_a_per_s - target_twofold_per_s

    lo, hi = 1e-6, 1.0
    if f(hi) < 0:
        raise DomainError(
            "target two-fold rate unreachable even with lossless arms"
        )
    return float(brentq(f, lo, hi, xtol=1e-12, rtol=1e-12))
