"""Configuration containers for the pulse-train Monte Carlo."""

import math
from dataclasses import dataclass, field

from ..detectors import DetectorModel
from ..errors import ConfigurationError, DomainError
from ..pair_stats import EmissionModel
from ..sources import SourceConfig, reference_source


@dataclass(frozen=True)
class TriggerConfig:
    """Trigger derivation from the pump laser clock.

    The detectors cannot be gated at the full laser repetition rate, so the
    clock is divided down; a random divider passes each pulse independently
    with the ratio ``effective_rate / laser_rate``, a fixed divider passes
    every k-th pulse.
    """

    laser_rep_rate_mhz: float = 76.0
    max_trigger_rate_mhz: float = 1.0
    effective_rate_mhz: float = 0.6
    division_mode: str = "random_divider"  # random_divider | fixed_divider

    def __post_init__(self):
        if min(self.laser_rep_rate_mhz, self.max_trigger_rate_mhz, self.effective_rate_mhz) <= 0:
            raise DomainError("trigger rates must be positive")
        if self.effective_rate_mhz > self.max_trigger_rate_mhz:
            raise DomainError("effective trigger rate exceeds the gating limit")
        if self.division_mode not in ("random_divider", "fixed_divider"):
            raise ConfigurationError(
                f"unknown division mode {self.division_mode!r}"
            )

    def trigger_rate_hz(self):
        """Realized trigger rate after division."""
        if self.division_mode == "random_divider":
            return self.effective_rate_mhz * 1e6
        k = math.ceil(self.laser_rep_rate_mhz / self.max_trigger_rate_mhz)
        return self.laser_rep_rate_mhz * 1e6 / k


def _default_detectors():
    return (DetectorModel(),) * 4


@dataclass(frozen=True)
class LinkConfig:
    """Everything the Monte Carlo needs for the full two-source experiment."""

    source_a: SourceConfig = field(default_factory=reference_source)
    source_b: SourceConfig = field(default_factory=reference_source)
    emission: EmissionModel = field(default_factory=EmissionModel)
    trigger: TriggerConfig = field(default_factory=TriggerConfig)
    detectors: tuple = field(default_factory=_default_detectors)
    trigger_detector: DetectorModel = field(
        default_factory=lambda: DetectorModel(quantum_efficiency=1.0, dark_prob_per_ns=0.0)
    )
    arm_transmissions: tuple = (1.0, 1.0, 1.0, 1.0)
    interfering_delay_ps: float = 0.0
    synchronization_jitter_sigma_ps: float = 0.0
    coincidence_window_ns: float = 2.5
    rng_seed: int = 0

    def __post_init__(self):
        if len(self.detectors) != 4:
            raise ConfigurationError("exactly four signal detectors are required")
        if len(self.arm_transmissions) != 4:
            raise ConfigurationError("exactly four arm transmissions are required")
        if self.synchronization_jitter_sigma_ps < 0:
            raise DomainError("synchronization jitter must be non-negative")
        if self.coincidence_window_ns <= 0:
            raise DomainError("coincidence window must be positive")
