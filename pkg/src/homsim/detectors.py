"""Gated single-photon detector model (InGaAs APD class)."""

from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class DetectorModel:
    quantum_efficiency: float = 0.10
    dark_prob_per_ns: float = 1e-5
    gate_width_ns: float = 2.5
    timing_jitter_sigma_ps: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.quantum_efficiency <= 1.0:
            raise DomainError("quantum_efficiency must be in [0, 1]")
        if self.dark_prob_per_ns < 0.0:
            raise DomainError("dark_prob_per_ns must be non-negative")
        if self.gate_width_ns <= 0.0:
            raise DomainError("gate_width_ns must be positive")

    def dark_prob_per_gate(self, window_ns=None):
        """Dark-count probability per opened gate.

        A coincidence window narrower than the gate shortens the effective
        dark exposure; a wider one cannot extend it past the gate.
        """
        exposure = self.gate_width_ns
        if window_ns is not None:
            exposure = min(exposure, window_ns)
        return self.dark_prob_per_ns * exposure
