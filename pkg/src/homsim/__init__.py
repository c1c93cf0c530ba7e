"""Two-photon interference simulator for independent pulsed pair sources.

Covers the whole chain from joint spectral amplitudes and Schmidt
decompositions, through photon-number statistics at a beam splitter, to a
stratified pulse-train Monte Carlo of a four-fold coincidence dip scan,
plus a cross-regime (CW / ps / fs) timing benchmark.
"""

__version__ = "1.0.0"

from .detectors import DetectorModel
from .errors import (
    ConfigurationError,
    CoverageError,
    DegenerateInputError,
    DomainError,
    FitConvergenceError,
    HomsimError,
)
from .pair_stats import BrightnessSpec, EmissionModel
from .sources import SourceConfig, reference_source
from .spectral import (
    FilterSpec,
    FrequencyGrid,
    JointSpectralAmplitude,
    SpectralAmplitude,
    coherence_time,
)

__all__ = [
    "BrightnessSpec",
    "ConfigurationError",
    "CoverageError",
    "DegenerateInputError",
    "DetectorModel",
    "DomainError",
    "EmissionModel",
    "FilterSpec",
    "FitConvergenceError",
    "FrequencyGrid",
    "HomsimError",
    "JointSpectralAmplitude",
    "SourceConfig",
    "SpectralAmplitude",
    "__version__",
    "coherence_time",
    "reference_source",
]
