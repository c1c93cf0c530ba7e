"""Monte Carlo pulse-train simulator for the two-source interference setup."""

from .config import LinkConfig, TriggerConfig
from .fitting import DipFit, fit_dip
from .kernels import active_kernel, kernel_backend
from .simulate import DipScanResult, dip_scan, run_trigger_stream

__all__ = [
    "DipFit",
    "DipScanResult",
    "LinkConfig",
    "TriggerConfig",
    "active_kernel",
    "dip_scan",
    "fit_dip",
    "kernel_backend",
    "run_trigger_stream",
]
