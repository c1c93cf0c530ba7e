"""Unit conversions.

Internally everything spectral lives in angular frequency (rad/s); all
public interfaces speak nm, pm, ps, ns, mW, MHz.  Vacuum speed of light
is exact.
"""

import numpy as np

C_M_PER_S = 299_792_458.0

# Gaussian time-bandwidth product for intensity FWHMs (transform limit).
GAUSSIAN_TBP = 0.441  # 2*ln(2)/pi = 0.4413

# FWHM of a Gaussian in units of its standard deviation.
GAUSSIAN_FWHM_PER_SIGMA = 2.0 * np.sqrt(2.0 * np.log(2.0))


def omega_from_wavelength_nm(wavelength_nm):
    """Angular frequency (rad/s) of a vacuum wavelength in nm."""
    return 2.0 * np.pi * C_M_PER_S / (np.asarray(wavelength_nm) * 1e-9)


def wavelength_nm_from_omega(omega):
    """Vacuum wavelength (nm) of an angular frequency in rad/s."""
    return 2.0 * np.pi * C_M_PER_S / np.asarray(omega) * 1e9


def fwhm_omega_from_fwhm_nm(fwhm_nm, center_nm):
    """Convert a small wavelength FWHM (nm) at center_nm into an angular-frequency FWHM (rad/s).

    Uses |dω/dλ| = 2πc/λ²; accurate for fwhm ≪ center.
    """
    lam = float(center_nm) * 1e-9
    return 2.0 * np.pi * C_M_PER_S / lam**2 * float(fwhm_nm) * 1e-9


def fwhm_nm_from_fwhm_omega(fwhm_omega, center_nm):
    """Inverse of :func:`fwhm_omega_from_fwhm_nm`."""
    lam = float(center_nm) * 1e-9
    return float(fwhm_omega) * lam**2 / (2.0 * np.pi * C_M_PER_S) * 1e9
