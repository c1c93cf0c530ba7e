"""Spectral amplitudes, joint spectral amplitudes, Schmidt analysis and
analytic two-photon interference.

Everything here is a pure function of its inputs; arrays are treated as
immutable after construction.  Internal unit is angular frequency (rad/s);
constructors accept nm/pm and convert once.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, CoverageError, DegenerateInputError, DomainError
from .units import (
    C_M_PER_S,
    fwhm_omega_from_fwhm_nm,
    omega_from_wavelength_nm,
)

_LN2 = np.log(2.0)

SHAPE_TAGS = ("gaussian", "lorentzian", "flattop")

# Exponent of the super-Gaussian used for "flattop"; high enough that the
# profile is flat over most of the FWHM but still smooth.
_FLATTOP_ORDER = 10


def coherence_time(fwhm_wavelength_pm, center_wavelength_nm):
    """Coherence time in ps for a Gaussian filter: 0.44 λ²/(c Δλ)."""
    if fwhm_wavelength_pm <= 0 or center_wavelength_nm <= 0:
        raise DomainError("coherence_time needs positive bandwidth and wavelength")
    lam = center_wavelength_nm * 1e-9
    dlam = fwhm_wavelength_pm * 1e-12
    return 0.44 * lam**2 / (C_M_PER_S * dlam) * 1e12


@dataclass(frozen=True)
class FrequencyGrid:
    """Uniform 1D grid in angular frequency (rad/s)."""

    center: float
    span: float
    n_points: int

    def __post_init__(self):
        if self.n_points < 16:
            raise DomainError("FrequencyGrid needs at least 16 points")
        if self.span <= 0:
            raise DomainError("FrequencyGrid span must be positive")

    @property
    def omegas(self):
        return self.center + np.linspace(-0.5, 0.5, self.n_points) * self.span

    @property
    def step(self):
        return self.span / (self.n_points - 1)

    def covers(self, omega_lo, omega_hi):
        w = self.omegas
        return w[0] <= omega_lo and omega_hi <= w[-1]

    @staticmethod
    def around_wavelength(center_nm, span_nm, n_points=512):
        """Grid centered on a vacuum wavelength with a span given in nm."""
        return FrequencyGrid(
            center=float(omega_from_wavelength_nm(center_nm)),
            span=fwhm_omega_from_fwhm_nm(span_nm, center_nm),
            n_points=n_points,
        )


def intensity_shape(detuning, fwhm, shape):
    """Intensity profile with unit peak and the requested intensity FWHM."""
    x = np.asarray(detuning, dtype=float)
    if shape == "gaussian":
        return np.exp(-4.0 * _LN2 * (x / fwhm) ** 2)
    if shape == "lorentzian":
        return 1.0 / (1.0 + (2.0 * x / fwhm) ** 2)
    if shape == "flattop":
        return np.exp(-_LN2 * np.abs(2.0 * x / fwhm) ** _FLATTOP_ORDER)
    raise ConfigurationError(f"unknown shape tag {shape!r}")


def amplitude_shape(detuning, fwhm, shape):
    """Amplitude whose squared modulus is :func:`intensity_shape`."""
    return np.sqrt(intensity_shape(detuning, fwhm, shape))


@dataclass(frozen=True)
class SpectralAmplitude:
    grid: FrequencyGrid
    values: np.ndarray
    shape_tag: str = "custom"
    normalized: bool = False

    @property
    def norm_squared(self):
        return float(np.sum(np.abs(self.values) ** 2) * self.grid.step)


@dataclass(frozen=True)
class FilterSpec:
    center_wavelength_nm: float
    fwhm_pm: float
    shape: str = "gaussian"
    peak_transmission: float = 1.0

    def __post_init__(self):
        if self.fwhm_pm <= 0 or self.center_wavelength_nm <= 0:
            raise DegenerateInputError("filter needs positive center and width")
        if not 0.0 < self.peak_transmission <= 1.0:
            raise DomainError("peak_transmission must be in (0, 1]")
        if self.shape not in SHAPE_TAGS:
            raise ConfigurationError(f"unknown filter shape {self.shape!r}")

    @property
    def center_omega(self):
        return float(omega_from_wavelength_nm(self.center_wavelength_nm))

    @property
    def fwhm_omega(self):
        return fwhm_omega_from_fwhm_nm(self.fwhm_pm * 1e-3, self.center_wavelength_nm)


def make_pump_spectrum(grid, center_wavelength_nm, fwhm_wavelength_pm, shape="gaussian"):
    """Normalized pump spectral amplitude on ``grid``.

    The intensity FWHM equals the requested width converted to angular
    frequency; the L2 norm (Σ|v|²Δω) is 1.
    """
    if fwhm_wavelength_pm <= 0:
        raise DegenerateInputError("pump bandwidth must be positive")
    w0 = float(omega_from_wavelength_nm(center_wavelength_nm))
    fw = fwhm_omega_from_fwhm_nm(fwhm_wavelength_pm * 1e-3, center_wavelength_nm)
    if not grid.covers(w0 - 3 * fw, w0 + 3 * fw):
        raise CoverageError(
            f"grid does not cover pump center ± 3 FWHM "
            f"({center_wavelength_nm} nm, {fwhm_wavelength_pm} pm)"
        )
    vals = amplitude_shape(grid.omegas - w0, fw, shape).astype(complex)
    vals /= np.sqrt(np.sum(np.abs(vals) ** 2) * grid.step)
    return SpectralAmplitude(grid=grid, values=vals, shape_tag=shape, normalized=True)


def make_filter_amplitude(grid, filt):
    """Amplitude transmission of ``filt`` sampled on ``grid``; peak √T."""
    w0 = filt.center_omega
    w = grid.omegas
    if not (w[0] <= w0 <= w[-1]):
        raise CoverageError(
            f"filter center {filt.center_wavelength_nm} nm outside grid"
        )
    vals = np.sqrt(filt.peak_transmission) * amplitude_shape(
        w - w0, filt.fwhm_omega, filt.shape
    ).astype(complex)
    return SpectralAmplitude(grid=grid, values=vals, shape_tag=filt.shape)


def _shape_intensity_integral(fwhm, shape, width_mult=12.0, n=8001):
    x = np.linspace(-width_mult * fwhm, width_mult * fwhm, n)
    return float(np.trapezoid(intensity_shape(x, fwhm, shape), x))


@dataclass(frozen=True)
class JointSpectralAmplitude:
    """Biphoton amplitude f(ω_s, ω_i) on a signal × idler grid.

    ``values`` are scaled so the *untruncated* state has unit norm;
    ``norm_squared`` is the weight surviving on (and, after filtering,
    through) the grid window, relative to the unfiltered state.
    """

    signal_grid: FrequencyGrid
    idler_grid: FrequencyGrid
    values: np.ndarray
    norm_squared: float = 1.0

    def grid_norm_squared(self):
        return float(
            np.sum(np.abs(self.values) ** 2)
            * self.signal_grid.step
            * self.idler_grid.step
        )


def build_jsa(
    pump,
    phasematch_center_nm,
    phasematch_fwhm_nm,
    phasematch_shape,
    signal_grid,
    idler_grid,
):
    """JSA f(ω_s, ω_i) = α(ω_s + ω_i) · φ(ω_s − ω_i).

    α is the pump amplitude at the sum frequency; φ is the phase-matching
    amplitude over the difference coordinate, with an intensity FWHM such
    that the single-photon marginal for a monochromatic pump has the quoted
    emission bandwidth.
    """
    if phasematch_fwhm_nm <= 0:
        raise DegenerateInputError("phase-matching bandwidth must be positive")
    ws = signal_grid.omegas
    wi = idler_grid.omegas
    sum_lo, sum_hi = ws[0] + wi[0], ws[-1] + wi[-1]
    pw = pump.grid.omegas
    if pw[0] > sum_lo or pw[-1] < sum_hi:
        raise ConfigurationError(
            "pump grid does not cover the signal+idler sum-frequency range"
        )
    WS, WI = np.meshgrid(ws, wi, indexing="ij")
    alpha = np.interp(WS + WI, pw, pump.values.real) + 1j * np.interp(
        WS + WI, pw, pump.values.imag
    )
    # Difference-coordinate detuning relative to the grid centers; for a
    # monochromatic pump a signal detuning delta maps to 2*delta here, hence
    # the factor 2 on the FWHM.
    fw_pm = 2.0 * fwhm_omega_from_fwhm_nm(phasematch_fwhm_nm, phasematch_center_nm)
    diff = (WS - signal_grid.center) - (WI - idler_grid.center)
    phi = amplitude_shape(diff, fw_pm, phasematch_shape)
    values = alpha * phi

    # Full-state norm: the model is separable in the rotated (sum, difference)
    # coordinates, so the 2D integral factorizes into two 1D ones with a
    # Jacobian of 1/2.
    pump_int = float(np.trapezoid(np.abs(pump.values) ** 2, pw))
    phi_int = _shape_intensity_integral(fw_pm, phasematch_shape)
    full_norm = 0.5 * pump_int * phi_int
    if full_norm <= 0:
        raise DegenerateInputError("JSA has zero norm")
    values = values / np.sqrt(full_norm)
    jsa = JointSpectralAmplitude(
        signal_grid=signal_grid, idler_grid=idler_grid, values=values
    )
    return JointSpectralAmplitude(
        signal_grid=signal_grid,
        idler_grid=idler_grid,
        values=values,
        norm_squared=jsa.grid_norm_squared(),
    )


def apply_filters(jsa, signal_filter=None, idler_filter=None):
    """Pointwise product with filter amplitudes; updates the surviving weight."""
    values = jsa.values
    if signal_filter is not None:
        fs = make_filter_amplitude(jsa.signal_grid, signal_filter)
        values = values * fs.values[:, None]
    if idler_filter is not None:
        fi = make_filter_amplitude(jsa.idler_grid, idler_filter)
        values = values * fi.values[None, :]
    out = JointSpectralAmplitude(
        signal_grid=jsa.signal_grid, idler_grid=jsa.idler_grid, values=values
    )
    return JointSpectralAmplitude(
        signal_grid=jsa.signal_grid,
        idler_grid=jsa.idler_grid,
        values=values,
        norm_squared=out.grid_norm_squared(),
    )


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Schmidt coefficients λ_k (descending, Σλ_k² = 1)."""

    coefficients: np.ndarray

    @property
    def count(self):
        return len(self.coefficients)

    @property
    def purity(self):
        return float(np.sum(self.coefficients**4))

    @property
    def schmidt_number(self):
        return 1.0 / self.purity


def schmidt_decompose(jsa):
    total = float(np.sum(np.abs(jsa.values) ** 2))
    if total <= 0.0:
        raise DegenerateInputError("cannot decompose a zero-norm JSA")
    s = np.linalg.svd(jsa.values, compute_uv=False)
    s = s / np.sqrt(np.sum(s**2))
    return SchmidtSpectrum(coefficients=s)


@dataclass(frozen=True)
class DensityOperator:
    """Single-photon density matrix in the frequency basis of ``grid``."""

    grid: FrequencyGrid
    matrix: np.ndarray

    @property
    def purity(self):
        return float(np.real(np.trace(self.matrix @ self.matrix)))


def heralded_state(jsa, heralded_arm):
    """Reduced state of the ``heralded_arm`` photon (partial trace over the other)."""
    total = float(np.sum(np.abs(jsa.values) ** 2))
    if total <= 0.0:
        raise DegenerateInputError("cannot herald from a zero-norm JSA")
    f = jsa.values / np.sqrt(total)
    if heralded_arm == "signal":
        rho = f @ f.conj().T
        grid = jsa.signal_grid
    elif heralded_arm == "idler":
        rho = f.conj().T @ f
        grid = jsa.idler_grid
    else:
        raise ConfigurationError("heralded_arm must be 'signal' or 'idler'")
    rho = rho / np.real(np.trace(rho))
    return DensityOperator(grid=grid, matrix=rho)


def spectral_overlap(rho_a, rho_b, delay_ps):
    """Tr[ρ_a D(δt) ρ_b D†(δt)] with D the diagonal delay phase e^{iωδt}.

    Real in exact arithmetic for Hermitian inputs; the tiny imaginary
    residue of the discretization is dropped.
    """
    if rho_a.grid != rho_b.grid:
        raise ConfigurationError("density operators live on different grids")
    w = rho_a.grid.omegas
    p = np.exp(1j * w * (delay_ps * 1e-12))
    m = rho_b.matrix * np.outer(p, p.conj())
    return float(np.real(np.sum(rho_a.matrix.T * m)))


def hom_coincidence_probability(rho_a, rho_b, delay_ps):
    """Coincidence probability P_c(δt) = ½(1 − Tr[ρ_a D ρ_b D†]), in [0, ½]."""
    t = spectral_overlap(rho_a, rho_b, delay_ps)
    return float(np.clip(0.5 * (1.0 - t), 0.0, 0.5))


def analytic_dip_curve(rho_a, rho_b, delays_ps):
    """[(δt, P_c(δt))] for each delay in ``delays_ps``."""
    return [(float(d), hom_coincidence_probability(rho_a, rho_b, d)) for d in delays_ps]


def hom_visibility(rho_a, rho_b):
    """Maximum dip visibility 1 − P_c(0)/P_c(∞) = Tr[ρ_a ρ_b]."""
    return 1.0 - 2.0 * hom_coincidence_probability(rho_a, rho_b, 0.0)


def jitter_smeared_overlap(rho_a, rho_b, delay_ps, jitter_sigma_ps, n_sigma=4.0, n_nodes=41):
    """Overlap averaged over a Gaussian delay jitter (trapezoid quadrature)."""
    if jitter_sigma_ps <= 0.0:
        return spectral_overlap(rho_a, rho_b, delay_ps)
    j = np.linspace(-n_sigma, n_sigma, n_nodes) * jitter_sigma_ps
    w = np.exp(-0.5 * (j / jitter_sigma_ps) ** 2)
    w /= w.sum()
    return float(sum(wk * spectral_overlap(rho_a, rho_b, delay_ps + jk) for wk, jk in zip(w, j)))
