"""Gaussian dip fitting for measured coincidence scans."""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from ..errors import DegenerateInputError, FitConvergenceError

_FWHM_PER_SIGMA = 2.0 * np.sqrt(2.0 * np.log(2.0))


@dataclass(frozen=True)
class DipFit:
    baseline: float
    visibility: float
    center_ps: float
    sigma_ps: float
    covariance: np.ndarray

    @property
    def fwhm_ps(self):
        return _FWHM_PER_SIGMA * self.sigma_ps

    @property
    def errors(self):
        """One-sigma parameter uncertainties (baseline, V, center, sigma)."""
        return np.sqrt(np.clip(np.diag(self.covariance), 0.0, None))

    def model(self, delays_ps):
        d = np.asarray(delays_ps, dtype=float)
        return self.baseline * (
            1.0
            - self.visibility
            * np.exp(-((d - self.center_ps) ** 2) / (2.0 * self.sigma_ps**2))
        )


def _initial_guess(delays, counts):
    order = np.argsort(counts)
    baseline = float(np.mean(counts[order[-max(3, len(counts) // 4):]]))
    baseline = max(baseline, 1.0)
    vis = float(np.clip(1.0 - counts.min() / baseline, 1e-3, 1.0))
    center = float(delays[int(np.argmin(counts))])
    sigma = max(float(np.ptp(delays)) / 8.0, 1e-3)
    return np.array([baseline, vis, center, sigma])


def fit_dip(delays_ps, counts, initial=None):
    """Weighted least-squares fit of a Gaussian dip to coincidence counts.

    Weights follow counting statistics, sqrt(max(count, 1)).  Raises
    FitConvergenceError (carrying the best iterate) when the optimizer does
    not converge.
    """
    delays = np.asarray(delays_ps, dtype=float)
    counts = np.asarray(counts, dtype=float)
    if delays.shape != counts.shape or delays.ndim != 1:
        raise DegenerateInputError("delays and counts must be matching 1-d arrays")
    if len(delays) < 5:
        raise DegenerateInputError("need at least five scan points to fit a dip")
    if np.all(counts == counts[0]):
        raise DegenerateInputError("counts are constant; no dip to fit")

    sigma_y = np.sqrt(np.maximum(counts, 1.0))
    x0 = np.asarray(initial, dtype=float) if initial is not None else _initial_guess(delays, counts)

    def residuals(p):
        b, v, c, s = p
        model = b * (1.0 - v * np.exp(-((delays - c) ** 2) / (2.0 * s**2)))
        return (model - counts) / sigma_y

    bounds = (
        [0.0, 0.0, delays.min() - np.ptp(delays), 1e-6],
        [np.inf, 1.0, delays.max() + np.ptp(delays), np.inf],
    )
    x0 = np.clip(x0, bounds[0], bounds[1])
    result = least_squares(residuals, x0, bounds=bounds, gtol=1e-8, xtol=1e-12)
    if not result.success:
        raise FitConvergenceError(
            f"dip fit did not converge: {result.message}", best_params=result.x
        )

    dof = max(len(delays) - 4, 1)
    jac = result.jac
    jtj = jac.T @ jac
    try:
        cov = np.linalg.inv(jtj) * 2.0 * result.cost / dof
    except np.linalg.LinAlgError:
        cov = np.full((4, 4), np.nan)
    b, v, c, s = result.x
    return DipFit(
        baseline=float(b),
        visibility=float(v),
        center_ps=float(c),
        sigma_ps=float(abs(s)),
        covariance=cov,
    )
