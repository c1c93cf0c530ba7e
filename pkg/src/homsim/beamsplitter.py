"""Output photon-number statistics of a 50/50 beam splitter.

For a single pair per source the cross-output probability follows the
analytic two-photon coincidence probability; higher photon numbers mix the
fully-indistinguishable Fock-interference distribution with the classical
(distinguishable-sources) binomial one, weighted by the spectral overlap.
"""

from functools import lru_cache
from math import comb, factorial

import numpy as np


@lru_cache(maxsize=None)
def quantum_output_distribution(na, nb):
    """P(m) of finding m photons in output 1 for input |na, nb⟩, all photons
    mutually indistinguishable."""
    pa = np.array([comb(na, k) for k in range(na + 1)], dtype=float)
    pb = np.array(
        [comb(nb, k) * (-1.0) ** (nb - k) for k in range(nb + 1)], dtype=float
    )
    coef = np.convolve(pa, pb)  # coefficient of c^k d^(n-k)
    n = na + nb
    p = np.array(
        [coef[k] ** 2 * factorial(k) * factorial(n - k) for k in range(n + 1)]
    )
    return p / (2.0**n * factorial(na) * factorial(nb))


@lru_cache(maxsize=None)
def classical_output_distribution(na, nb):
    """Each photon routed independently; same-source bunching does not alter
    occupancy statistics, so this is also the distinguishable-sources quantum
    result."""
    n = na + nb
    return np.array([comb(n, k) * 0.5**n for k in range(n + 1)])


def output_distribution(na, nb, overlap):
    """Occupancy distribution P(m1) with cross-source indistinguishability
    ``overlap`` = Tr[ρ_a D ρ_b D†] ∈ [0, 1].

    The single-pair-per-source case follows the convention that the
    cross-output frequency equals twice the analytic coincidence
    probability, i.e. 1 − overlap.
    """
    t = float(np.clip(overlap, 0.0, 1.0))
    if na == 1 and nb == 1:
        return np.array([0.5 * t, 1.0 - t, 0.5 * t])
    if na >= 1 and nb >= 1:
        return t * quantum_output_distribution(na, nb) + (
            1.0 - t
        ) * classical_output_distribution(na, nb)
    return classical_output_distribution(na, nb)
