# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled event kernel for strata where both sources emit.

Bit-for-bit equivalent to the pure-Python backend: both consume the same
pre-drawn uniform block in the same order, so swapping backends never
changes a sampled trajectory.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND_NAME = "cython"


def simulate_active_stratum(int na, int nb,
                            double[::1] overlaps,
                            double[:, ::1] uniforms,
                            p_detect, p_dark,
                            double[::1] quantum_cdf,
                            double[::1] classical_cdf):
    """See the pure-Python backend for the full contract."""
    cdef Py_ssize_t n_events = overlaps.shape[0]
    cdef int n = na + nb
    cdef double p_ha = p_detect[0], p_hb = p_detect[1]
    cdef double p_o1 = p_detect[2], p_o2 = p_detect[3]
    cdef double d_ha = p_dark[0], d_hb = p_dark[1]
    cdef double d_o1 = p_dark[2], d_o2 = p_dark[3]
    cdef double th_ha = 1.0 - (1.0 - d_ha) * (1.0 - p_ha) ** na
    cdef double th_hb = 1.0 - (1.0 - d_hb) * (1.0 - p_hb) ** nb
    cdef bint pair_cell = na == 1 and nb == 1
    cdef Py_ssize_t i
    cdef int m1, m2, k
    cdef double t, u_branch, u_occ
    cdef long c4 = 0, genuine = 0, c2a = 0, c2b = 0
    cdef bint ha, hb, o1, o2

    # per-occupancy output-detector thresholds, indexed by photon count
    cdef double[::1] th_o1 = np.empty(n + 1)
    cdef double[::1] th_o2 = np.empty(n + 1)
    for k in range(n + 1):
        th_o1[k] = 1.0 - (1.0 - d_o1) * (1.0 - p_o1) ** k
        th_o2[k] = 1.0 - (1.0 - d_o2) * (1.0 - p_o2) ** k

    for i in range(n_events):
        t = overlaps[i]
        u_branch = uniforms[i, 0]
        u_occ = uniforms[i, 1]
        if pair_cell:
            m1 = 0
            if u_occ >= 0.5 * t:
                m1 += 1
            if u_occ >= 1.0 - 0.5 * t:
                m1 += 1
        elif u_branch < t:
            m1 = _inverse_cdf(quantum_cdf, u_occ, n)
        else:
            m1 = _inverse_cdf(classical_cdf, u_occ, n)
        m2 = n - m1

        ha = uniforms[i, 2] < th_ha
        hb = uniforms[i, 3] < th_hb
        o1 = uniforms[i, 4] < th_o1[m1]
        o2 = uniforms[i, 5] < th_o2[m2]

        if ha and hb and o1 and o2:
            c4 += 1
        # monitored two-folds: herald plus the pair photon on either output
        if ha and (o1 or o2):
            c2a += 1
        if hb and (o1 or o2):
            c2b += 1
        if (pair_cell and m1 == 1
                and uniforms[i, 2] < p_ha and uniforms[i, 3] < p_hb
                and uniforms[i, 4] < p_o1 and uniforms[i, 5] < p_o2):
            genuine += 1

    out = np.empty(4, dtype=np.int64)
    out[0] = c4
    out[1] = genuine
    out[2] = c2a
    out[3] = c2b
    return out


cdef inline int _inverse_cdf(double[::1] cdf, double u, int n) nogil:
    # matches numpy searchsorted(cdf, u, side="right") clipped to [0, n]
    cdef int m = 0
    while m < n and u >= cdf[m]:
        m += 1
    return m
