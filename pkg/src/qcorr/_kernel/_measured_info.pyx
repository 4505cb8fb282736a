# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled closed-form evaluation of the measured mutual information.

For a two-qubit state given by its expectation-value coordinates
(x, y, t) and a projective readout of qubit b along the unit vector
n(theta, phi), the outcome probabilities are (1 +- y.n)/2 and the
conditioned states of qubit a have Bloch vectors (x +- t n)/(1 +- y.n).
The measured information then reduces to binary entropies of Bloch-vector
lengths, which is what this kernel evaluates.

Results match the explicit projector/partial-trace route to near machine
precision; see the package tests.
"""

from libc.math cimport cos, log2, sin, sqrt

cdef double PROB_FLOOR = 1e-12


cdef inline double _h2(double p) noexcept nogil:
    # binary entropy in bits, 0 at both endpoints
    cdef double q = 1.0 - p
    cdef double s = 0.0
    if p > 0.0:
        s -= p * log2(p)
    if q > 0.0:
        s -= q * log2(q)
    return s


cdef double _point(const double* x, const double* y, const double* t,
                   double theta, double phi) noexcept nogil:
    cdef double st = sin(theta)
    cdef double n0 = st * cos(phi)
    cdef double n1 = st * sin(phi)
    cdef double n2 = cos(theta)
    cdef double yn = y[0] * n0 + y[1] * n1 + y[2] * n2
    cdef double v0 = t[0] * n0 + t[1] * n1 + t[2] * n2
    cdef double v1 = t[3] * n0 + t[4] * n1 + t[5] * n2
    cdef double v2 = t[6] * n0 + t[7] * n1 + t[8] * n2
    cdef double xnorm = sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2])
    if xnorm > 1.0:
        xnorm = 1.0
    cdef double marginal = _h2(0.5 * (1.0 + xnorm))
    cdef double conditional = 0.0
    cdef double s = 1.0
    cdef double p, r0, r1, r2, rnorm
    cdef int k
    for k in range(2):
        p = 0.5 * (1.0 + s * yn)
        if p > PROB_FLOOR:
            r0 = (x[0] + s * v0) / (2.0 * p)
            r1 = (x[1] + s * v1) / (2.0 * p)
            r2 = (x[2] + s * v2) / (2.0 * p)
            rnorm = sqrt(r0 * r0 + r1 * r1 + r2 * r2)
            if rnorm > 1.0:
                rnorm = 1.0
            conditional += p * _h2(0.5 * (1.0 + rnorm))
        s = -s
    return marginal - conditional


def measured_info(double[::1] x, double[::1] y, double[:, ::1] t,
                  double theta, double phi):
    """Measured mutual information in bits at one readout direction."""
    return _point(&x[0], &y[0], &t[0, 0], theta, phi)


def measured_info_grid(double[::1] x, double[::1] y, double[:, ::1] t,
                       double[::1] thetas, double[::1] phis,
                       double[:, ::1] out):
    """Fill ``out[i, j]`` with the measured information at
    ``(thetas[i], phis[j])``."""
    cdef Py_ssize_t i, j
    cdef Py_ssize_t nt = thetas.shape[0]
    cdef Py_ssize_t nph = phis.shape[0]
    if out.shape[0] != nt or out.shape[1] != nph:
        raise ValueError("out must have shape (len(thetas), len(phis))")
    with nogil:
        for i in range(nt):
            for j in range(nph):
                out[i, j] = _point(&x[0], &y[0], &t[0, 0], thetas[i], phis[j])
