"""NumPy implementation of the measurement kernel.

Same closed form as the compiled module: readout of qubit b along
n(theta, phi) gives outcome probabilities (1 +- y.n)/2 and conditioned
Bloch vectors (x +- t n)/(1 +- y.n) for qubit a, so the measured mutual
information is a difference of binary entropies of Bloch-vector lengths.
"""

import numpy as np

PROB_FLOOR = 1e-12


def _h2(p):
    p = np.asarray(p, dtype=float)
    q = 1.0 - p
    out = np.zeros_like(p)
    mask = p > 0.0
    out[mask] -= p[mask] * np.log2(p[mask])
    mask = q > 0.0
    out[mask] -= q[mask] * np.log2(q[mask])
    return out


def _info(x, y, t, n0, n1, n2):
    yn = y[0] * n0 + y[1] * n1 + y[2] * n2
    v0 = t[0, 0] * n0 + t[0, 1] * n1 + t[0, 2] * n2
    v1 = t[1, 0] * n0 + t[1, 1] * n1 + t[1, 2] * n2
    v2 = t[2, 0] * n0 + t[2, 1] * n1 + t[2, 2] * n2
    marginal = _h2(np.minimum(np.linalg.norm(x), 1.0) * 0.5 + 0.5)
    conditional = np.zeros_like(np.asarray(yn, dtype=float))
    for s in (1.0, -1.0):
        p = 0.5 * (1.0 + s * yn)
        safe = np.maximum(p, PROB_FLOOR)
        r0 = (x[0] + s * v0) / (2.0 * safe)
        r1 = (x[1] + s * v1) / (2.0 * safe)
        r2 = (x[2] + s * v2) / (2.0 * safe)
        rnorm = np.minimum(np.sqrt(r0 * r0 + r1 * r1 + r2 * r2), 1.0)
        term = p * _h2(0.5 * (1.0 + rnorm))
        conditional = conditional + np.where(p > PROB_FLOOR, term, 0.0)
    return marginal - conditional


def measured_info(x, y, t, theta, phi):
    """Measured mutual information in bits at one readout direction."""
    st = np.sin(theta)
    val = _info(x, y, t, st * np.cos(phi), st * np.sin(phi), np.cos(theta))
    return float(val)


def measured_info_grid(x, y, t, thetas, phis, out):
    """Fill ``out[i, j]`` with the measured information at
    ``(thetas[i], phis[j])``."""
    thetas = np.asarray(thetas, dtype=float)
    phis = np.asarray(phis, dtype=float)
    if out.shape != (thetas.size, phis.size):
        raise ValueError("out must have shape (len(thetas), len(phis))")
    st = np.sin(thetas)[:, None]
    n0 = st * np.cos(phis)[None, :]
    n1 = st * np.sin(phis)[None, :]
    n2 = np.cos(thetas)[:, None] * np.ones_like(phis)[None, :]
    out[:, :] = _info(x, y, t, n0, n1, n2)
