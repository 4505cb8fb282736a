"""Total, classical and quantum correlations of a two-qubit state.

The classical part is defined through rank-1 projective readout of qubit b:
for a basis ``{|o_0>, |o_1>}`` the measured mutual information is the
entropy of qubit a minus the average entropy of its post-measurement
conditional states.  Maximizing over the readout basis gives the classical
correlation, and quantum discord is the gap to the total mutual
information.

Two evaluation routes exist on purpose.  ``measured_mutual_information``
works directly on projectors and partial traces; the basis search in
``classical_correlation`` runs on a closed-form kernel over expectation
coordinates (compiled when available).  The tests pin both routes against
each other.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import optimize

from . import _kernel
from . import operators as op
from .exceptions import OptimizerFailureError, ZeroProbabilityOutcomeError
from .operators import MeasurementBasis

PROB_FLOOR = 1e-12
# discord this far below zero is numerical noise and clamps to 0
DISCORD_CLAMP = 1e-8

_ID2 = np.eye(2, dtype=complex)


def mutual_information(rho, check=True):
    """Total correlations ``S(rho_a) + S(rho_b) - S(rho)`` in bits."""
    rho = np.asarray(rho, dtype=complex)
    if check:
        op.require_density_matrix(rho)
    s_a = op.von_neumann_entropy(op.partial_trace(rho, "a", check=False), check=False)
    s_b = op.von_neumann_entropy(op.partial_trace(rho, "b", check=False), check=False)
    s_ab = op.von_neumann_entropy(rho, check=False)
    return s_a + s_b - s_ab


def _projector4(basis, outcome):
    p0, p1 = basis.projectors()
    return np.kron(_ID2, p0 if outcome == 0 else p1)


def outcome_probability(rho, basis, outcome, check=True):
    """Probability of ``outcome`` (0 or 1) when qubit b is read out in
    ``basis``."""
    if outcome not in (0, 1):
        raise ValueError(f"outcome must be 0 or 1, got {outcome!r}")
    rho = np.asarray(rho, dtype=complex)
    if check:
        op.require_density_matrix(rho)
    return float(np.trace(_projector4(basis, outcome) @ rho).real)


def conditioned_state(rho, basis, outcome, check=True):
    """Post-measurement state of qubit a given ``outcome`` on qubit b.

    Raises ``ZeroProbabilityOutcomeError`` when the outcome probability is
    at most 1e-12.
    """
    rho = np.asarray(rho, dtype=complex)
    if check:
        op.require_density_matrix(rho)
    proj = _projector4(basis, outcome)
    prob = float(np.trace(proj @ rho).real)
    if prob <= PROB_FLOOR:
        raise ZeroProbabilityOutcomeError(
            f"outcome {outcome} has probability {prob:.3e}"
        )
    reduced = op.partial_trace(proj @ rho @ proj, "a", check=False)
    return reduced / prob


def measured_mutual_information(rho, basis, check=True):
    """Information about qubit a retained after reading qubit b in ``basis``.

    ``S(rho_a) - sum_j p_j S(rho_a | outcome j)`` in bits; outcomes with
    probability at most 1e-12 contribute nothing.  Always in [0, 1].
    """
    rho = np.asarray(rho, dtype=complex)
    if check:
        op.require_density_matrix(rho)
    s_a = op.von_neumann_entropy(op.partial_trace(rho, "a", check=False), check=False)
    conditional = 0.0
    for outcome in (0, 1):
        proj = _projector4(basis, outcome)
        prob = float(np.trace(proj @ rho).real)
        if prob <= PROB_FLOOR:
            continue
        reduced = op.partial_trace(proj @ rho @ proj, "a", check=False) / prob
        conditional += prob * op.von_neumann_entropy(reduced, check=False)
    value = s_a - conditional
    if -1e-10 < value < 0.0:
        value = 0.0
    return value


class ClassicalCorrelationResult(NamedTuple):
    j_star: float
    basis: MeasurementBasis
    evals: int


def _canonical_angles(theta, phi):
    """Fold arbitrary angles onto theta in [0, pi], phi in [0, 2 pi)."""
    n = np.array(
        [
            math.sin(theta) * math.cos(phi),
            math.sin(theta) * math.sin(phi),
            math.cos(theta),
        ]
    )
    theta_c = math.acos(max(-1.0, min(1.0, n[2])))
    phi_c = math.atan2(n[1], n[0]) % (2.0 * math.pi)
    return theta_c, phi_c


def classical_correlation(
    rho,
    coarse=(13, 25),
    starts=3,
    max_evals=20000,
    check=True,
):
    """Maximum measured mutual information over readout bases of qubit b.

    A coarse (theta, phi) grid seeds a few Nelder-Mead refinements; the
    best value, its basis and the number of objective evaluations are
    returned.  Raises ``OptimizerFailureError`` if no refinement converges
    within the evaluation budget.
    """
    rho = np.asarray(rho, dtype=complex)
    if check:
        op.require_density_matrix(rho)
    decomp = op.decompose(rho, check=False)
    x = np.ascontiguousarray(decomp.x)
    y = np.ascontiguousarray(decomp.y)
    t = np.ascontiguousarray(decomp.t)

    n_theta, n_phi = coarse
    thetas = np.linspace(0.0, np.pi, n_theta)
    phis = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)
    grid = np.empty((n_theta, n_phi))
    _kernel.measured_info_grid(x, y, t, thetas, phis, grid)
    evals = grid.size

    # greedy pick of well-separated high-value starts
    order = np.argsort(grid, axis=None)[::-1]
    start_points = []
    for flat in order:
        i, j = np.unravel_index(flat, grid.shape)
        theta0, phi0 = thetas[i], phis[j]
        n0 = np.array(
            [
                math.sin(theta0) * math.cos(phi0),
                math.sin(theta0) * math.sin(phi0),
                math.cos(theta0),
            ]
        )
        # +-n give the same readout basis up to outcome swap
        if all(
            min(np.linalg.norm(n0 - m), np.linalg.norm(n0 + m)) > 0.5
            for m in (p[2] for p in start_points)
        ):
            start_points.append((theta0, phi0, n0))
        if len(start_points) == starts:
            break

    best_val = float(np.max(grid))
    flat_best = int(np.argmax(grid))
    bi, bj = np.unravel_index(flat_best, grid.shape)
    best_angles = (float(thetas[bi]), float(phis[bj]))

    counter = [evals]

    def negative_info(angles):
        counter[0] += 1
        return -_kernel.measured_info(x, y, t, angles[0], angles[1])

    budget = max(200, (max_evals - evals) // max(1, len(start_points)))
    dt = np.pi / (2 * (n_theta - 1))
    dp = np.pi / n_phi
    converged = False
    for theta0, phi0, _ in start_points:
        simplex = np.array(
            [[theta0, phi0], [theta0 + dt, phi0], [theta0, phi0 + dp]]
        )
        res = optimize.minimize(
            negative_info,
            np.array([theta0, phi0]),
            method="Nelder-Mead",
            options={
                "initial_simplex": simplex,
                "xatol": 1e-8,
                "fatol": 1e-13,
                "maxfev": budget,
            },
        )
        if res.success:
            converged = True
        if -res.fun > best_val:
            best_val = -res.fun
            best_angles = (float(res.x[0]), float(res.x[1]))
    if not converged:
        raise OptimizerFailureError(
            f"basis search did not converge within {max_evals} evaluations"
        )

    theta_c, phi_c = _canonical_angles(*best_angles)
    basis = MeasurementBasis(theta=theta_c, phi=phi_c)
    return ClassicalCorrelationResult(
        j_star=float(best_val), basis=basis, evals=int(counter[0])
    )


@dataclass(frozen=True)
class DiscordReport:
    """Correlation split of one state, all in bits."""

    mutual_info: float
    classical: float
    discord: float
    basis: MeasurementBasis
    evals: int

    def to_dict(self):
        return {
            "I": self.mutual_info,
            "J_star": self.classical,
            "D": self.discord,
            "theta_opt": self.basis.theta,
            "phi_opt": self.basis.phi,
            "evals": self.evals,
        }


def discord(rho, check=True, **search_options):
    """Quantum discord of a two-qubit state under readout of qubit b.

    ``D = I - J_star``; values within 1e-8 below zero are clamped to 0.
    Keyword options are forwarded to :func:`classical_correlation`.
    """
    rho = np.asarray(rho, dtype=complex)
    if check:
        op.require_density_matrix(rho)
    total = mutual_information(rho, check=False)
    result = classical_correlation(rho, check=False, **search_options)
    gap = total - result.j_star
    if -DISCORD_CLAMP <= gap < 0.0:
        gap = 0.0
    return DiscordReport(
        mutual_info=total,
        classical=result.j_star,
        discord=gap,
        basis=result.basis,
        evals=result.evals,
    )
