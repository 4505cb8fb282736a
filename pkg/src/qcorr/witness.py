"""Nonlinear classicality witness for diagonal-correlation states.

Four observables are read out: the three like-axis correlations
``sigma_i (x) sigma_i`` and one sum of local spin projections
``z . sigma (x) id + id (x) w . sigma`` along a direction pair (z, w).
The witness is the sum of absolute pairwise products of the four
expectations; it vanishes exactly when at most one expectation is nonzero,
which for this state family singles out four classically correlated
shapes (chi1..chi3: one like-axis correlation only; chi4: local Bloch
vectors only, no correlation).

Two evaluation modes:

* ``deterministic`` replaces the direction-pair expectation by its
  supremum over all pairs, ``|x| + |y|``, so a zero witness cannot be an
  artifact of an unlucky direction choice.  This is the default and the
  mode used for certification.
* ``randomized`` samples direction pairs and reports the maximum witness
  over the trials, mirroring how the quantity would actually be measured.

A zero witness certifies classicality only inside the diagonal-correlation
family; states with off-diagonal correlation entries are rejected with
``OutOfClassError``.  For vanishing Bloch vectors (Bell-diagonal states)
the witness is also necessary, so a nonzero value certifies
nonclassicality there.
"""

import enum
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from . import operators as op
from .exceptions import OutOfClassError

ZERO_TOL = 1e-9
UNIT_TOL = 1e-12

_ID2 = np.eye(2, dtype=complex)


class Verdict(str, enum.Enum):
    CLASSICAL = "ClassicalCertified"
    NONCLASSICAL = "NonclassicalCertified"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class DirectionPair:
    """Unit vectors (z, w) fixing the local spin projections."""

    z: np.ndarray
    w: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "z", np.asarray(self.z, dtype=float))
        object.__setattr__(self, "w", np.asarray(self.w, dtype=float))
        for name, v in (("z", self.z), ("w", self.w)):
            if v.shape != (3,):
                raise ValueError(f"{name} must have shape (3,)")
            if abs(float(np.linalg.norm(v)) - 1.0) > UNIT_TOL:
                raise ValueError(f"{name} must be a unit vector")

    @classmethod
    def random(cls, rng):
        """Uniform pair of directions: normalized Gaussian samples."""
        vecs = []
        for _ in range(2):
            v = rng.normal(size=3)
            vecs.append(v / np.linalg.norm(v))
        return cls(z=vecs[0], w=vecs[1])


def observables(directions):
    """The four witness observables as explicit 4x4 matrices."""
    z, w = directions.z, directions.w
    like_axis = tuple(
        np.kron(op.pauli(i), op.pauli(i)) for i in (1, 2, 3)
    )
    z_dot = sum(z[k] * op.pauli(k + 1) for k in range(3))
    w_dot = sum(w[k] * op.pauli(k + 1) for k in range(3))
    local_sum = np.kron(z_dot, _ID2) + np.kron(_ID2, w_dot)
    return like_axis + (local_sum,)


def observable_expectations(rho, directions, check=True):
    """Expectations (e1, e2, e3, e4) of the four witness observables.

    e1..e3 are the diagonal correlation entries; e4 = z.x + w.y from the
    local Bloch vectors.
    """
    rho = np.asarray(rho, dtype=complex)
    if check:
        op.require_density_matrix(rho)
    decomp = op.decompose(rho, check=False)
    c = decomp.diagonal_correlations()
    e4 = float(np.dot(directions.z, decomp.x) + np.dot(directions.w, decomp.y))
    return (float(c[0]), float(c[1]), float(c[2]), e4)


def pairwise_product_sum(e):
    """sum_{i<j} |e_i e_j| over the four expectations."""
    total = 0.0
    for i in range(4):
        for j in range(i + 1, 4):
            total += abs(e[i] * e[j])
    return total


@dataclass(frozen=True)
class WitnessReport:
    """Witness evaluation plus certification verdict."""

    expectations: Tuple[float, float, float, float]
    value: float
    mode: str
    n_trials: Optional[int]
    seed: Optional[int]
    verdict: Verdict
    matched_form: str
    value_stderr: Optional[float] = None

    def to_dict(self):
        record = {
            "e1": self.expectations[0],
            "e2": self.expectations[1],
            "e3": self.expectations[2],
            "e4": self.expectations[3],
            "W": self.value,
            "mode": self.mode,
            "n_trials": self.n_trials,
            "seed": self.seed,
            "verdict": self.verdict.value,
            "matched_form": self.matched_form,
        }
        if self.value_stderr is not None:
            record["W_stderr"] = self.value_stderr
        return record


def _require_in_class(decomp):
    off = decomp.max_offdiagonal()
    if off > ZERO_TOL:
        raise OutOfClassError(
            f"state has off-diagonal correlations up to {off:.3e}; the "
            "witness applies only to diagonal-correlation states"
        )


def matched_form(x, y, c, tol=ZERO_TOL):
    """Which classical shape the expectation structure fits, if any.

    Candidates are |c1|, |c2|, |c3| and |x| + |y|; the largest wins when
    every other candidate is below ``tol``, otherwise no shape fits.
    """
    candidates = [
        abs(float(c[0])),
        abs(float(c[1])),
        abs(float(c[2])),
        float(np.linalg.norm(x) + np.linalg.norm(y)),
    ]
    k = int(np.argmax(candidates))
    if all(v <= tol for i, v in enumerate(candidates) if i != k):
        return ("chi1", "chi2", "chi3", "chi4")[k]
    return "none"


def _verdict(value, decomp, tol):
    if value <= tol:
        return Verdict.CLASSICAL
    bell_diagonal = (
        float(np.linalg.norm(decomp.x)) <= ZERO_TOL
        and float(np.linalg.norm(decomp.y)) <= ZERO_TOL
    )
    if bell_diagonal:
        return Verdict.NONCLASSICAL
    return Verdict.INCONCLUSIVE


def witness_value(
    rho,
    mode="deterministic",
    n_trials=5,
    seed=None,
    directions=None,
    tol=ZERO_TOL,
    check=True,
):
    """Evaluate the witness and produce a report.

    Deterministic mode scores e4 at its supremum ``|x| + |y|``.
    Randomized mode draws ``n_trials`` direction pairs from ``seed`` (or
    uses the given ``directions`` list) and keeps the trial with the
    largest witness; it never exceeds the deterministic value.
    """
    rho = np.asarray(rho, dtype=complex)
    if check:
        op.require_density_matrix(rho)
    decomp = op.decompose(rho, check=False)
    _require_in_class(decomp)
    c = decomp.diagonal_correlations()

    if mode == "deterministic":
        e4 = float(np.linalg.norm(decomp.x) + np.linalg.norm(decomp.y))
        e = (float(c[0]), float(c[1]), float(c[2]), e4)
        value = pairwise_product_sum(e)
        report_trials = None
        report_seed = None
    elif mode == "randomized":
        if directions is None:
            if n_trials < 1:
                raise ValueError(f"n_trials must be >= 1, got {n_trials}")
            rng = np.random.default_rng(seed)
            directions = [DirectionPair.random(rng) for _ in range(n_trials)]
        elif isinstance(directions, DirectionPair):
            directions = [directions]
        value = -1.0
        e = None
        for pair in directions:
            e4 = float(np.dot(pair.z, decomp.x) + np.dot(pair.w, decomp.y))
            trial = (float(c[0]), float(c[1]), float(c[2]), e4)
            trial_value = pairwise_product_sum(trial)
            if trial_value > value:
                value = trial_value
                e = trial
        report_trials = len(directions)
        report_seed = seed
    else:
        raise ValueError(f"mode must be 'deterministic' or 'randomized', got {mode!r}")

    verdict = _verdict(value, decomp, tol)
    form = (
        matched_form(decomp.x, decomp.y, c, tol)
        if verdict is Verdict.CLASSICAL
        else "none"
    )
    return WitnessReport(
        expectations=e,
        value=float(value),
        mode=mode,
        n_trials=report_trials,
        seed=report_seed,
        verdict=verdict,
        matched_form=form,
    )


def classify(rho, tol=ZERO_TOL, mode="deterministic", check=True, **kwargs):
    """Certification verdict for a diagonal-correlation state.

    ``ClassicalCertified`` when the witness is at most ``tol``;
    ``NonclassicalCertified`` when it is above ``tol`` and the state is
    Bell-diagonal (where the witness is also necessary); ``Inconclusive``
    otherwise.
    """
    return witness_value(rho, mode=mode, tol=tol, check=check, **kwargs).verdict
