"""Exact operator algebra for one- and two-qubit Hermitian matrices.

Everything downstream (state constructors, witness, discord, entanglement
tests, readout simulation) is built on the helpers in this module: Pauli
matrices and their tensor products, the expectation-value decomposition of
a two-qubit density matrix and its inverse, partial traces, a guarded
Hermitian eigensolver and the von Neumann entropy in bits.

All functions treat states as plain ``numpy.ndarray`` objects and never
mutate their arguments.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidStateError

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
# symmetrization guard for the eigensolver; looser than HERMITICITY_TOL so
# matrices assembled from sums of products still pass
EIG_HERMITICITY_TOL = 1e-10

_ID2 = np.eye(2, dtype=complex)
_SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_SIGMA2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
_SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
_PAULIS = (_ID2, _SIGMA1, _SIGMA2, _SIGMA3)

# two-qubit Pauli products sigma_i (x) sigma_j, cached once
_PAULI4 = tuple(
    tuple(np.kron(_PAULIS[i], _PAULIS[j]) for j in range(4)) for i in range(4)
)


def pauli(i):
    """Return a copy of the single-qubit Pauli matrix with index ``i``.

    Index 0 is the identity, 1..3 are the x, y, z Pauli matrices.
    """
    if i not in (0, 1, 2, 3):
        raise ValueError(f"pauli index must be 0..3, got {i!r}")
    return _PAULIS[i].copy()


def tensor(a, b):
    """Kronecker product of two operators, ``a`` acting first."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def hermiticity_defect(m):
    """max |m - m^dagger| entrywise."""
    m = np.asarray(m)
    return float(np.max(np.abs(m - m.conj().T)))


def eigenvalues_hermitian(h):
    """Eigenvalues of a Hermitian matrix, descending.

    The input is symmetrized to ``(h + h^dagger)/2`` when its Hermiticity
    defect is at most 1e-10; a larger defect raises ``ValueError`` instead
    of silently projecting.
    """
    h = np.asarray(h, dtype=complex)
    defect = hermiticity_defect(h)
    if defect > EIG_HERMITICITY_TOL:
        raise ValueError(
            f"matrix is not Hermitian (defect {defect:.3e} > {EIG_HERMITICITY_TOL})"
        )
    sym = (h + h.conj().T) / 2.0
    return np.linalg.eigvalsh(sym)[::-1].copy()


def min_eigenvalue(h):
    """Smallest eigenvalue of a Hermitian matrix."""
    return float(eigenvalues_hermitian(h)[-1])


def require_density_matrix(rho):
    """Raise ``InvalidStateError`` unless ``rho`` is a valid 4x4 density matrix.

    Valid means Hermitian to 1e-12, unit trace to 1e-12 and positive
    semidefinite with eigenvalues no lower than -1e-10.
    """
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise InvalidStateError(f"expected a 4x4 matrix, got shape {rho.shape}")
    defect = hermiticity_defect(rho)
    if defect > HERMITICITY_TOL:
        raise InvalidStateError(f"matrix is not Hermitian (defect {defect:.3e})")
    trace_err = abs(complex(np.trace(rho)) - 1.0)
    if trace_err > TRACE_TOL:
        raise InvalidStateError(f"trace differs from 1 by {trace_err:.3e}")
    lo = min_eigenvalue(rho)
    if lo < -PSD_TOL:
        raise InvalidStateError(
            f"matrix is not positive semidefinite (min eigenvalue {lo:.3e})"
        )


@dataclass(frozen=True)
class PauliDecomposition:
    """Expectation-value coordinates of a two-qubit state.

    ``x`` and ``y`` are the local Bloch vectors of qubits a and b,
    ``t`` is the 3x3 correlation matrix ``t[i, j] = <sigma_i (x) sigma_j>``.
    """

    x: np.ndarray
    y: np.ndarray
    t: np.ndarray

    def diagonal_correlations(self):
        """The three like-axis correlations (t11, t22, t33)."""
        return np.diagonal(self.t).copy()

    def max_offdiagonal(self):
        """Largest |t[i, j]| with i != j."""
        off = self.t - np.diag(np.diagonal(self.t))
        return float(np.max(np.abs(off)))


def decompose(rho, check=True):
    """Expectation-value decomposition of a two-qubit density matrix.

    Returns a ``PauliDecomposition`` with
    ``x[i] = Tr(rho sigma_i (x) id)``, ``y[j] = Tr(rho id (x) sigma_j)``
    and ``t[i, j] = Tr(rho sigma_i (x) sigma_j)``.  Imaginary residues of
    the traces (at most 1e-12 for valid input) are discarded.
    """
    rho = np.asarray(rho, dtype=complex)
    if check:
        require_density_matrix(rho)
    x = np.array([np.trace(rho @ _PAULI4[i][0]).real for i in (1, 2, 3)])
    y = np.array([np.trace(rho @ _PAULI4[0][j]).real for j in (1, 2, 3)])
    t = np.array(
        [[np.trace(rho @ _PAULI4[i][j]).real for j in (1, 2, 3)] for i in (1, 2, 3)]
    )
    return PauliDecomposition(x=x, y=y, t=t)


def compose(x, y, t):
    """Rebuild the 4x4 matrix from expectation-value coordinates.

    Inverse of :func:`decompose`:
    ``rho = (id4 + sum x_i s_i0 + sum y_j s_0j + sum t_ij s_ij) / 4``
    where ``s_ij = sigma_i (x) sigma_j``.  No validity check is applied;
    arbitrary coordinates may produce a non-positive matrix.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    t = np.asarray(t, dtype=float)
    if x.shape != (3,) or y.shape != (3,) or t.shape != (3, 3):
        raise ValueError("expected x, y of shape (3,) and t of shape (3, 3)")
    rho = _PAULI4[0][0].astype(complex)
    for i in range(3):
        rho = rho + x[i] * _PAULI4[i + 1][0]
        rho = rho + y[i] * _PAULI4[0][i + 1]
        for j in range(3):
            rho = rho + t[i, j] * _PAULI4[i + 1][j + 1]
    return rho / 4.0


def partial_trace(rho, keep="a", check=True):
    """Trace out one qubit of a two-qubit state.

    ``keep="a"`` returns the reduced state of the first qubit,
    ``keep="b"`` the second.
    """
    rho = np.asarray(rho, dtype=complex)
    if check:
        require_density_matrix(rho)
    r = rho.reshape(2, 2, 2, 2)
    if keep == "a":
        return np.trace(r, axis1=1, axis2=3)
    if keep == "b":
        return np.trace(r, axis1=0, axis2=2)
    raise ValueError(f"keep must be 'a' or 'b', got {keep!r}")


def von_neumann_entropy(rho, check=True):
    """von Neumann entropy in bits of a density matrix (any dimension).

    Eigenvalues are clipped to [0, 1] before taking logarithms; zero
    eigenvalues contribute nothing.  With ``check=True`` the input must be
    Hermitian with unit trace and eigenvalues above -1e-10.
    """
    rho = np.asarray(rho, dtype=complex)
    evals = eigenvalues_hermitian(rho)
    if check:
        if abs(float(np.sum(evals)) - 1.0) > 1e-10:
            raise InvalidStateError(
                f"trace differs from 1 by {abs(float(np.sum(evals)) - 1.0):.3e}"
            )
        if evals[-1] < -PSD_TOL:
            raise InvalidStateError(
                f"matrix is not positive semidefinite (min eigenvalue {evals[-1]:.3e})"
            )
    evals = np.clip(evals, 0.0, 1.0)
    nz = evals[evals > 0.0]
    return float(-np.sum(nz * np.log2(nz)))


def expectation(rho, observable, check=True):
    """Expectation value ``Tr(rho O)`` of a Hermitian observable.

    The trace of a Hermitian pair is real up to rounding; the imaginary
    residue (at most 1e-12 for valid input) is discarded.
    """
    rho = np.asarray(rho, dtype=complex)
    observable = np.asarray(observable, dtype=complex)
    if check:
        require_density_matrix(rho)
        defect = hermiticity_defect(observable)
        if defect > EIG_HERMITICITY_TOL:
            raise ValueError(f"observable is not Hermitian (defect {defect:.3e})")
    return float(np.trace(rho @ observable).real)


@dataclass(frozen=True)
class MeasurementBasis:
    """Single-qubit orthonormal basis parameterized by sphere angles.

    The first basis vector is ``cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>``
    and the second is its orthogonal complement, so orthonormality holds by
    construction.  ``theta`` must lie in [0, pi] and ``phi`` in [0, 2 pi).
    """

    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= np.pi:
            raise ValueError(f"theta must be in [0, pi], got {self.theta}")
        if not 0.0 <= self.phi < 2.0 * np.pi:
            raise ValueError(f"phi must be in [0, 2 pi), got {self.phi}")

    def kets(self):
        """The two basis vectors as length-2 complex arrays."""
        c = np.cos(self.theta / 2.0)
        s = np.sin(self.theta / 2.0)
        phase = np.exp(1j * self.phi)
        k0 = np.array([c, phase * s], dtype=complex)
        k1 = np.array([-np.conj(phase) * s, c], dtype=complex)
        return k0, k1

    def projectors(self):
        """Rank-1 projectors onto the two basis vectors."""
        k0, k1 = self.kets()
        return np.outer(k0, k0.conj()), np.outer(k1, k1.conj())

    def bloch(self):
        """Bloch vector of the first basis vector."""
        st = np.sin(self.theta)
        return np.array(
            [st * np.cos(self.phi), st * np.sin(self.phi), np.cos(self.theta)]
        )

    @classmethod
    def from_bloch(cls, n):
        """Basis whose first vector points along the unit vector ``n``."""
        n = np.asarray(n, dtype=float)
        norm = float(np.linalg.norm(n))
        if abs(norm - 1.0) > 1e-9:
            raise ValueError(f"direction must be a unit vector, |n| = {norm}")
        n = n / norm
        theta = float(np.arccos(np.clip(n[2], -1.0, 1.0)))
        phi = float(np.arctan2(n[1], n[0])) % (2.0 * np.pi)
        return cls(theta=theta, phi=phi)
