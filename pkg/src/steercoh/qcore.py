"""Small dense linear algebra for one- and two-qubit density matrices.

Conventions
-----------
Single-qubit matrices use the basis order ``{|1>, |0>}`` (index 0 is the
excited state). Two-qubit matrices use ``{|11>, |10>, |01>, |00>}`` with the
first tensor factor as the left label. With this ordering the standard Pauli
matrices satisfy ``sigma_z |1> = |1>`` and ``sigma_+ = |1><0|``.

Entropies are in bits.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10

KET1 = np.array([1.0, 0.0], dtype=complex)
KET0 = np.array([0.0, 1.0], dtype=complex)

IDENTITY2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


class InvalidStateError(ValueError):
    """Raised when a matrix is not a density matrix within tolerance."""


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of :func:`validate`.

    Deviations are always filled in; ``violations`` names the invariants that
    exceed their tolerance (``"shape"``, ``"finite"``, ``"hermiticity"``,
    ``"trace"``, ``"psd"``).
    """

    hermiticity: float
    trace: float
    psd: float
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        parts = []
        for name in self.violations:
            dev = getattr(self, name, float("nan"))
            parts.append(f"{name} violation {dev:.3g}")
        return ", ".join(parts)


def validate(m) -> ValidationReport:
    """Check hermiticity, unit trace and positivity of a 2x2 or 4x4 matrix.

    Never raises; the report carries the measured deviation of each
    invariant (``psd`` is the magnitude of the most negative eigenvalue, 0 if
    none).
    """
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in (2, 4):
        return ValidationReport(np.inf, np.inf, np.inf, ("shape",))
    if not np.all(np.isfinite(m)):
        return ValidationReport(np.inf, np.inf, np.inf, ("finite",))
    herm = float(np.max(np.abs(m - m.conj().T)))
    tr = float(abs(np.trace(m) - 1.0))
    evals = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
    psd = float(max(0.0, -evals.min()))
    bad = []
    if herm > HERMITIAN_TOL:
        bad.append("hermiticity")
    if tr > TRACE_TOL:
        bad.append("trace")
    if psd > PSD_TOL:
        bad.append("psd")
    return ValidationReport(herm, tr, psd, tuple(bad))


def as_state(m, dim: int | None = None) -> np.ndarray:
    """Return ``m`` as a complex array, raising if it is not a valid state."""
    m = np.asarray(m, dtype=complex)
    if dim is not None and m.shape != (dim, dim):
        raise InvalidStateError(f"expected a {dim}x{dim} matrix, got shape {m.shape}")
    report = validate(m)
    if not report.ok:
        raise InvalidStateError(f"not a density matrix: {report}")
    return m


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def tensor(a, b) -> np.ndarray:
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def _canonical_phase(vecs: np.ndarray) -> np.ndarray:
    # rotate each column so its first non-negligible entry is real positive
    out = vecs.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        idx = int(np.argmax(np.abs(col) > 1e-12))
        c = col[idx]
        if abs(c) > 0:
            out[:, k] = col * (abs(c) / c)
    return out


def eigensystem_hermitian(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues in descending order and matching orthonormal eigenvectors.

    Eigenvectors are the columns of the second array, each with its first
    nonzero component made real and positive so results are reproducible.
    Ties keep LAPACK's (deterministic) output order.

    Raises
    ------
    ValueError
        If ``m`` is not Hermitian within ``HERMITIAN_TOL``.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    dev = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if dev > HERMITIAN_TOL:
        raise ValueError(f"matrix is not Hermitian (deviation {dev:.3g})")
    evals, evecs = np.linalg.eigh(0.5 * (m + m.conj().T))
    order = np.argsort(-evals, kind="stable")
    return evals[order], _canonical_phase(evecs[:, order])


def _entropy_of_spectrum(p: np.ndarray) -> float:
    p = np.clip(np.real(p), 0.0, None)
    nz = p[p > 0]
    h = float(-np.sum(nz * np.log2(nz)))
    return abs(h) if h == 0.0 else h


def von_neumann_entropy(m) -> float:
    """Von Neumann entropy in bits, with ``0 log 0 = 0``."""
    m = as_state(m)
    return _entropy_of_spectrum(np.linalg.eigvalsh(m))


def shannon_entropy(p) -> float:
    """Shannon entropy (bits) of a probability vector."""
    return _entropy_of_spectrum(np.asarray(p, dtype=float))


def trace_distance(a, b) -> float:
    """Half the trace norm of ``a - b``."""
    a = as_state(a)
    b = as_state(b)
    if a.shape != b.shape:
        raise InvalidStateError("states have different dimensions")
    diff = a - b
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(0.5 * (diff + diff.conj().T)))))


def partial_trace_A(m) -> np.ndarray:
    """Trace out the first qubit of a two-qubit state."""
    m = as_state(m, 4)
    return np.einsum("abac->bc", m.reshape(2, 2, 2, 2))


def partial_trace_B(m) -> np.ndarray:
    """Trace out the second qubit of a two-qubit state."""
    m = as_state(m, 4)
    return np.einsum("abcb->ac", m.reshape(2, 2, 2, 2))


def bloch_vector(rho) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    return np.array([np.real(np.trace(rho @ s)) for s in PAULIS])


def purity(m) -> float:
    m = np.asarray(m, dtype=complex)
    return float(np.real(np.trace(m @ m)))


@dataclass(frozen=True)
class BasisChoice:
    """An orthonormal single-qubit basis, stored as the columns of ``vectors``.

    ``degenerate`` is set when the basis was picked by convention because the
    state it should diagonalize has a degenerate spectrum.
    """

    vectors: np.ndarray = field(default_factory=lambda: np.column_stack([KET1, KET0]))
    degenerate: bool = False

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=complex)
        if v.shape != (2, 2):
            raise ValueError(f"basis must be 2x2, got shape {v.shape}")
        dev = np.max(np.abs(v.conj().T @ v - IDENTITY2))
        if dev > 1e-12:
            raise ValueError(f"basis vectors are not orthonormal (deviation {dev:.3g})")
        object.__setattr__(self, "vectors", v)

    def represent(self, rho) -> np.ndarray:
        """Matrix elements ``<xi_i|rho|xi_j>``."""
        return self.vectors.conj().T @ np.asarray(rho, dtype=complex) @ self.vectors


COMPUTATIONAL = BasisChoice()
