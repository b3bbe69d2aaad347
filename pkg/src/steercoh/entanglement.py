"""Concurrence and the CNOT conversion of coherence into entanglement."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qcore import KET0, SIGMA_Y, as_state, eigensystem_hermitian, partial_trace_A, projector, tensor
from .steering import l1_coherence

X_FORM_TOL = 1e-12

# rows/cols in {|11>, |10>, |01>, |00>}, control = first factor:
# |11> <-> |10>, |01> and |00> fixed
CNOT = np.array(
    [
        [0, 1, 0, 0],
        [1, 0, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
    ],
    dtype=complex,
)

_SPIN_FLIP = np.kron(SIGMA_Y, SIGMA_Y)


class NotXStateError(ValueError):
    """The matrix has weight outside its diagonal and anti-diagonal."""


@dataclass(frozen=True)
class ConversionReport:
    bc_state: np.ndarray
    bc_concurrence: float
    source_l1_coherence: float
    success_probability: float | None = None


def concurrence_x_state(rho) -> float:
    """Closed-form concurrence of a two-qubit X state."""
    rho = as_state(rho, 4)
    mask = np.eye(4, dtype=bool) | np.fliplr(np.eye(4, dtype=bool))
    outside = float(np.max(np.abs(rho[~mask])))
    if outside > X_FORM_TOL:
        raise NotXStateError(f"entries off the X pattern up to {outside:.3g}")
    d = np.real(np.diag(rho)).clip(0.0)
    c1 = abs(rho[1, 2]) - math.sqrt(d[0] * d[3])
    c2 = abs(rho[0, 3]) - math.sqrt(d[1] * d[2])
    return 2.0 * max(0.0, c1, c2)


def concurrence_general(rho) -> float:
    """Wootters concurrence ``max(0, l1 - l2 - l3 - l4)``.

    The ``l_i`` are the square roots of the eigenvalues of
    ``rho (sy x sy) rho* (sy x sy)``. They are obtained here as the singular
    values of ``W^T (sy x sy) W`` with ``rho = W W^dagger`` taken from the
    eigendecomposition, which avoids a square root of eigenvalues that are
    zero up to rounding. Eigenvalues of ``rho`` below ``64 eps`` times the
    largest are treated as exact zeros.
    """
    rho = as_state(rho, 4)
    evals, evecs = eigensystem_hermitian(rho)
    evals = np.where(evals > 64 * np.finfo(float).eps * evals[0], evals, 0.0)
    W = evecs * np.sqrt(evals)[None, :]
    tau = W.T @ _SPIN_FLIP @ W
    lam = np.linalg.svd(tau, compute_uv=False)  # descending
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def cnot_circuit(rho_b) -> np.ndarray:
    """``CNOT (rho_b x |0><0|) CNOT^dagger`` with qubit B as control."""
    rho_b = as_state(rho_b, 2)
    joint = tensor(rho_b, projector(KET0))
    return CNOT @ joint @ CNOT.conj().T


def cnot_convert(rho_b, success_probability: float | None = None) -> ConversionReport:
    """Entangle ``rho_b`` with an ancilla in ``|0>`` through a CNOT.

    ``success_probability`` is carried into the report unchanged.
    """
    bc = cnot_circuit(rho_b)
    return ConversionReport(
        bc_state=bc,
        bc_concurrence=concurrence_general(bc),
        source_l1_coherence=l1_coherence(rho_b),
        success_probability=success_probability,
    )


def entanglement_ratio(alpha, p_a: float) -> float:
    """Concurrence of ``rho_AB`` over the concurrence created on BC: ``2 x sqrt(1 - x^2)``, ``x = |alpha p_a|``."""
    x = abs(alpha * p_a)
    if x >= 1.0:
        return 0.0
    return 2.0 * x * math.sqrt(1.0 - x * x)


def optimal_success_probability(alpha, p_a: float) -> float:
    a = abs(alpha * p_a) ** 2
    return 2.0 * a * (1.0 - a)


def unsteered_conversion_check(rho_ab_t) -> float:
    """BC concurrence obtained from Bob's marginal without any steering."""
    return cnot_convert(partial_trace_A(rho_ab_t)).bc_concurrence
