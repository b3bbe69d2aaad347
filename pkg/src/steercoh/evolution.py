"""Reduced dynamics of one and two qubits under independent decay.

Each qubit's reduced map is fixed by its real decay amplitude ``p``: the
excited population is scaled by ``p**2`` and the coherences by ``p``. Two
qubits in separate reservoir banks evolve under the tensor product of their
single-qubit maps.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .qcore import KET0, KET1, as_state, projector, tensor


class Family(enum.Enum):
    PSI = "Psi"  # alpha|10> + beta|01>
    PHI = "Phi"  # alpha|11> + beta|00>


@dataclass(frozen=True)
class BellLikeState:
    alpha: complex
    beta: complex
    family: Family = Family.PSI

    def __post_init__(self):
        norm = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"|alpha|^2 + |beta|^2 = {norm!r}, expected 1")
        object.__setattr__(self, "family", Family(self.family))

    @classmethod
    def from_alpha_sq(cls, alpha_sq: float, family=Family.PSI) -> "BellLikeState":
        """Real non-negative amplitudes with ``|alpha|^2 = alpha_sq``."""
        if not 0.0 <= alpha_sq <= 1.0:
            raise ValueError(f"alpha_sq must lie in [0, 1], got {alpha_sq!r}")
        return cls(math.sqrt(alpha_sq), math.sqrt(1.0 - alpha_sq), family)

    def ket(self) -> np.ndarray:
        if self.family is Family.PSI:
            return self.alpha * tensor(KET1, KET0) + self.beta * tensor(KET0, KET1)
        return self.alpha * tensor(KET1, KET1) + self.beta * tensor(KET0, KET0)

    def density_matrix(self) -> np.ndarray:
        return projector(self.ket())


PSI_PLUS = BellLikeState(1 / math.sqrt(2), 1 / math.sqrt(2), Family.PSI)


def _check_p(p) -> float:
    if isinstance(p, complex) or np.iscomplexobj(p):
        raise TypeError("decay amplitude must be real")
    p = float(p)
    if not abs(p) <= 1.0:
        raise ValueError(f"decay amplitude must satisfy |p| <= 1, got {p!r}")
    return p


@dataclass(frozen=True)
class TransferCoefficients:
    """Nonzero entries of the single-qubit map, ``rho_out[i,i'] = sum S[i,i'][l,l'] rho_in[l,l']``.

    Attribute names read ``s_<out>_<in>``, e.g. ``s_00_11`` moves the input
    population at ``|1><1|`` into the output ``|0><0|``.
    """

    s_11_11: float
    s_10_10: float
    s_01_01: float
    s_00_00: float
    s_00_11: float

    def tensor(self) -> np.ndarray:
        """Rank-4 array ``T[i, i', l, l']`` in the ``{|1>, |0>}`` index order."""
        # index 0 is |1>, index 1 is |0>
        T = np.zeros((2, 2, 2, 2))
        T[0, 0, 0, 0] = self.s_11_11
        T[0, 1, 0, 1] = self.s_10_10
        T[1, 0, 1, 0] = self.s_01_01
        T[1, 1, 1, 1] = self.s_00_00
        T[1, 1, 0, 0] = self.s_00_11
        return T

    def as_tuple(self) -> tuple[float, ...]:
        return (self.s_11_11, self.s_10_10, self.s_01_01, self.s_00_00, self.s_00_11)


def transfer_coefficients(p: float) -> TransferCoefficients:
    p = _check_p(p)
    return TransferCoefficients(p * p, p, p, 1.0, 1.0 - p * p)


def evolve_single(rho0, p: float) -> np.ndarray:
    """Single-qubit decay map with real amplitude ``p``."""
    p = _check_p(p)
    rho0 = as_state(rho0, 2)
    excited = rho0[0, 0].real * p * p
    return np.array(
        [[excited, rho0[0, 1] * p], [rho0[1, 0] * p, 1.0 - excited]], dtype=complex
    )


def evolve_pair(rho0, p_a: float, p_b: float) -> np.ndarray:
    """Apply independent decay maps to both qubits of a 4x4 state.

    Full contraction ``rho[i i', j j'] = sum A[i,i',l,l'] B[j,j',m,m'] rho0[l l', m m']``
    so arbitrary (not only single-excitation) inputs are supported.
    """
    A = transfer_coefficients(p_a).tensor()
    B = transfer_coefficients(p_b).tensor()
    rho0 = as_state(rho0, 4).reshape(2, 2, 2, 2)  # (l, m, l', m')
    out = np.einsum("iklm,jnop,lomp->ijkn", A, B, rho0)
    return out.reshape(4, 4)


def bell_like_evolved(state: BellLikeState, p_a: float, p_b: float) -> np.ndarray:
    """Evolved two-qubit state for a Bell-like initial state.

    The ``Psi`` family uses the closed-form X matrix directly. The ``Phi``
    family is produced by :func:`evolve_pair` on the initial projector.
    """
    p_a = _check_p(p_a)
    p_b = _check_p(p_b)
    if state.family is Family.PHI:
        return evolve_pair(state.density_matrix(), p_a, p_b)
    a, b = state.alpha, state.beta
    pop_a = abs(a * p_a) ** 2
    pop_b = abs(b * p_b) ** 2
    coh = a * np.conj(b) * p_a * p_b
    rho = np.zeros((4, 4), dtype=complex)
    rho[1, 1] = pop_a
    rho[2, 2] = pop_b
    rho[3, 3] = 1.0 - pop_a - pop_b
    rho[1, 2] = coh
    rho[2, 1] = np.conj(coh)
    return rho
