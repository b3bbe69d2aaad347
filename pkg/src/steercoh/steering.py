"""Steered coherence: conditional states, coherence measures and their maxima.

Alice measures qubit A projectively along ``m = (sin t cos f, sin t sin f, cos t)``
and Bob's qubit collapses to ``tr_A(M x 1 rho_AB) / p_M``. Its coherence is
measured in the eigenbasis of Bob's unconditioned marginal.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import reservoir
from .evolution import BellLikeState, Family
from .optimize import golden_section_max, grid_then_golden
from .qcore import (
    COMPUTATIONAL,
    IDENTITY2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    BasisChoice,
    as_state,
    bloch_vector,
    eigensystem_hermitian,
    partial_trace_A,
)

# outcomes less likely than this have no well-defined conditional state
DEGENERATE_PROB = 1e-12
DEGENERACY_TOL = 1e-10


class Measure(enum.Enum):
    L1 = "l1"
    RELATIVE_ENTROPY = "re"


class DegenerateOutcomeError(ValueError):
    """The requested measurement outcome has (numerically) zero probability."""


@dataclass(frozen=True)
class MeasurementDirection:
    theta: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta!r}")
        if not 0.0 <= self.phi < 2.0 * math.pi:
            raise ValueError(f"phi must lie in [0, 2 pi), got {self.phi!r}")

    def projector(self) -> np.ndarray:
        st = math.sin(self.theta)
        m = (st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta))
        return 0.5 * (IDENTITY2 + m[0] * SIGMA_X + m[1] * SIGMA_Y + m[2] * SIGMA_Z)


@dataclass(frozen=True)
class ConditionalOutcome:
    state: np.ndarray
    probability: float


@dataclass(frozen=True)
class MscResult:
    value: float
    optimal_theta: float
    optimal_phi: float
    measure: Measure
    reference_basis: BasisChoice
    phi_independent: bool = True
    # minimum over alternative eigenbases; only filled in when requested and rho_B is degenerate
    degenerate_infimum: float | None = None


def _projectors(theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    st = np.sin(theta)
    mx, my, mz = st * np.cos(phi), st * np.sin(phi), np.cos(theta)
    M = np.empty(theta.shape + (2, 2), dtype=complex)
    M[..., 0, 0] = 0.5 * (1 + mz)
    M[..., 1, 1] = 0.5 * (1 - mz)
    M[..., 0, 1] = 0.5 * (mx - 1j * my)
    M[..., 1, 0] = 0.5 * (mx + 1j * my)
    return M


def _unnormalized_conditionals(rho_ab: np.ndarray, theta, phi) -> np.ndarray:
    """``tr_A(M x 1 rho_AB)`` for broadcast arrays of angles."""
    M = _projectors(theta, phi)
    R = rho_ab.reshape(2, 2, 2, 2)
    return np.einsum("...ac,cbad->...bd", M, R)


def _conditional_parts(rho_ab: np.ndarray, basis: BasisChoice) -> np.ndarray:
    """``V^dagger tr_A(P x 1 rho_AB) V`` for ``P`` in (1, sx, sy, sz)."""
    R = rho_ab.reshape(2, 2, 2, 2)
    V = basis.vectors
    parts = [np.einsum("ac,cbad->bd", P, R) for P in (IDENTITY2, SIGMA_X, SIGMA_Y, SIGMA_Z)]
    return np.array([V.conj().T @ q @ V for q in parts])


def _conditionals_from_parts(parts: np.ndarray, theta, phi) -> np.ndarray:
    theta = np.asarray(theta, float)
    phi = np.asarray(phi, float)
    st = np.sin(theta)
    mx, my, mz = st * np.cos(phi), st * np.sin(phi), np.cos(theta)
    mx, my, mz = (np.asarray(x)[..., None, None] for x in (mx, my, mz))
    return 0.5 * (parts[0] + mx * parts[1] + my * parts[2] + mz * parts[3])


def conditional_state(rho_ab, direction: MeasurementDirection) -> ConditionalOutcome:
    """Bob's post-measurement state and its probability for one outcome."""
    rho_ab = as_state(rho_ab, 4)
    sigma = _unnormalized_conditionals(rho_ab, direction.theta, direction.phi)
    p = float(np.real(np.trace(sigma)))
    if p < DEGENERATE_PROB:
        raise DegenerateOutcomeError(f"outcome probability {p:.3g} below {DEGENERATE_PROB}")
    return ConditionalOutcome(sigma / p, min(p, 1.0))


def _binary_entropy(x: np.ndarray) -> np.ndarray:
    x = np.clip(x, 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        h = -x * np.log2(x) - (1 - x) * np.log2(1 - x)
    return np.where((x <= 0) | (x >= 1), 0.0, h)


def _coherences(rho: np.ndarray, basis: BasisChoice, measure: Measure) -> np.ndarray:
    """Coherence of a batch of normalized 2x2 states (``...x2x2``)."""
    V = basis.vectors
    return _coherences_in_basis(np.einsum("ji,...jk,kl->...il", V.conj(), rho, V), measure)


def _coherences_in_basis(r: np.ndarray, measure: Measure) -> np.ndarray:
    off = np.abs(r[..., 0, 1])
    if measure is Measure.L1:
        return 2.0 * off
    pop = np.real(r[..., 0, 0])
    z = np.real(r[..., 0, 0] - r[..., 1, 1])
    radius = np.sqrt(z * z + 4.0 * off * off)
    return np.clip(_binary_entropy(pop) - _binary_entropy(0.5 * (1 + radius)), 0.0, None)


def l1_coherence(rho, basis: BasisChoice = COMPUTATIONAL) -> float:
    """Sum of the moduli of the off-diagonal elements in ``basis``."""
    rho = as_state(rho, 2)
    return float(_coherences(rho, basis, Measure.L1))


def rel_entropy_coherence(rho, basis: BasisChoice = COMPUTATIONAL) -> float:
    """``S(diag rho) - S(rho)`` in bits, with the diagonal taken in ``basis``."""
    rho = as_state(rho, 2)
    return float(_coherences(rho, basis, Measure.RELATIVE_ENTROPY))


def coherence(rho, basis: BasisChoice = COMPUTATIONAL, measure=Measure.L1) -> float:
    rho = as_state(rho, 2)
    return float(_coherences(rho, basis, Measure(measure)))


def reference_basis(rho_b) -> BasisChoice:
    """Eigenbasis of Bob's marginal.

    A degenerate spectrum has no preferred eigenbasis; the computational
    basis is returned and flagged.
    """
    rho_b = as_state(rho_b, 2)
    evals, evecs = eigensystem_hermitian(rho_b)
    if evals[0] - evals[1] <= DEGENERACY_TOL:
        return BasisChoice(COMPUTATIONAL.vectors, degenerate=True)
    if rho_b[0, 1] == 0:
        return COMPUTATIONAL
    return BasisChoice(evecs)


def _haar_bases(n: int, seed: int = 20240611) -> list[BasisChoice]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        q, r = np.linalg.qr(z)
        q = q * (np.diag(r) / np.abs(np.diag(r)))
        out.append(BasisChoice(q))
    return out


def _max_over_grid(rho_ab, basis, measure, thetas, phis) -> float:
    T, F = np.meshgrid(thetas, phis, indexing="ij")
    sigma = _unnormalized_conditionals(rho_ab, T, F)
    p = np.real(np.trace(sigma, axis1=-2, axis2=-1))
    ok = p >= DEGENERATE_PROB
    if not np.any(ok):
        return 0.0
    vals = _coherences(sigma[ok] / p[ok][:, None, None], basis, measure)
    return float(vals.max())


def msc_numeric(
    rho_ab,
    measure: Measure | str = Measure.L1,
    tol: float = 1e-8,
    n_grid: int = 2001,
    n_phi: int = 16,
    diagnose_degenerate: bool = False,
) -> MscResult:
    """Maximal steered coherence by direct search over projective measurements.

    The polar angle is searched on a uniform ``n_grid``-point grid on
    ``[0, pi]`` and refined by golden section to ``tol``. A coarse
    ``n_phi``-point azimuth scan first checks whether the objective depends
    on ``phi``; if it does not (within 1e-10) ``phi`` is fixed to 0, else
    ``theta`` and ``phi`` are refined alternately.

    Outcomes with probability below ``DEGENERATE_PROB`` are excluded. If no
    valid outcome has positive coherence the result is 0.

    With ``diagnose_degenerate`` and a degenerate marginal, the value is also
    evaluated in 1000 random alternative bases on a coarse grid and the
    smallest is reported in ``degenerate_infimum``.
    """
    measure = Measure(measure)
    rho_ab = as_state(rho_ab, 4)
    basis = reference_basis(partial_trace_A(rho_ab))

    parts = _conditional_parts(rho_ab, basis)

    def objective(theta, phi):
        r = _conditionals_from_parts(parts, theta, phi)
        p = np.real(r[..., 0, 0] + r[..., 1, 1])
        ok = p >= DEGENERATE_PROB
        safe_p = np.where(ok, p, 1.0)
        vals = _coherences_in_basis(r / safe_p[..., None, None], measure)
        return np.where(ok, vals, -np.inf)

    coarse_t = np.linspace(0.0, math.pi, 65)
    coarse_f = np.linspace(0.0, 2.0 * math.pi, n_phi, endpoint=False)
    scan = objective(coarse_t[:, None], coarse_f[None, :])
    finite = np.isfinite(scan[:, 0])
    phi_independent = bool(np.all(np.abs(scan[finite] - scan[finite, :1]) <= 1e-10))

    theta, value = grid_then_golden(lambda t: objective(t, 0.0), 0.0, math.pi, n_grid, tol)
    phi = 0.0
    if not phi_independent:
        # seed from the best coarse azimuth, then alternate 1-D refinements
        k = int(np.argmax(np.max(scan, axis=0)))
        phi_k = float(coarse_f[k])
        theta_k, value_k = grid_then_golden(lambda t: objective(t, phi_k), 0.0, math.pi, n_grid, tol)
        if value_k > value:
            theta, phi, value = theta_k, phi_k, value_k
        step = 2.0 * math.pi / n_phi
        for _ in range(10):
            th = theta
            ph, _ = golden_section_max(lambda f: float(objective(th, f)), phi - step, phi + step, tol)
            ph %= 2.0 * math.pi
            theta_new, value_new = grid_then_golden(
                lambda t: objective(t, ph), 0.0, math.pi, n_grid, tol
            )
            gain = value_new - value
            if gain > 0:
                theta, phi, value = theta_new, ph, value_new
            step = max(step / 4.0, 16.0 * tol)
            if gain <= tol:
                break

    if not np.isfinite(value) or value <= 0.0:
        value = 0.0

    infimum = None
    if diagnose_degenerate and basis.degenerate:
        thetas = np.linspace(0.0, math.pi, 201)
        phis = np.linspace(0.0, 2.0 * math.pi, 32, endpoint=False)
        infimum = min(
            [value] + [_max_over_grid(rho_ab, b, measure, thetas, phis) for b in _haar_bases(1000)]
        )

    return MscResult(
        value=float(value),
        optimal_theta=float(theta),
        optimal_phi=float(phi),
        measure=measure,
        reference_basis=basis,
        phi_independent=phi_independent,
        degenerate_infimum=infimum,
    )


def msc_l1_closed_form(alpha, p_a: float, beta, p_b: float) -> float:
    """l1 steered coherence of an evolved ``Psi`` (or ``Phi``) Bell-like state.

    ``|beta p_b| / sqrt(1 - |alpha p_a|^2)`` for ``alpha beta != 0``, else 0.
    At ``p_a = 0`` this is the supremum approached as the optimal outcome's
    probability goes to zero. Rounding above the qubit bound 1 is clipped.
    """
    if alpha == 0 or beta == 0:
        return 0.0
    return min(1.0, abs(beta * p_b) / math.sqrt(1.0 - abs(alpha * p_a) ** 2))


def optimal_polar_angle(alpha, p_a: float) -> float:
    x = abs(alpha * p_a) ** 2
    return math.acos(min(1.0, max(-1.0, 1.0 - 2.0 * x)))


def msc_peak_value(state: BellLikeState, bank: reservoir.ReservoirBank, l: int) -> float:
    """l1 steered coherence at the ``l``-th revival peak, equal banks on both qubits."""
    if state.family is not Family.PSI:
        raise ValueError("peak formula is stated for the Psi family")
    if reservoir.regime(bank) is not reservoir.Regime.NON_MARKOVIAN:
        raise reservoir.RegimeError(f"bank {bank} is not non-Markovian")
    if int(l) != l or l < 1:
        raise ValueError(f"l must be a positive integer, got {l!r}")
    if state.alpha == 0 or state.beta == 0:
        return 0.0
    rl = reservoir.bri_measure(bank) ** (l - 1)
    return abs(state.beta) * rl / math.sqrt(1.0 - abs(state.alpha) ** 2 * rl * rl)


def max_coherence_under_unitary(rho) -> float:
    """Largest l1 coherence reachable by a unitary: the Bloch vector length."""
    rho = as_state(rho, 2)
    return float(np.linalg.norm(bloch_vector(rho)))


def msc_l1_unitary_optimized(alpha, p_a: float, beta, p_b: float) -> float:
    """Bloch length of the optimal conditional state (Bob applies the best unitary).

    Equal to ``sqrt(1 - b (1 - a - b) / (1 - a)^2)`` with ``a = |alpha p_a|^2``,
    ``b = |beta p_b|^2``. It is evaluated as the hypotenuse of the transverse
    part (the l1 MSC) and the longitudinal part ``(1 - a - b) / (1 - a)``, so
    the result never drops below the l1 MSC through rounding.
    """
    a = abs(alpha * p_a) ** 2
    b = abs(beta * p_b) ** 2
    if b == 0.0:
        return 1.0
    return min(1.0, math.hypot(msc_l1_closed_form(alpha, p_a, beta, p_b), (1.0 - a - b) / (1.0 - a)))


def unassisted_coherence(alpha, beta, p_b: float) -> float:
    """l1 coherence of ``alpha|1> + beta|0>`` after decay with amplitude ``p_b``."""
    return 2.0 * abs(alpha * np.conj(beta) * p_b)


def steering_advantage_threshold(p_a: float) -> float:
    """Largest ``|alpha|^2`` below which steering beats the unassisted coherence.

    ``(1 - sqrt(1 - p_a^2)) / (2 p_a^2)`` written as ``1 / (2 (1 + sqrt(1 - p_a^2)))``,
    which is finite at ``p_a = 0`` (value 1/4).
    """
    x = float(p_a) ** 2
    if x > 1.0:
        raise ValueError(f"|p_a| must be <= 1, got {p_a!r}")
    return 1.0 / (2.0 * (1.0 + math.sqrt(1.0 - x)))
