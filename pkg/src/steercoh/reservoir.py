"""Exact decay amplitude of a qubit in N identical Lorentzian reservoirs.

A bank of ``N`` reservoirs with width ``lambda`` and coupling ``gamma`` acts
on the qubit like a single reservoir of coupling ``N * gamma``. The decay
amplitude is real and is oscillatory when ``lambda < 2 N gamma``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

# relative width of the band around lambda == 2 N gamma treated as critical
CRITICAL_RTOL = 1e-9


class Regime(enum.Enum):
    MARKOVIAN = "Markovian"
    CRITICAL = "Critical"
    NON_MARKOVIAN = "NonMarkovian"


class RegimeError(ValueError):
    """Raised when an operation needs a regime the bank is not in."""


@dataclass(frozen=True)
class ReservoirBank:
    """``n_reservoirs`` identical Lorentzian reservoirs acting on one qubit.

    ``lam`` is the spectral width and ``gamma`` the coupling; both are rates
    in the same (arbitrary) inverse-time unit.
    """

    lam: float
    gamma: float
    n_reservoirs: int = 1

    def __post_init__(self):
        if not (self.lam > 0 and math.isfinite(self.lam)):
            raise ValueError(f"lam must be positive, got {self.lam!r}")
        if not (self.gamma > 0 and math.isfinite(self.gamma)):
            raise ValueError(f"gamma must be positive, got {self.gamma!r}")
        if int(self.n_reservoirs) != self.n_reservoirs or self.n_reservoirs < 1:
            raise ValueError(f"n_reservoirs must be an integer >= 1, got {self.n_reservoirs!r}")
        object.__setattr__(self, "n_reservoirs", int(self.n_reservoirs))

    @property
    def effective_gamma(self) -> float:
        return self.n_reservoirs * self.gamma

    @property
    def d(self) -> float:
        return d_parameter(self)

    @property
    def regime(self) -> Regime:
        return regime(self)


def d_parameter(bank: ReservoirBank) -> float:
    """``sqrt(|lambda^2 - 2 N gamma lambda|)``."""
    lam = bank.lam
    return math.sqrt(abs(lam * lam - 2.0 * bank.effective_gamma * lam))


def regime(bank: ReservoirBank) -> Regime:
    lam, two_ng = bank.lam, 2.0 * bank.effective_gamma
    if abs(lam - two_ng) <= CRITICAL_RTOL * lam:
        return Regime.CRITICAL
    return Regime.NON_MARKOVIAN if lam < two_ng else Regime.MARKOVIAN


def critical_reservoir_number(lam: float, gamma: float) -> int:
    """Smallest N from which the bank is non-Markovian: ``floor(lam / 2 gamma) + 1``.

    When ``lam / 2 gamma`` is an integer ``k`` the bank with ``N = k`` sits
    exactly on the boundary (see :class:`Regime`), so ``k + 1`` is returned.
    """
    if not (lam > 0 and gamma > 0):
        raise ValueError(f"lam and gamma must be positive, got {lam!r}, {gamma!r}")
    x = lam / (2.0 * gamma)
    k = round(x)
    # snap ratios like 0.6 / 0.4 that land a few ulps below an integer
    if abs(x - k) <= CRITICAL_RTOL * max(1.0, x):
        return int(k) + 1
    return math.floor(x) + 1


def decay_amplitude(bank: ReservoirBank, t):
    """Decay amplitude ``p(t)``; ``t`` may be a scalar or an array.

    Returns a float for scalar ``t`` and an ndarray otherwise.
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0) or not np.all(np.isfinite(t_arr)):
        raise ValueError("time must be finite and non-negative")
    lam = bank.lam
    reg = regime(bank)
    envelope = np.exp(-0.5 * lam * t_arr)
    if reg is Regime.CRITICAL:
        p = envelope * (1.0 + 0.5 * lam * t_arr)
    else:
        d = d_parameter(bank)
        x = 0.5 * d * t_arr
        if reg is Regime.NON_MARKOVIAN:
            p = envelope * (np.cos(x) + (lam / d) * np.sin(x))
        else:
            # envelope * cosh(x) overflows separately for large t; combine exponents
            ep = np.exp(x - 0.5 * lam * t_arr)
            em = np.exp(-x - 0.5 * lam * t_arr)
            p = 0.5 * (ep + em) + (lam / d) * 0.5 * (ep - em)
    if p.ndim == 0:
        return float(p)
    return p


def _require_non_markovian(bank: ReservoirBank) -> float:
    reg = regime(bank)
    if reg is not Regime.NON_MARKOVIAN:
        raise RegimeError(f"bank {bank} is {reg.value}, not non-Markovian")
    return d_parameter(bank)


def _check_index(l: int) -> int:
    if int(l) != l or l < 1:
        raise ValueError(f"index l must be a positive integer, got {l!r}")
    return int(l)


def zero_time(bank: ReservoirBank, l: int) -> float:
    """Time of the ``l``-th zero of ``p``: ``2 (l pi - atan(d / lambda)) / d``."""
    d = _require_non_markovian(bank)
    l = _check_index(l)
    return 2.0 * (l * math.pi - math.atan(d / bank.lam)) / d


def peak_time(bank: ReservoirBank, l: int) -> float:
    """Time of the ``l``-th local maximum of ``|p|``: ``2 (l - 1) pi / d``."""
    d = _require_non_markovian(bank)
    l = _check_index(l)
    return 2.0 * (l - 1) * math.pi / d


def oscillation_period(bank: ReservoirBank) -> float:
    """Period ``2 pi / d`` of ``|p(t)|``."""
    return 2.0 * math.pi / _require_non_markovian(bank)


def bri_measure(bank: ReservoirBank) -> float:
    """Backflow-to-outflow ratio ``exp(-lambda pi / d)``; 0 unless non-Markovian."""
    if regime(bank) is not Regime.NON_MARKOVIAN:
        return 0.0
    return math.exp(-bank.lam * math.pi / d_parameter(bank))


def blp_measure(bank: ReservoirBank) -> float:
    """Trace-distance non-Markovianity, the geometric sum of ``r**l`` for ``l >= 1``."""
    r = bri_measure(bank)
    return r / (1.0 - r)


def blp_numeric_oracle(bank: ReservoirBank, t_max: float, dt: float) -> float:
    """Integrate the positive part of ``d|p|/dt`` numerically up to ``t_max``.

    ``|p|`` is the trace distance of the evolved sigma_x eigenstates. Growth
    intervals ``[t_z(l), t_p(l+1)]`` come from the analytic zeros and peaks;
    the derivative inside each is taken by centered differences on a uniform
    grid of spacing at most ``dt`` and integrated with the trapezoid rule.
    Intervals that do not fit before ``t_max`` are added as the exact
    geometric tail, so the result is comparable with :func:`blp_measure`.
    """
    d = _require_non_markovian(bank)
    period = 2.0 * math.pi / d
    if t_max < 6.0 * period:
        raise ValueError(f"t_max={t_max} covers fewer than 6 periods ({period:.6g} each)")
    if not dt > 0:
        raise ValueError("dt must be positive")
    total = 0.0
    l = 1
    while peak_time(bank, l + 1) <= t_max:
        a, b = zero_time(bank, l), peak_time(bank, l + 1)
        n = max(3, int(math.ceil((b - a) / dt)) + 1)
        t = np.linspace(a, b, n)
        rate = np.gradient(np.abs(decay_amplitude(bank, t)), t, edge_order=2)
        total += float(np.trapezoid(np.clip(rate, 0.0, None), t))
        l += 1
    r = bri_measure(bank)
    # l counts completed intervals + 1; remaining terms r**l, r**(l+1), ...
    return total + r**l / (1.0 - r)
