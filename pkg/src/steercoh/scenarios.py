"""Plot-ready datasets: time sweeps, (|p_A|, |p_B|) surfaces, non-Markovianity tables.

Time is expressed as ``lambda t`` with ``lambda = 1``; couplings are given
as ``gamma / lambda``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, fields

import numpy as np

from . import reservoir
from .config import ScenarioConfig
from .entanglement import cnot_convert, concurrence_x_state, optimal_success_probability
from .evolution import BellLikeState, Family, bell_like_evolved
from .reservoir import ReservoirBank, Regime
from .steering import (
    DegenerateOutcomeError,
    MeasurementDirection,
    Measure,
    conditional_state,
    msc_l1_closed_form,
    msc_numeric,
    optimal_polar_angle,
    unassisted_coherence,
)

NAN = float("nan")


@dataclass(frozen=True)
class SweepRow:
    t_lambda: float
    p_a: float
    p_b: float
    msc_l1: float = NAN
    msc_re: float = NAN
    concurrence_ab: float = NAN
    bc_concurrence: float = NAN
    success_prob: float = NAN
    unassisted_l1: float = NAN


SWEEP_COLUMNS = tuple(f.name for f in fields(SweepRow))
SURFACE_COLUMNS = ("p_a", "p_b", "msc_l1", "msc_re")
NONMARKOV_COLUMNS = (
    "n_reservoirs",
    "regime",
    "d",
    "n_cr",
    "above_critical",
    "t_z1",
    "t_p2",
    "n_bri",
    "n_blp",
    "n_blp_numeric",
)


def banks(config: ScenarioConfig) -> tuple[ReservoirBank, ReservoirBank]:
    g = config.gamma_over_lambda
    return ReservoirBank(1.0, g, config.n_a), ReservoirBank(1.0, g, config.n_b)


def initial_state(config: ScenarioConfig) -> BellLikeState:
    return BellLikeState.from_alpha_sq(config.alpha_sq, Family(config.family))


def optimal_conversion(state: BellLikeState, rho_ab, p_a: float) -> tuple[float, float]:
    """BC concurrence from the optimal conditional state, and that outcome's probability.

    A zero-probability optimal outcome creates nothing; both values are 0.
    """
    theta0 = optimal_polar_angle(state.alpha, p_a)
    try:
        outcome = conditional_state(rho_ab, MeasurementDirection(theta0, 0.0))
    except DegenerateOutcomeError:
        return 0.0, 0.0
    report = cnot_convert(outcome.state, outcome.probability)
    return report.bc_concurrence, optimal_success_probability(state.alpha, p_a)


def sweep_row(config: ScenarioConfig, t_lambda: float) -> SweepRow:
    """All requested quantities at one time ``lambda t``."""
    bank_a, bank_b = banks(config)
    state = initial_state(config)
    p_a = reservoir.decay_amplitude(bank_a, t_lambda)
    p_b = reservoir.decay_amplitude(bank_b, t_lambda)
    m = set(config.measures)
    values = {"t_lambda": float(t_lambda), "p_a": p_a, "p_b": p_b}
    rho = bell_like_evolved(state, p_a, p_b) if m - {"msc_l1", "unassisted", "nonmarkov"} else None
    if "msc_l1" in m:
        values["msc_l1"] = msc_l1_closed_form(state.alpha, p_a, state.beta, p_b)
    if "msc_re" in m:
        values["msc_re"] = msc_numeric(rho, Measure.RELATIVE_ENTROPY, tol=1e-8).value
    if "concurrence_ab" in m:
        values["concurrence_ab"] = concurrence_x_state(rho)
    if "conversion" in m:
        values["bc_concurrence"], values["success_prob"] = optimal_conversion(state, rho, p_a)
    if "unassisted" in m:
        values["unassisted_l1"] = unassisted_coherence(state.alpha, state.beta, p_b)
    return SweepRow(**values)


def time_grid(config: ScenarioConfig) -> np.ndarray:
    return np.linspace(0.0, config.t_lambda_max, config.steps)


def sweep(config: ScenarioConfig, times=None) -> list[SweepRow]:
    """One row per time point, in index order. ``times`` overrides the config grid."""
    grid = time_grid(config) if times is None else np.asarray(times, dtype=float)
    return [sweep_row(config, float(t)) for t in grid]


def surface(config: ScenarioConfig, n_grid: int = 21) -> list[dict]:
    """MSC over a uniform grid of ``p_A, p_B`` in ``[0, 1]`` (banks are ignored)."""
    if n_grid < 11:
        raise ValueError(f"surface grid needs at least 11 points per axis, got {n_grid}")
    state = initial_state(config)
    axis = np.linspace(0.0, 1.0, n_grid)
    want_re = "msc_re" in config.measures
    rows = []
    for p_a in axis:
        for p_b in axis:
            row = {
                "p_a": float(p_a),
                "p_b": float(p_b),
                "msc_l1": msc_l1_closed_form(state.alpha, p_a, state.beta, p_b),
                "msc_re": NAN,
            }
            if want_re:
                rho = bell_like_evolved(state, float(p_a), float(p_b))
                row["msc_re"] = msc_numeric(rho, Measure.RELATIVE_ENTROPY).value
            rows.append(row)
    return rows


def nonmarkov_row(lam: float, gamma: float, n: int) -> dict:
    bank = ReservoirBank(lam, gamma, n)
    reg = reservoir.regime(bank)
    n_cr = reservoir.critical_reservoir_number(lam, gamma)
    row = {
        "n_reservoirs": n,
        "regime": reg.value,
        "d": reservoir.d_parameter(bank),
        "n_cr": n_cr,
        "above_critical": int(n >= n_cr),
        "t_z1": NAN,
        "t_p2": NAN,
        "n_bri": reservoir.bri_measure(bank),
        "n_blp": reservoir.blp_measure(bank),
        "n_blp_numeric": NAN,
    }
    if reg is Regime.NON_MARKOVIAN:
        period = reservoir.oscillation_period(bank)
        row["t_z1"] = reservoir.zero_time(bank, 1)
        row["t_p2"] = reservoir.peak_time(bank, 2)
        row["n_blp_numeric"] = reservoir.blp_numeric_oracle(bank, 8.0 * period, period / 2000.0)
    return row


def nonmarkov_table(lam: float, gamma: float, n_list) -> list[dict]:
    return [nonmarkov_row(lam, gamma, int(n)) for n in n_list]


# output --------------------------------------------------------------------


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return ""
    return f"{x:.12g}"


def _json_value(x):
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return int(x)
    x = float(x)
    if math.isnan(x):
        return None
    return float(f"{x:.12g}")


def as_records(rows) -> list[dict]:
    out = []
    for r in rows:
        out.append(r if isinstance(r, dict) else {k: getattr(r, k) for k in SWEEP_COLUMNS})
    return out


def render_rows(rows, columns, fmt: str) -> str:
    """Serialize records with a fixed column order as CSV (LF, header) or JSON."""
    records = as_records(rows)
    if fmt == "json":
        data = [{c: _json_value(r[c]) for c in columns} for r in records]
        return json.dumps(data, indent=1) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in records:
        writer.writerow([_fmt(r[c]) for c in columns])
    return buf.getvalue()
