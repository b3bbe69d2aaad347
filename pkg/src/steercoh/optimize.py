"""Deterministic one-dimensional maximization."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI_SQ = (3.0 - math.sqrt(5.0)) / 2.0


def golden_section_max(f: Callable[[float], float], a: float, b: float, tol: float = 1e-8):
    """Maximize a unimodal ``f`` on ``[a, b]`` by golden-section search.

    Returns ``(x, f(x))`` with ``x`` within ``tol`` of the maximizer. The
    interval ends are always evaluated too, so a maximum sitting on the
    boundary is not lost.
    """
    a, b = min(a, b), max(a, b)
    ends = [(a, f(a)), (b, f(b))]
    h = b - a
    if h <= tol:
        return max(ends, key=lambda xf: xf[1])
    n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))
    c = a + INV_PHI_SQ * h
    d = a + INV_PHI * h
    fc, fd = f(c), f(d)
    for _ in range(n):
        if fc >= fd:
            b, d, fd = d, c, fc
            h *= INV_PHI
            c = a + INV_PHI_SQ * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h *= INV_PHI
            d = a + INV_PHI * h
            fd = f(d)
    # max() keeps the first of equal values, so interior points win ties
    return max([(c, fc), (d, fd)] + ends, key=lambda xf: xf[1])


def grid_then_golden(
    f_batch: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    n_grid: int = 2001,
    tol: float = 1e-8,
):
    """Global maximum of a smooth 1-D function: uniform grid, then refinement.

    ``f_batch`` maps an array of abscissae to an array of values (``-inf``
    marks points to exclude). The grid maximum is bracketed by its two
    neighbours and refined with :func:`golden_section_max`. Ties on the grid
    resolve to the lowest index.
    """
    xs = np.linspace(lo, hi, n_grid)
    ys = np.asarray(f_batch(xs), dtype=float)
    j = int(np.argmax(ys))
    x_grid, y_grid = float(xs[j]), float(ys[j])
    if not np.isfinite(y_grid):
        return x_grid, y_grid
    a = float(xs[max(j - 1, 0)])
    b = float(xs[min(j + 1, n_grid - 1)])
    x, y = golden_section_max(lambda x: float(f_batch(np.array([x]))[0]), a, b, tol)
    if y >= y_grid:
        return x, y
    return x_grid, y_grid
