"""The wrapped distribution of ``U = Y - floor(Y)``.

``g(x) = sum_z f(z + x)`` and ``G(x) = sum_z (F(z + x) - F(z))`` are evaluated
by direct summation over a truncated range of integer shifts.  The measured
discrepancies from ``Unif[0, 1)`` serve as the reference that every
certified bound is checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .densities import DensityModel, Family

__all__ = [
    "WrappedDist",
    "Discrepancies",
    "wrap",
    "wrapped_pdf",
    "wrapped_cdf",
    "wrapped_interval",
    "measure_discrepancies",
    "wrapped_tv",
    "l1_deviation",
]

TAIL_QUANTILE = 1e-16
MAX_TAIL_BOUND = 1e-12
DEFAULT_GRID = 8192
_PAIR_POINTS = 65
_JUMP_EPS = 1e-13


@dataclass(frozen=True)
class WrappedDist:
    """``g`` and ``G`` for a density model.

    Shifts ``z_min <= z <= z_max`` are summed; ``tail_bound`` bounds the
    neglected mass and the neglected part of every ``g(x)``.
    """

    model: DensityModel
    z_min: int
    z_max: int
    tail_bound: float

    @property
    def trunc_halfwidth(self) -> int:
        return (self.z_max - self.z_min + 1) // 2

    @property
    def shifts(self) -> np.ndarray:
        return np.arange(self.z_min, self.z_max + 1, dtype=float)


@dataclass(frozen=True)
class Discrepancies:
    """Measured distances of ``L(U)`` from the uniform law.

    ``range_g`` is ``sup g - inf g``, ``kuiper`` the Kuiper distance,
    ``mrae`` the maximal relative approximation error and ``ks`` the
    Kolmogorov-Smirnov distance.
    """

    range_g: float
    kuiper: float
    mrae: float
    ks: float


def wrap(model: DensityModel) -> WrappedDist:
    """Choose a shift range whose neglected tails carry at most ``1e-12``."""
    lo, hi = model.quantile_span(TAIL_QUANTILE)
    z_min = math.floor(lo) - 1
    z_max = math.ceil(hi)
    if model.smooth:
        # monotone tails: sum of excluded f(z + x) <= f(edge) + tail mass
        tail = float(model.cdf(lo) + model.sf(hi) + model.pdf(lo) + model.pdf(hi))
    else:
        tail = 0.0
    if tail > MAX_TAIL_BOUND:
        raise ValueError(f"tail bound {tail:.3g} exceeds {MAX_TAIL_BOUND:g}")
    return WrappedDist(model, z_min, z_max, tail)


def _frac(x):
    x = np.asarray(x, dtype=float)
    return x - np.floor(x)


def wrapped_pdf(w: WrappedDist, x):
    """Periodic density ``g(x)`` of the remainder."""
    xf = _frac(x)
    vals = w.model.pdf(np.add.outer(np.atleast_1d(xf), w.shifts))
    out = np.sum(vals, axis=-1)
    return out if np.ndim(x) else float(out[0])


def wrapped_interval(w: WrappedDist, a, b):
    """``P(a <= U < b) = G(b) - G(a)`` for ``0 <= a <= b <= 1``."""
    scalar = np.ndim(a) == 0 and np.ndim(b) == 0
    a, b = np.broadcast_arrays(np.atleast_1d(np.asarray(a, dtype=float)),
                               np.atleast_1d(np.asarray(b, dtype=float)))
    mass = w.model.interval_mass(np.add.outer(a, w.shifts), np.add.outer(b, w.shifts))
    out = np.sum(mass, axis=-1)
    return float(out[0]) if scalar else out


def wrapped_cdf(w: WrappedDist, x):
    """Distribution function ``G(x)`` of the remainder on ``[0, 1]``."""
    xa = np.asarray(x, dtype=float)
    if np.any((xa < 0) | (xa > 1)) or np.any(np.isnan(xa)):
        raise ValueError("wrapped_cdf is defined on [0, 1] only")
    return wrapped_interval(w, np.zeros_like(xa), xa)


# ---------------------------------------------------------------------------
# measurement
# ---------------------------------------------------------------------------


def _grid(w: WrappedDist, grid_n: int) -> np.ndarray:
    pts = [np.linspace(0.0, 1.0, grid_n + 1)]
    bps = _frac(np.asarray(w.model.breakpoints(), dtype=float))
    if bps.size:
        pts.append(bps)
        pts.append(np.clip(bps - _JUMP_EPS, 0.0, 1.0))
        pts.append(np.clip(bps + _JUMP_EPS, 0.0, 1.0))
    return np.unique(np.concatenate(pts))


def _refine(fun, grid, vals, sign, n_top=3):
    """Polish the ``n_top`` largest grid values of ``sign * fun`` by bounded
    scalar search on the neighbouring grid cells."""
    best = float(np.max(sign * vals))
    for i in np.argsort(-sign * vals)[:n_top]:
        lo = grid[max(i - 1, 0)]
        hi = grid[min(i + 1, len(grid) - 1)]
        if hi <= lo:
            continue
        res = optimize.minimize_scalar(lambda t: -sign * fun(t), bounds=(lo, hi),
                                       method="bounded", options={"xatol": 1e-12})
        best = max(best, -float(res.fun))
    return sign * best


def _uniform_levels(model: DensityModel) -> tuple[float, float]:
    # g = m/T + 1{0 < x - mu < a}/T with T = m + a, a in (0, 1]
    T = model.sigma * model.width
    m = math.ceil(T) - 1
    a = T - m
    if a >= 1.0:
        return 1.0, 1.0
    return (m + 1) / T, m / T


def measure_discrepancies(w: WrappedDist, grid_n: int = DEFAULT_GRID) -> Discrepancies:
    """Measure ``R(g)``, Kuiper, MRAE and Kolmogorov-Smirnov distances.

    ``g`` and ``D(x) = G(x) - x`` are sampled on a uniform grid with the
    wrapped breakpoints of non-smooth models injected; for smooth models the
    three most extreme grid points of each are refined.  MRAE is the larger
    of ``sup |g - 1|`` (the limit of short intervals) and the pairwise
    supremum over a coarse grid.
    """
    if grid_n < 64:
        raise ValueError("grid_n must be >= 64")
    grid = _grid(w, grid_n)
    g = np.atleast_1d(wrapped_pdf(w, grid))
    D = np.atleast_1d(wrapped_cdf(w, grid)) - grid
    smooth = w.model.smooth

    if w.model.family is Family.UNIFORM_WIDTH:
        g_hi, g_lo = _uniform_levels(w.model)
    elif smooth:
        gfun = lambda t: wrapped_pdf(w, t)  # noqa: E731
        g_hi = _refine(gfun, grid, g, +1)
        g_lo = _refine(gfun, grid, g, -1)
    else:
        g_hi, g_lo = float(g.max()), float(g.min())

    if smooth:
        dfun = lambda t: wrapped_cdf(w, min(max(t, 0.0), 1.0)) - t  # noqa: E731
        d_hi = _refine(dfun, grid, D, +1)
        d_lo = _refine(dfun, grid, D, -1)
    else:
        # D is piecewise linear or quadratic with exact samples at the knots
        d_hi, d_lo = float(D.max()), float(D.min())
    d_hi, d_lo = max(d_hi, 0.0), min(d_lo, 0.0)

    # coarse pairs only: short intervals are covered by sup |g - 1| and would
    # amplify rounding noise in G
    xs = np.linspace(0.0, 1.0, _PAIR_POINTS)
    i, j = np.triu_indices(_PAIR_POINTS, 1)
    dG = np.atleast_1d(wrapped_interval(w, xs[i], xs[j]))
    pair = float(np.max(np.abs(dG / (xs[j] - xs[i]) - 1.0)))
    mrae = max(abs(g_hi - 1.0), abs(1.0 - g_lo), pair)

    return Discrepancies(
        range_g=max(g_hi - g_lo, 0.0),
        kuiper=d_hi - d_lo,
        mrae=mrae,
        ks=max(d_hi, -d_lo),
    )


def wrapped_tv(w: WrappedDist, grid_n: int = DEFAULT_GRID) -> float:
    """``TV(g, [0, 1])`` from the refined grid (a lower estimate)."""
    grid = _grid(w, grid_n)
    g = np.atleast_1d(wrapped_pdf(w, grid))
    return float(np.sum(np.abs(np.diff(g))))


def l1_deviation(w: WrappedDist, grid_n: int = DEFAULT_GRID) -> float:
    """``int_0^1 |g(x) - 1| dx`` by the trapezoidal rule on the refined grid."""
    grid = _grid(w, grid_n)
    dev = np.abs(np.atleast_1d(wrapped_pdf(w, grid)) - 1.0)
    return float(np.sum(0.5 * (dev[1:] + dev[:-1]) * np.diff(grid)))
