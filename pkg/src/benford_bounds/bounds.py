"""Certified bounds on the distance between ``L(U)`` and ``Unif[0, 1)``.

With ``TV_k = TV(f^(k))``:

=========  ====================  ========================
quantity   k = 0                 k >= 1
=========  ====================  ========================
R(g)       TV_0 / 2              TV_k / (8 * 6^(k-1))
KD(G)      TV_0 / 8              TV_k / (8 * 6^k)
MRAE(G)    TV_0 / 2              TV_k / (2 * 6^k)
=========  ====================  ========================
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .densities import DensityModel, Family
from .total_variation import GAUSSIAN_K_LIMIT, model_tv, tv_gumbel_deriv
from .wrapping import DEFAULT_GRID, Discrepancies, measure_discrepancies, wrap

__all__ = [
    "KBound",
    "BestBounds",
    "BoundReport",
    "GaussianBounds",
    "BoundViolationError",
    "bound_range",
    "bound_kuiper",
    "bound_mrae",
    "bound_pointwise",
    "h_stirling",
    "log_h_stirling",
    "gaussian_bounds",
    "weibull_bound",
    "default_k_max",
    "best_bounds",
]

DOMINANCE_SLACK = 1e-12
GUMBEL_K_MAX = 14
GAUSSIAN_K_MIN = 40
_GROWTH_STOP = 3
# decimal inputs such as 1/6 land a few ulps below the exact value
_FLOOR_ALLOWANCE = 1e-9


class BoundViolationError(AssertionError):
    """A measured discrepancy exceeded its certified bound."""


def _check_k(k: int):
    if k < 0:
        raise ValueError(f"derivative order must be >= 0, got {k}")


def bound_range(tv_k: float, k: int) -> float:
    """Upper bound on ``R(g) = sup g - inf g``."""
    _check_k(k)
    if k == 0:
        return tv_k / 2.0
    return tv_k / (8.0 * 6.0 ** (k - 1))


def bound_kuiper(tv_k: float, k: int) -> float:
    """Upper bound on the Kuiper distance ``KD(G)``."""
    _check_k(k)
    return tv_k / (8.0 * 6.0 ** k)


def bound_mrae(tv_k: float, k: int) -> float:
    """Upper bound on ``MRAE(G)``, hence on relative digit-probability error."""
    _check_k(k)
    return tv_k / (2.0 * 6.0 ** k)


def bound_pointwise(tv_k: float, k: int, x: float, y: float) -> float:
    """Bound on ``|G(y) - G(x) - (y - x)|`` for ``0 <= x < y <= 1``."""
    _check_k(k)
    if not (0.0 <= x < y <= 1.0):
        raise ValueError("need 0 <= x < y <= 1")
    d = y - x
    return d * (1.0 - d) * tv_k / (2.0 * 6.0 ** k)


def log_h_stirling(m: int) -> float:
    """``log h(m)``; finite where ``h(m)`` itself underflows."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return 0.5 * (math.lgamma(m + 1) - m * math.log(m))


def h_stirling(m: int) -> float:
    """``h(m) = sqrt(m! / m^m)`` via log-gamma."""
    return math.exp(log_h_stirling(m))


@dataclass(frozen=True)
class GaussianBounds:
    range: float
    kuiper: float
    mrae: float
    m: int


def gaussian_bounds(sigma: float) -> GaussianBounds:
    """Closed-form bounds for any normal density with standard deviation
    ``sigma >= 1/6`` (and any mean).

    ``m = floor(36 sigma^2)``; the bounds are ``(4.5, 0.75, 3) * h(m)``.
    """
    m = math.floor(36.0 * sigma * sigma + _FLOOR_ALLOWANCE)
    if not sigma > 0 or m < 1:
        raise ValueError(f"Gaussian h(m) bounds require sigma >= 1/6, got {sigma}")
    h = h_stirling(m)
    return GaussianBounds(4.5 * h, 0.75 * h, 3.0 * h, m)


def weibull_bound(tau: float, base: int, k: int) -> float:
    """Bound on the relative error of any leading-digit probability of a
    Weibull variable with shape ``tau`` in base ``base``:
    ``3 TV(f_o^(k)) (tau ln(base) / 6)^(k+1)``."""
    if not tau > 0 or base < 2:
        raise ValueError("need tau > 0 and base >= 2")
    return 3.0 * tv_gumbel_deriv(k).value * (tau * math.log(base) / 6.0) ** (k + 1)


# ---------------------------------------------------------------------------
# per-k report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KBound:
    k: int
    tv_k: float
    range_bound: float
    kuiper_bound: float
    mrae_bound: float


@dataclass(frozen=True)
class BestBounds:
    range_bound: float
    kuiper_bound: float
    mrae_bound: float


@dataclass(frozen=True)
class BoundReport:
    model: DensityModel
    per_k: tuple[KBound, ...]
    best_k: int
    best: BestBounds
    measured: Discrepancies | None = None
    notes: tuple[str, ...] = field(default=())

    def violations(self, slack: float = DOMINANCE_SLACK) -> list[str]:
        """Every ``(k, quantity)`` where the measured value exceeds its bound."""
        if self.measured is None:
            return []
        out = []
        m = self.measured
        for row in self.per_k:
            for name, meas, bound in (("range", m.range_g, row.range_bound),
                                      ("kuiper", m.kuiper, row.kuiper_bound),
                                      ("mrae", m.mrae, row.mrae_bound)):
                if meas > bound + slack:
                    out.append(f"k={row.k}: measured {name} {meas:.6e} > bound {bound:.6e}")
        return out


def default_k_max(model: DensityModel) -> int:
    if model.family is Family.GAUSSIAN:
        # reach k + 1 = floor(36 sigma^2) so the exact route covers the closed form
        m = math.floor(36.0 * model.sigma ** 2 + _FLOOR_ALLOWANCE)
        return min(max(GAUSSIAN_K_MIN, m + 1), GAUSSIAN_K_LIMIT)
    if model.family is Family.GUMBEL:
        return GUMBEL_K_MAX
    return 0


def best_bounds(model: DensityModel, k_max: int | None = None, verify: bool = False,
                grid_n: int = DEFAULT_GRID, slack: float = DOMINANCE_SLACK) -> BoundReport:
    """Certified bounds for every derivative order ``0..k_max`` and their minima.

    ``best_k`` minimises the Kuiper bound (smallest ``k`` on ties).  For
    Gaussian models the scan stops once the Kuiper bound has grown three
    times in a row.  Models without derivatives use ``k = 0`` only.

    With ``verify=True`` the discrepancies of the wrapped distribution are
    measured on a grid of ``grid_n`` cells and attached; a measured value
    above any bound raises :class:`BoundViolationError`.
    """
    notes = []
    if k_max is None:
        k_max = default_k_max(model)
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    if not model.smooth and k_max > 0:
        notes.append(f"{model.family.value} density has no derivatives; k_max forced to 0")
        k_max = 0
    if model.family is Family.GAUSSIAN and k_max > GAUSSIAN_K_LIMIT:
        notes.append(f"k_max capped at {GAUSSIAN_K_LIMIT}")
        k_max = GAUSSIAN_K_LIMIT

    rows: list[KBound] = []
    growth = 0
    for k in range(k_max + 1):
        tv = model_tv(model, k).value
        row = KBound(k, tv, bound_range(tv, k), bound_kuiper(tv, k), bound_mrae(tv, k))
        if rows and model.family is Family.GAUSSIAN:
            growth = growth + 1 if row.kuiper_bound > rows[-1].kuiper_bound else 0
        rows.append(row)
        if growth >= _GROWTH_STOP:
            notes.append(f"stopped at k={k}: Kuiper bound grew {_GROWTH_STOP} times in a row")
            break

    best_row = min(rows, key=lambda r: (r.kuiper_bound, r.k))
    best = BestBounds(min(r.range_bound for r in rows),
                      min(r.kuiper_bound for r in rows),
                      min(r.mrae_bound for r in rows))
    measured = measure_discrepancies(wrap(model), grid_n) if verify else None
    report = BoundReport(model, tuple(rows), best_row.k, best, measured, tuple(notes))
    if verify:
        bad = report.violations(slack)
        if bad:
            raise BoundViolationError("; ".join(bad))
    return report
