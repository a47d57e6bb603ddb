"""Density families on the real line, their exact derivatives, and
location-scale transport.

Four families are supported:

* ``GAUSSIAN``  -- standard normal base density ``phi``.
* ``GUMBEL``    -- base density ``f_o(y) = e^y exp(-e^y)``, the law of
  ``tau * log(X / gamma)`` for Weibull distributed ``X``.
* ``UNIFORM_WIDTH`` -- ``1{0 <= x < width} / width`` (right-continuous).
* ``PIECEWISE_LINEAR`` -- user supplied knots, linear in between, zero outside.

Every model is the location-scale transform ``f(x) = f_o((x - mu)/sigma)/sigma``
of its base density.  Derivatives of the Gaussian and Gumbel bases are exact:
``phi^(k) = H_k phi`` and ``f_o^(n-1)(y) = p_n(e^y) exp(-e^y)`` with integer
polynomials ``H_k`` and ``p_n``.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import integrate, special

__all__ = [
    "Family",
    "PolyKind",
    "PolySeq",
    "DensityModel",
    "DerivativeUnavailableError",
    "hermite_poly",
    "gumbel_poly",
    "stirling_table",
    "eval_density",
    "eval_derivative",
    "tv_scale",
    "load_pwl_csv",
]

SQRT_2PI = math.sqrt(2.0 * math.pi)
NORMALIZATION_TOL = 1e-10


class DerivativeUnavailableError(ValueError):
    """Raised when a derivative of order k >= 1 is requested from a family
    without classical derivatives."""


class Family(enum.Enum):
    GAUSSIAN = "gaussian"
    GUMBEL = "gumbel"
    UNIFORM_WIDTH = "uniform"
    PIECEWISE_LINEAR = "pwl"


class PolyKind(enum.Enum):
    HERMITE = "hermite"
    GUMBEL_P = "gumbel_p"


# ---------------------------------------------------------------------------
# exact integer polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolySeq:
    """Polynomial with exact integer coefficients, ascending degree."""

    coeffs: tuple[int, ...]
    kind: PolyKind

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        """Evaluate by Horner's rule in floating point."""
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for c in reversed(self.coeffs):
            out = out * x + float(c)
        return out if out.ndim else float(out)

    def derivative_coeffs(self) -> tuple[int, ...]:
        return tuple(j * c for j, c in enumerate(self.coeffs))[1:] or (0,)


def hermite_poly(k: int) -> PolySeq:
    """Integer coefficients of ``H_k`` with ``phi^(k)(x) = H_k(x) phi(x)``.

    Built from ``H_0 = 1`` and ``H_{k+1} = H_k' - x H_k``, so that
    ``H_k = (-1)^k He_k`` in terms of the probabilists' Hermite polynomials.

    >>> hermite_poly(2).coeffs
    (-1, 0, 1)
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    c = [1]
    for _ in range(k):
        new = [0] * (len(c) + 1)
        for j in range(len(new)):
            d = (j + 1) * c[j + 1] if j + 1 < len(c) else 0
            s = c[j - 1] if 1 <= j <= len(c) else 0
            new[j] = d - s
        c = new
    return PolySeq(tuple(c), PolyKind.HERMITE)


def gumbel_poly(n: int) -> PolySeq:
    """Integer coefficients of ``p_n`` with ``f_o^(n-1)(y) = p_n(e^y) exp(-e^y)``.

    Uses ``p_1(t) = t`` and ``p_{n+1}(t) = t (p_n'(t) - p_n(t))``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    c = [0, 1]
    for _ in range(n - 1):
        new = [0] * (len(c) + 1)
        for j in range(1, len(new)):
            a = j * c[j] if j < len(c) else 0
            new[j] = a - c[j - 1]
        c = new
    return PolySeq(tuple(c), PolyKind.GUMBEL_P)


def stirling_table(n_max: int) -> list[list[int]]:
    """Stirling numbers of the second kind ``S[n][k]`` for ``0 <= n, k <= n_max``.

    Python integers keep every entry exact.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    S = [[0] * (n_max + 1) for _ in range(n_max + 1)]
    S[0][0] = 1
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            S[n][k] = S[n - 1][k - 1] + k * S[n - 1][k]
    return S


def _hermite_values(k: int, x: np.ndarray) -> np.ndarray:
    # He_{n+1} = x He_n - n He_{n-1}; H_k = (-1)^k He_k
    prev = np.ones_like(x)
    if k == 0:
        return prev
    cur = x.copy()
    for n in range(1, k):
        prev, cur = cur, x * cur - n * prev
    return cur if k % 2 == 0 else -cur


# ---------------------------------------------------------------------------
# density models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DensityModel:
    """A location-scale density ``f(x) = f_o((x - mu) / sigma) / sigma``.

    Use the classmethod constructors rather than instantiating directly.
    ``weibull_params`` records ``(gamma, tau, base)`` when a Gumbel model was
    built from a Weibull law, so reports can show both parameterizations.
    """

    family: Family
    mu: float = 0.0
    sigma: float = 1.0
    width: float | None = None
    knots: tuple[float, ...] | None = None
    values: tuple[float, ...] | None = None
    weibull_params: tuple[float, float, int] | None = None

    def __post_init__(self):
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise ValueError(f"sigma must be positive and finite, got {self.sigma}")
        if not math.isfinite(self.mu):
            raise ValueError("mu must be finite")
        if self.family is Family.UNIFORM_WIDTH:
            if self.width is None or not self.width > 0:
                raise ValueError("UniformWidth needs width > 0")
        if self.family is Family.PIECEWISE_LINEAR:
            self._check_pwl()
        mass = self._base_mass()
        if abs(mass - 1.0) > NORMALIZATION_TOL:
            raise ValueError(f"base density integrates to {mass!r}, not 1")

    def _check_pwl(self):
        if self.knots is None or self.values is None:
            raise ValueError("PiecewiseLinear needs knots and values")
        if len(self.knots) != len(self.values) or len(self.knots) < 2:
            raise ValueError("knots and values must have equal length >= 2")
        k = np.asarray(self.knots, dtype=float)
        if not np.all(np.isfinite(k)) or np.any(np.diff(k) <= 0):
            raise ValueError("knots must be finite and strictly increasing")
        if any(v < 0 or not math.isfinite(v) for v in self.values):
            raise ValueError("PiecewiseLinear values must be finite and >= 0")

    def _base_mass(self) -> float:
        fam = self.family
        if fam is Family.GAUSSIAN:
            a, _ = integrate.quad(lambda u: math.exp(-0.5 * u * u) / SQRT_2PI,
                                  -np.inf, np.inf, epsabs=1e-13)
            return a
        if fam is Family.GUMBEL:
            # substitute t = e^y: integral of exp(-t) over (0, inf)
            a, _ = integrate.quad(_gumbel_base_pdf, -60.0, 5.0, epsabs=1e-14,
                                  epsrel=1e-13, limit=200)
            return a + math.exp(-math.exp(5.0)) + math.exp(-60.0)
        if fam is Family.UNIFORM_WIDTH:
            return 1.0
        k = np.asarray(self.knots, dtype=float)
        v = np.asarray(self.values, dtype=float)
        # trapezoid rule is exact for piecewise linear functions
        return float(np.sum(0.5 * (v[1:] + v[:-1]) * np.diff(k)))

    # -- constructors --------------------------------------------------------

    @classmethod
    def gaussian(cls, mu: float = 0.0, sigma: float = 1.0) -> "DensityModel":
        return cls(Family.GAUSSIAN, float(mu), float(sigma))

    @classmethod
    def gumbel(cls, mu: float = 0.0, sigma: float = 1.0) -> "DensityModel":
        return cls(Family.GUMBEL, float(mu), float(sigma))

    @classmethod
    def weibull(cls, tau: float, gamma: float = 1.0, base: int = 10) -> "DensityModel":
        """Law of ``Y = log_base X`` for ``X ~ Weibull(gamma, tau)``.

        ``mu = log_base(gamma)`` and ``sigma = 1 / (tau ln base)``.
        """
        if not (tau > 0 and gamma > 0):
            raise ValueError("tau and gamma must be positive")
        if int(base) != base or base < 2:
            raise ValueError("base must be an integer >= 2")
        lb = math.log(base)
        return cls(Family.GUMBEL, math.log(gamma) / lb, 1.0 / (tau * lb),
                   weibull_params=(float(gamma), float(tau), int(base)))

    @classmethod
    def uniform(cls, width: float, mu: float = 0.0, sigma: float = 1.0) -> "DensityModel":
        return cls(Family.UNIFORM_WIDTH, float(mu), float(sigma), width=float(width))

    @classmethod
    def piecewise_linear(cls, knots, values, mu: float = 0.0,
                         sigma: float = 1.0) -> "DensityModel":
        return cls(Family.PIECEWISE_LINEAR, float(mu), float(sigma),
                   knots=tuple(float(k) for k in knots),
                   values=tuple(float(v) for v in values))

    @classmethod
    def from_csv(cls, path) -> "DensityModel":
        knots, values = load_pwl_csv(path)
        return cls.piecewise_linear(knots, values)

    # -- properties ----------------------------------------------------------

    @property
    def smooth(self) -> bool:
        """True if derivatives of every order are available."""
        return self.family in (Family.GAUSSIAN, Family.GUMBEL)

    def support(self) -> tuple[float, float]:
        """Closed support in x-space (infinite for smooth families)."""
        if self.family is Family.UNIFORM_WIDTH:
            return self.mu, self.mu + self.sigma * self.width
        if self.family is Family.PIECEWISE_LINEAR:
            return (self.mu + self.sigma * self.knots[0],
                    self.mu + self.sigma * self.knots[-1])
        return -math.inf, math.inf

    def breakpoints(self) -> tuple[float, ...]:
        """x-locations where ``f`` is not differentiable."""
        if self.family is Family.UNIFORM_WIDTH:
            return self.support()
        if self.family is Family.PIECEWISE_LINEAR:
            return tuple(self.mu + self.sigma * k for k in self.knots)
        return ()

    def peak(self) -> float:
        """Maximum of the density (the mode value)."""
        if self.family is Family.GAUSSIAN:
            return 1.0 / (SQRT_2PI * self.sigma)
        if self.family is Family.GUMBEL:
            return math.exp(-1.0) / self.sigma
        if self.family is Family.UNIFORM_WIDTH:
            return 1.0 / (self.width * self.sigma)
        return max(self.values) / self.sigma

    # -- evaluation ----------------------------------------------------------

    def _u(self, x):
        return (np.asarray(x, dtype=float) - self.mu) / self.sigma

    def pdf(self, x):
        u = self._u(x)
        fam = self.family
        if fam is Family.GAUSSIAN:
            out = np.exp(-0.5 * u * u) / SQRT_2PI
        elif fam is Family.GUMBEL:
            out = _gumbel_base_pdf(u)
        elif fam is Family.UNIFORM_WIDTH:
            out = np.where((u >= 0) & (u < self.width), 1.0 / self.width, 0.0)
        else:
            out = np.interp(u, self.knots, self.values, left=0.0, right=0.0)
        out = out / self.sigma
        return out if np.ndim(out) else float(out)

    def cdf(self, x):
        u = self._u(x)
        fam = self.family
        if fam is Family.GAUSSIAN:
            out = special.ndtr(u)
        elif fam is Family.GUMBEL:
            out = -np.expm1(-np.exp(np.minimum(u, 700.0)))
        elif fam is Family.UNIFORM_WIDTH:
            out = np.clip(u / self.width, 0.0, 1.0)
        else:
            out = self._pwl_cdf(u)
        return out if np.ndim(out) else float(out)

    def sf(self, x):
        """Survival function ``1 - F(x)``, accurate in the upper tail."""
        u = self._u(x)
        fam = self.family
        if fam is Family.GAUSSIAN:
            out = special.ndtr(-u)
        elif fam is Family.GUMBEL:
            out = np.exp(-np.exp(np.minimum(u, 700.0)))
        elif fam is Family.UNIFORM_WIDTH:
            out = np.clip(1.0 - u / self.width, 0.0, 1.0)
        else:
            out = 1.0 - self._pwl_cdf(u)
        return out if np.ndim(out) else float(out)

    def interval_mass(self, a, b):
        """``P(a < Y <= b)`` computed from whichever tail loses fewer digits."""
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        med = self.median()
        lower = self.cdf(b) - self.cdf(a)
        upper = self.sf(a) - self.sf(b)
        out = np.where(a >= med, upper, lower)
        return out if np.ndim(out) else float(out)

    def median(self) -> float:
        fam = self.family
        if fam is Family.GAUSSIAN:
            return self.mu
        if fam is Family.GUMBEL:
            return self.mu + self.sigma * math.log(math.log(2.0))
        if fam is Family.UNIFORM_WIDTH:
            return self.mu + 0.5 * self.sigma * self.width
        return self.mu  # cancellation is harmless on compact support

    def quantile_span(self, q: float) -> tuple[float, float]:
        """``(lo, hi)`` with ``F(lo) <= q`` and ``1 - F(hi) <= q``."""
        fam = self.family
        if fam is Family.GAUSSIAN:
            z = -special.ndtri(q)
            return self.mu - z * self.sigma, self.mu + z * self.sigma
        if fam is Family.GUMBEL:
            lo = math.log(-math.log1p(-q))
            hi = math.log(-math.log(q))
            return self.mu + self.sigma * lo, self.mu + self.sigma * hi
        return self.support()

    def _pwl_cdf(self, u):
        k = np.asarray(self.knots)
        v = np.asarray(self.values)
        areas = np.concatenate([[0.0], np.cumsum(0.5 * (v[1:] + v[:-1]) * np.diff(k))])
        uc = np.clip(u, k[0], k[-1])
        i = np.clip(np.searchsorted(k, uc, side="right") - 1, 0, len(k) - 2)
        h = uc - k[i]
        slope = (v[i + 1] - v[i]) / (k[i + 1] - k[i])
        return np.clip(areas[i] + v[i] * h + 0.5 * slope * h * h, 0.0, 1.0)

    def derivative(self, k: int, x):
        """Exact ``k``-th derivative ``f^(k)(x)``."""
        if k < 0:
            raise ValueError("k must be non-negative")
        if k == 0:
            return self.pdf(x)
        if not self.smooth:
            raise DerivativeUnavailableError(
                f"derivative unavailable for {self.family.value} density (k={k})")
        u = np.atleast_1d(self._u(x))
        if self.family is Family.GAUSSIAN:
            out = _hermite_values(k, u) * np.exp(-0.5 * u * u) / SQRT_2PI
        else:
            p = gumbel_poly(k + 1)
            t = np.exp(np.minimum(u, 700.0))
            e = np.exp(-t)
            out = np.where(e > 0, p(t) * e, 0.0)
        out = out / self.sigma ** (k + 1)
        return out if np.ndim(x) else float(out[0])


def _gumbel_base_pdf(y):
    y = np.asarray(y, dtype=float)
    t = np.exp(np.minimum(y, 700.0))
    out = t * np.exp(-t)
    return out if out.ndim else float(out)


def eval_density(model: DensityModel, x):
    """Value ``f_{mu,sigma}(x) >= 0``; zero outside the support."""
    return model.pdf(x)


def eval_derivative(model: DensityModel, k: int, x):
    """``k``-th derivative of ``f_{mu,sigma}`` at ``x``.

    Raises
    ------
    DerivativeUnavailableError
        For uniform and piecewise linear models when ``k >= 1``.
    """
    return model.derivative(k, x)


def tv_scale(tv_base: float, sigma: float, k: int) -> float:
    """Total variation of ``f^(k)`` for the location-scale density, given the
    total variation of the base derivative: ``tv_base / sigma^(k+1)``."""
    if tv_base < 0 or not sigma > 0:
        raise ValueError("need tv_base >= 0 and sigma > 0")
    return tv_base / sigma ** (k + 1)


def load_pwl_csv(path) -> tuple[list[float], list[float]]:
    """Read a two-column ``x,f(x)`` CSV.  A non-numeric first row is taken
    as a header and skipped."""
    knots: list[float] = []
    values: list[float] = []
    with Path(path).open(newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh)):
            if not row or row[0].lstrip().startswith("#"):
                continue
            if len(row) != 2:
                raise ValueError(f"{path}:{lineno + 1}: expected two columns")
            try:
                x, fx = float(row[0]), float(row[1])
            except ValueError:
                if lineno == 0:
                    continue
                raise ValueError(f"{path}:{lineno + 1}: non-numeric value") from None
            knots.append(x)
            values.append(fx)
    return knots, values
