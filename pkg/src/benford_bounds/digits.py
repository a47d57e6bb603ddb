"""Leading-digit prefixes, Benford probabilities and certified relative errors.

The ``l + 1`` leading base-``b`` digits of ``X`` equal ``d_0 ... d_l`` exactly
when the mantissa lies in ``[d, d + b^-l)`` with ``d = sum_i d_i b^-i``, i.e.
when ``U = log_b(mantissa)`` lies in ``[log_b d, log_b(d + b^-l))``.
"""

from __future__ import annotations

import itertools
import math
import string
from dataclasses import dataclass
from fractions import Fraction

from .bounds import best_bounds, gaussian_bounds
from .densities import DensityModel, Family
from .wrapping import WrappedDist, wrap, wrapped_interval

__all__ = [
    "DigitPrefix",
    "DigitReport",
    "parse_prefix",
    "prefix_value",
    "benford_probability",
    "exact_prefix_probability",
    "certified_mrae",
    "digit_report",
    "all_prefixes",
]

_ALPHABET = string.digits + string.ascii_lowercase


@dataclass(frozen=True)
class DigitPrefix:
    base: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if int(self.base) != self.base or self.base < 2:
            raise ValueError(f"base must be an integer >= 2, got {self.base}")
        if not self.digits:
            raise ValueError("a prefix needs at least one digit")
        if any(not 0 <= d < self.base for d in self.digits):
            raise ValueError(f"digits {self.digits} out of range for base {self.base}")
        if self.digits[0] == 0:
            raise ValueError("invalid prefix: leading digit must be >= 1")

    @property
    def length(self) -> int:
        """Index ``l`` of the last digit (number of digits minus one)."""
        return len(self.digits) - 1

    def __str__(self) -> str:
        return "".join(_ALPHABET[d] for d in self.digits) + f"@{self.base}"

    def _exact(self) -> Fraction:
        return sum((Fraction(d, self.base ** i) for i, d in enumerate(self.digits)),
                   Fraction(0))

    def interval(self) -> tuple[float, float]:
        """``[log_b d, log_b(d + b^-l))``, the event for ``U``."""
        d = self._exact()
        step = Fraction(1, self.base ** self.length)
        lb = math.log(self.base)
        lo = _log_fraction(d) / lb
        hi = 1.0 if d + step == self.base else _log_fraction(d + step) / lb
        return lo, hi


def _log_fraction(q: Fraction) -> float:
    return math.log(q.numerator) - math.log(q.denominator)


def parse_prefix(text: str, default_base: int = 10) -> DigitPrefix:
    """Parse ``d0d1...dl@b`` with base-``b`` alphanumeric digits, e.g. ``1a@16``.

    The ``@b`` suffix may be omitted, in which case ``default_base`` is used.
    """
    body, sep, base_txt = text.strip().partition("@")
    try:
        base = int(base_txt) if sep else int(default_base)
    except ValueError:
        raise ValueError(f"malformed prefix {text!r}: bad base") from None
    if not body or base > len(_ALPHABET):
        raise ValueError(f"malformed prefix {text!r}")
    digits = []
    for ch in body.lower():
        v = _ALPHABET.find(ch)
        if v < 0:
            raise ValueError(f"malformed prefix {text!r}: bad digit {ch!r}")
        digits.append(v)
    return DigitPrefix(base, tuple(digits))


def prefix_value(p: DigitPrefix) -> float:
    """Mantissa value ``d = sum_i d_i b^-i`` in ``[1, b)``."""
    return float(p._exact())


def benford_probability(p: DigitPrefix) -> float:
    """``log_b(1 + b^-l / d)``."""
    ratio = Fraction(1, p.base ** p.length) / p._exact()
    return math.log1p(float(ratio)) / math.log(p.base)


def exact_prefix_probability(w: WrappedDist, p: DigitPrefix) -> float:
    """``P(log_b d <= U < log_b(d + b^-l))`` for ``Y = log_b X`` wrapped by ``w``."""
    lo, hi = p.interval()
    return min(max(wrapped_interval(w, lo, hi), 0.0), 1.0)


@dataclass(frozen=True)
class DigitReport:
    prefix: DigitPrefix
    benford_p: float
    exact_p: float
    rel_err: float
    certified_bound: float
    note: str = ""


def certified_mrae(model: DensityModel, k_max: int | None = None) -> tuple[float, str]:
    """Smallest certified bound on ``MRAE(G)`` available for ``model``.

    Gaussian models take the better of the closed form ``3 h(floor(36 sigma^2))``
    and the exact total-variation scan; smaller ``sigma`` falls back to the
    scan alone.  Returns the bound and a short note.
    """
    report = best_bounds(model, k_max)
    scan = report.best.mrae_bound
    if model.family is Family.GAUSSIAN:
        try:
            closed = gaussian_bounds(model.sigma).mrae
        except ValueError:
            return scan, "sigma < 1/6: closed-form Gaussian bound unavailable, TV route used"
        return min(closed, scan), ""
    if model.family is Family.GUMBEL and model.weibull_params is not None:
        gamma, tau, base = model.weibull_params
        return scan, f"weibull gamma={gamma:g} tau={tau:g} base={base} -> mu={model.mu:.6g} sigma={model.sigma:.6g}"
    return scan, ""


def digit_report(model: DensityModel, p: DigitPrefix, k_max: int | None = None,
                 w: WrappedDist | None = None, bound: tuple[float, str] | None = None
                 ) -> DigitReport:
    """Benford and exact probabilities of ``p`` with a certified bound on
    ``|exact / benford - 1|``.

    ``w`` and ``bound`` may be passed in to reuse work across prefixes.
    """
    w = wrap(model) if w is None else w
    cert, note = certified_mrae(model, k_max) if bound is None else bound
    benford = benford_probability(p)
    exact = exact_prefix_probability(w, p)
    return DigitReport(p, benford, exact, exact / benford - 1.0, cert, note)


def all_prefixes(base: int, length: int):
    """Every prefix with ``length + 1`` digits in ``base``, in increasing order."""
    for first in range(1, base):
        for rest in itertools.product(range(base), repeat=length):
            yield DigitPrefix(base, (first, *rest))
