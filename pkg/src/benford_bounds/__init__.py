"""Explicit error bounds for the uniformity of ``Y mod 1`` and for Benford's law.

The remainder ``U = Y - floor(Y)`` of a real random variable ``Y`` with
density ``f`` is close to uniform whenever ``f`` or one of its derivatives
has small total variation.  This package computes those total variations
exactly for Gaussian and Gumbel (log-Weibull) densities, turns them into
certified bounds on the range of the density of ``U``, the Kuiper distance
and the maximal relative approximation error, and checks every bound
against direct computation of the wrapped distribution.
"""

from .bounds import (
    BoundReport,
    BoundViolationError,
    best_bounds,
    bound_kuiper,
    bound_mrae,
    bound_pointwise,
    bound_range,
    gaussian_bounds,
    h_stirling,
    weibull_bound,
)
from .densities import (
    DensityModel,
    DerivativeUnavailableError,
    Family,
    PolySeq,
    eval_density,
    eval_derivative,
    gumbel_poly,
    hermite_poly,
    stirling_table,
    tv_scale,
)
from .digits import (
    DigitPrefix,
    DigitReport,
    benford_probability,
    digit_report,
    exact_prefix_probability,
    parse_prefix,
    prefix_value,
)
from .total_variation import (
    TVResult,
    tv_factorial_bound,
    tv_gaussian_deriv,
    tv_gumbel_deriv,
    tv_numeric,
    tv_unimodal,
)
from .wrapping import (
    Discrepancies,
    WrappedDist,
    measure_discrepancies,
    wrap,
    wrapped_cdf,
    wrapped_pdf,
)

__version__ = "0.1.0"
