"""
Convergence to uniformity
=========================

As the spread of ``Y`` grows, ``int_0^1 |g(x) - 1| dx`` tends to zero.  For a
Gaussian it collapses quickly: the leading Fourier term is
``exp(-2 pi^2 sigma^2)``.
"""

import numpy as np

from benford_bounds import DensityModel
from benford_bounds.wrapping import l1_deviation, wrap

# below about 1e-16 the summed density cannot resolve g - 1 in double precision
for sigma in (0.1, 0.2, 0.3, 0.5, 0.75, 1.0, 2.0):
    l1 = l1_deviation(wrap(DensityModel.gaussian(0.0, sigma)))
    # |2 q cos(2 pi x)| integrates to 4 q / pi
    approx = 4.0 / np.pi * np.exp(-2.0 * np.pi ** 2 * sigma ** 2)
    print(f"sigma={sigma:<5} L1 deviation {l1:.4e}   leading term {approx:.4e}")

# %%
# Weibull data converge as the shape parameter shrinks.
for tau in (4.0, 2.0, 1.0, 0.5, 0.25):
    l1 = l1_deviation(wrap(DensityModel.weibull(tau)))
    print(f"tau={tau:<5} L1 deviation {l1:.4e}")
