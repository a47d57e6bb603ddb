"""
Gaussian remainders
===================

For ``Y ~ N(mu, sigma^2)`` the remainder ``Y mod 1`` is close to uniform once
``sigma`` is moderately large.  The closed-form bounds use
``h(m) = sqrt(m! / m^m)`` with ``m = floor(36 sigma^2)``; scanning the exact
total variation of every derivative order often does better.
"""

import numpy as np

from benford_bounds import DensityModel
from benford_bounds.bounds import best_bounds, gaussian_bounds
from benford_bounds.wrapping import measure_discrepancies, wrap

print(f"{'sigma':>6} {'m':>4} {'Kuiper (h)':>12} {'Kuiper (scan)':>14} {'best k':>7} {'measured':>11}")
for sigma in (1 / 6, 1 / 3, 0.5, 0.75, 1.0):
    closed = gaussian_bounds(sigma)
    scan = best_bounds(DensityModel.gaussian(0.0, sigma))
    measured = measure_discrepancies(wrap(DensityModel.gaussian(0.0, sigma)))
    print(f"{sigma:6.3f} {closed.m:4d} {closed.kuiper:12.4e} "
          f"{scan.best.kuiper_bound:14.4e} {scan.best_k:7d} {measured.kuiper:11.4e}")

# %%
# The bounds do not depend on the mean; the measured values barely move.
for mu in np.linspace(0.0, 1.0, 5):
    d = measure_discrepancies(wrap(DensityModel.gaussian(mu, 0.5)))
    print(f"mu={mu:.2f}  range {d.range_g:.6e}  Kuiper {d.kuiper:.6e}  MRAE {d.mrae:.6e}")
