"""
When the bounds are attained
============================

The k = 0 bounds cannot be improved in general.  A uniform density of width
1.5 attains the Kuiper bound ``TV(f) / 8 = 1/6``, and a continuous
trapezoid-like density attains the range bound ``TV(f) / 2``.
"""

import numpy as np

from benford_bounds import DensityModel
from benford_bounds.bounds import best_bounds
from benford_bounds.wrapping import measure_discrepancies, wrap, wrapped_pdf

model = DensityModel.uniform(1.5)
w = wrap(model)
rep = best_bounds(model)
d = measure_discrepancies(w)
print(f"uniform(1.5): Kuiper bound {rep.best.kuiper_bound:.12f}  measured {d.kuiper:.12f}")
print(f"              range bound  {rep.best.range_bound:.12f}  measured {d.range_g:.12f}")

# g takes two levels: (m + 1) / 1.5 on [0, 0.5) and m / 1.5 after, with m = 1
x = np.array([0.1, 0.3, 0.6, 0.9])
print("g at", x, "=", wrapped_pdf(w, x))

# %%
# A continuous even density with TV(f) = 1 whose wrapped range is 1/2
knots = (-1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5)
values = (0.0, 0.375, 0.375, 0.5, 0.375, 0.375, 0.0)
pwl = DensityModel.piecewise_linear(knots, values)
rep = best_bounds(pwl, verify=True)
print(f"piecewise linear: range bound {rep.best.range_bound:.6f}  measured {rep.measured.range_g:.6f}")
