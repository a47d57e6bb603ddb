import math

import pytest

from benford_bounds import DensityModel

# continuous even density with f(0) = 0.5 whose wrapped density attains
# max |g(x) - g(y)| = TV(f) / 2
PEAK_KNOTS = (-1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5)
PEAK_VALUES = (0.0, 0.375, 0.375, 0.5, 0.375, 0.375, 0.0)


def shipped_models():
    return {
        "gauss(0,1/3)": DensityModel.gaussian(0.0, 1 / 3),
        "gauss(0.3,1/2)": DensityModel.gaussian(0.3, 0.5),
        "gauss(-2.7,1)": DensityModel.gaussian(-2.7, 1.0),
        "gauss(0.1,2)": DensityModel.gaussian(0.1, 2.0),
        "weibull(1.0)": DensityModel.weibull(1.0),
        "weibull(0.5)": DensityModel.weibull(0.5, gamma=3.7),
        "weibull(0.3)": DensityModel.weibull(0.3),
        "uniform(0.7)": DensityModel.uniform(0.7),
        "uniform(1.5)": DensityModel.uniform(1.5, mu=0.2),
        "uniform(2.3)": DensityModel.uniform(2.3),
        "pwl-peak": DensityModel.piecewise_linear(PEAK_KNOTS, PEAK_VALUES),
    }


SHIPPED = shipped_models()


@pytest.fixture(params=sorted(SHIPPED), ids=sorted(SHIPPED))
def shipped(request):
    return SHIPPED[request.param]


def phi(x):
    return math.exp(-0.5 * x * x) / math.sqrt(2 * math.pi)


# reference Weibull table: k -> (TV(f_o^(k)), B_1.0, B_0.5, B_0.3)
TABLE1 = {
    0: (7.3576e-1, 8.4707e-1, 4.2354e-1, 2.5412e-1),
    1: (9.4025e-1, 4.1543e-1, 1.0386e-1, 3.7388e-2),
    2: (1.7830, 3.0232e-1, 3.7790e-2, 8.1627e-3),
    3: (4.5103, 2.9348e-1, 1.8343e-2, 2.3772e-3),
    4: (1.4278e1, 3.5653e-1, 1.1142e-2, 8.6638e-4),
    5: (5.4301e1, 5.2038e-1, 8.1309e-3, 3.7936e-4),
    6: (2.4118e2, 8.8699e-1, 6.9296e-3, 1.9399e-4),
    7: (1.2252e3, 1.7292, 6.7546e-3, 1.1345e-4),
    8: (7.0056e3, 3.7944, 7.4110e-3, 7.4686e-5),
    9: (4.4527e4, 9.2552, 9.0383e-3, 5.4651e-5),
    10: (3.1140e5, 2.4840e1, 1.2129e-2, 4.4003e-5),
    11: (2.3763e6, 7.2744e1, 1.7760e-2, 3.8659e-5),
    12: (1.9648e7, 2.3083e2, 2.8177e-2, 3.6801e-5),
    13: (1.7498e8, 7.8888e2, 4.8150e-2, 3.7732e-5),
    14: (1.6698e9, 2.8890e3, 8.8166e-2, 4.1454e-5),
}
TABLE1_MINIMA = {1.0: 3, 0.5: 7, 0.3: 12}


def sig_equal(value, reference, digits=4):
    """``value`` is within half a unit in the ``digits``-th significant digit
    of ``reference``."""
    unit = 10.0 ** (math.floor(math.log10(abs(reference))) - digits + 1)
    return abs(value - reference) <= 0.5 * unit
