"""
Leading digits against Benford's law
====================================

Benford's law gives the prefix ``d_0 d_1 ... d_l`` probability
``log_b(1 + b^-l / d)``.  For a concrete model of ``log_b X`` we compare the
exact probability with Benford's value and with the certified bound on the
relative error.
"""

from benford_bounds import DensityModel
from benford_bounds.digits import all_prefixes, certified_mrae, digit_report
from benford_bounds.wrapping import wrap

models = {
    "lognormal, sigma=1/3": DensityModel.gaussian(0.0, 1 / 3),
    "Weibull, tau=1": DensityModel.weibull(1.0),
    "Weibull, tau=0.3": DensityModel.weibull(0.3),
}
for name, model in models.items():
    w = wrap(model)
    cert = certified_mrae(model)
    print(f"{name}: certified relative error {cert[0]:.3e}")
    for p in all_prefixes(10, 0):
        r = digit_report(model, p, w=w, bound=cert)
        print(f"  {p}  Benford {r.benford_p:.6f}  exact {r.exact_p:.6f}  rel. error {r.rel_err:+.3e}")

# %%
# Hexadecimal two-digit prefixes use the same machinery.
model = DensityModel.weibull(0.5, base=16)
w = wrap(model)
cert = certified_mrae(model)
worst = max((digit_report(model, p, w=w, bound=cert) for p in all_prefixes(16, 1)),
            key=lambda r: abs(r.rel_err))
print(f"base 16, worst two-digit prefix {worst.prefix}: rel. error {worst.rel_err:+.3e} "
      f"<= {worst.certified_bound:.3e}")
