"""Walk through the Mellin-Barnes special-function kernel.

Every closed-form expression in this library bottoms out in a Meijer G, a
Fox H, or the bivariate Fox H, all evaluated the same way: a truncated
vertical-line integral with an automatically chosen abscissa and adaptive
refinement.  This script shows the instances that can be checked against
elementary functions, then a production kernel from the optical CDF.
"""

import math

from cunsec import (
    BivariateFoxHSpec,
    FoxHSpec,
    MeijerGSpec,
    fox_h,
    fox_h_bivariate,
    lower_incomplete_gamma,
    meijer_g,
    upper_incomplete_gamma,
)

# G^{1,0}_{0,1}(z | -; 0) is exp(-z): the sanity anchor for the contour code
exp_spec = MeijerGSpec(m=1, n=0, a=(), b=(0.0,))
print("Meijer G as exp(-z):")
for z in (0.1, 1.0, 5.0, 20.0):
    got = meijer_g(exp_spec, z)
    print(f"  z={z:5.1f}  contour={got:.15e}  exp={math.exp(-z):.15e}")

# G^{1,1}_{1,2}(z | 1; 2, 0) is the lower incomplete gamma at a=2
inc_spec = MeijerGSpec(m=1, n=1, a=(1.0,), b=(2.0, 0.0))
print("\nMeijer G as incomplete gamma:")
print(f"  G(1) = {meijer_g(inc_spec, 1.0):.12f}")
print(f"  gamma(2, 1) = {lower_incomplete_gamma(2, 1):.12f}")
print(f"  complement check: {lower_incomplete_gamma(3, 2.5) + upper_incomplete_gamma(3, 2.5):.12f}"
      f" == Gamma(3) = 2")

# a production kernel: one mixture member of the optical-SNR CDF
cdf_kernel = MeijerGSpec(m=3, n=1, a=(1.0, 2.0), b=(1.0, 2.296, 1.0, 0.0))
print("\nOptical CDF kernel G^{3,1}_{2,4} across four decades:")
for z in (0.01, 0.1, 1.0, 10.0):
    print(f"  z={z:6.2f}  G={meijer_g(cdf_kernel, z):.10f}")

# Fox H generalises the same machinery; unit coefficients reduce to Meijer G
h_unit = cdf_kernel.as_fox_h()
z = 0.7
print("\nFox H with unit coefficients reduces to Meijer G:")
print(f"  |H - G| = {abs(fox_h(h_unit, z) - meijer_g(cdf_kernel, z)):.2e}")

# a stretched kernel: H^{1,0}_{0,1}[z | (0, 1/2)] = 2 exp(-z^2)
h_stretch = FoxHSpec(m=1, n=0, upper=(), lower=((0.0, 0.5),))
print(f"  stretched H(1.0) = {fox_h(h_stretch, 1.0):.12f} "
      f"(2/e = {2 / math.e:.12f})")

# the bivariate H with an empty joint group factorises
exp_kernel = FoxHSpec(m=1, n=0, upper=(), lower=((0.0, 1.0),))
biv = BivariateFoxHSpec(joint=(), kernel1=exp_kernel, kernel2=exp_kernel)
got = fox_h_bivariate(biv, 0.4, 1.1)
print("\nSeparable bivariate H:")
print(f"  H(0.4, 1.1) = {got:.12f}  exp(-1.5) = {math.exp(-1.5):.12f}")
