"""Channel laws and their samplers.

The RF links follow the alpha-mu SNR law; the optical link follows the
Malaga turbulence law with pointing error and (optionally) a blockage mass
at zero SNR.  Analytic CDFs are cross-checked here against large sampled
populations, which is the same evidence the validation CLI reports.
"""

import numpy as np

from cunsec import (
    FsoLinkParams,
    RfChannelParams,
    alpha_mu_cdf,
    alpha_mu_pdf,
    fso_blocked_cdf,
    malaga_cdf,
    malaga_pdf,
    sample_alpha_mu,
    sample_malaga_snr,
)
from cunsec.mc import apply_blockage, ks_distance, ks_distance_interpolated
from cunsec.channels import MalagaCdfEvaluator, electrical_snr

rf = RfChannelParams(alpha=2, mu=2, avg_snr_db=10.0)
print(f"alpha-mu link: alpha={rf.alpha} mu={rf.mu} mean-power param "
      f"{rf.avg_snr:.1f} (linear)")
print("  derived: alpha/2 =", rf.alpha_tilde, " delta =", round(rf.delta, 6),
      " theta =", rf.theta)

grid = [0.5, 2.0, 10.0, 40.0]
print("  pdf :", [round(alpha_mu_pdf(rf, g), 6) for g in grid])
print("  cdf :", [round(alpha_mu_cdf(rf, g), 6) for g in grid])

draws = sample_alpha_mu(rf, 200_000, seed=1)
print(f"  sampler: mean {draws.mean():.3f}, "
      f"KS vs analytic CDF {ks_distance(draws, lambda x: alpha_mu_cdf(rf, x)):.5f}")

print("\nMalaga optical link (strong turbulence), both detection orders:")
for s in (1, 2):
    fso = FsoLinkParams(alpha_o=2.296, beta_o=2, g=2.0, omega_total=1.0,
                        epsilon=1.0, s=s, avg_snr_db=10.0)
    print(f"  s={s}: electrical SNR mu_s = {electrical_snr(fso):.4f} "
          f"(average SNR 10.0)")
    print(f"       pdf(mu_s) = {malaga_pdf(fso, fso.mu_s):.6f}   "
          f"cdf(mu_s) = {malaga_cdf(fso, fso.mu_s):.6f}")
    xs = sample_malaga_snr(fso, 200_000, seed=2)
    ev = MalagaCdfEvaluator(fso)
    print(f"       sampler KS = {ks_distance_interpolated(xs, ev.eval_many):.5f}")

print("\nBlockage adds a point mass at zero SNR:")
fso = FsoLinkParams(alpha_o=2.296, beta_o=2, g=2.0, omega_total=1.0,
                    epsilon=1.0, s=1, avg_snr_db=10.0, blockage_p=0.3)
xs = apply_blockage(sample_malaga_snr(fso, 200_000, seed=3), 0.3, seed=4)
print(f"  F(0) = {fso_blocked_cdf(fso, 0.0):.3f} "
      f"(sampled zero fraction {np.mean(xs == 0.0):.3f})")
print(f"  F(mu_s) = {fso_blocked_cdf(fso, fso.mu_s):.6f}")
