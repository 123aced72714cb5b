"""Secrecy metrics: outage lower bound, positive-capacity probability, and
effective throughput for both power-constraint scenarios.

Every metric is the expectation of the hybrid-link CDF at sigma * snr_e over
the eavesdropper density.  The closed routes expand that expectation into the
integral-term families (the I-terms for Scenario I, the R-terms for Scenario
II); each family member has a Mellin-Barnes closed form.  The binomial series
attached to the I3/I4 and R4/R8 families converge only in part of parameter
space, so every family carries an automatic quadrature fallback and the
result reports which route produced it.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from math import comb as _icomb

import numpy as np
from scipy.integrate import quad
from scipy.special import binom, gamma as _gamma, gammaincinv

from .channels import FsoLinkParams, RfChannelParams
from .cun_cdf import DEFAULT_SERIES, PowerConstraints, cdf_rf
from .errors import NumericalIntegrityError, ParameterError
from .specfun import (
    BivariateFoxHSpec,
    DEFAULT_POLICY,
    FoxHSpec,
    fox_h,
    fox_h_bivariate,
)

__all__ = [
    "SecrecyConfig",
    "SecrecyResult",
    "ImTermSet",
    "RTermSet",
    "im_terms",
    "r_terms",
    "sop_lower_scenario1",
    "sop_lower_scenario2",
    "sop_lower",
    "spsc",
    "est",
]


@dataclass(frozen=True)
class SecrecyConfig:
    """Full scenario bundle: three RF links, the optical link, the power
    constraints, and the target secrecy rate in bits/s/Hz."""

    rf_sr: RfChannelParams
    rf_sp: RfChannelParams
    rf_se: RfChannelParams
    fso: FsoLinkParams
    pc: PowerConstraints
    target_rate: float = 0.05

    def __post_init__(self):
        if not np.isfinite(self.target_rate) or self.target_rate < 0:
            raise ParameterError("target_rate must be >= 0")

    @property
    def sigma(self):
        return 2.0 ** self.target_rate

    def with_target_rate(self, rate):
        return replace(self, target_rate=rate)


@dataclass
class SecrecyResult:
    value: float
    kind: str            # SOP_L | SPSC | EST
    scenario: str        # I | II
    diagnostics: dict = field(default_factory=dict)

    def __float__(self):
        return float(self.value)


def _clamp_unit(value, what, grace=1e-9):
    if value < -grace or value > 1.0 + grace:
        raise NumericalIntegrityError(f"{what} = {value} outside [0, 1]")
    return float(min(max(value, 0.0), 1.0))


def _f_e_norm(e):
    """Normalisation of the eavesdropper density in front of every term."""
    return e.alpha_tilde * e.delta ** e.mu / _gamma(e.mu)


# --------------------------------------------------------------------------
# closed-form building blocks
# --------------------------------------------------------------------------

def exp_moment(e, power):
    """int_0^inf x^power exp(-delta_e x^at_e) dx."""
    a = (power + 1.0) / e.alpha_tilde
    return _gamma(a) * e.delta ** (-a) / e.alpha_tilde


def exp_pair_moment(e, power, coeff, at_r, policy=DEFAULT_POLICY):
    """int_0^inf x^power exp(-coeff x^at_r) exp(-delta_e x^at_e) dx.

    Elementary when the two stretch exponents match, univariate Fox H
    otherwise.
    """
    c0 = power + 1.0
    at_e = e.alpha_tilde
    if abs(at_r - at_e) <= 1e-12:
        return _gamma(c0 / at_e) * (coeff + e.delta) ** (-c0 / at_e) / at_e
    spec = FoxHSpec(m=1, n=1,
                    upper=((1.0 - c0 / at_e, at_r / at_e),),
                    lower=((0.0, 1.0),))
    z = coeff * e.delta ** (-at_r / at_e)
    return e.delta ** (-c0 / at_e) / at_e * fox_h(spec, z, policy)


def _g_weighted_moment(fso, m_o, power, weight, at, c_arg, policy=DEFAULT_POLICY):
    """int_0^inf x^power exp(-weight x^at) G_cdfkernel(c_arg x) dx as a
    univariate Fox H with one stretched upper pair."""
    mu_fac = (power + 1.0) / at
    base = fso.cdf_kernel_spec(m_o)
    spec = FoxHSpec(
        m=base.m,
        n=base.n + 1,
        upper=((1.0 - mu_fac, 1.0 / at),) + tuple((x, 1.0) for x in base.a),
        lower=tuple((x, 1.0) for x in base.b),
    )
    z = c_arg * weight ** (-1.0 / at)
    return weight ** (-mu_fac) / at * fox_h(spec, z, policy)


def g_exp_moment(cfg, m_o, power, policy=DEFAULT_POLICY):
    """int_0^inf x^power exp(-delta_e x^at_e) G_cdfkernel(V sigma x / mu_s) dx."""
    e, fso = cfg.rf_se, cfg.fso
    return _g_weighted_moment(fso, m_o, power, e.delta, e.alpha_tilde,
                              fso.V * cfg.sigma / fso.mu_s, policy)


def g_exp_pair_moment(cfg, m_o, power, coeff, at_r, policy=DEFAULT_POLICY):
    """int_0^inf x^power exp(-coeff x^at_r) exp(-delta_e x^at_e)
    G_cdfkernel(V sigma x / mu_s) dx as a bivariate Fox H."""
    e, fso = cfg.rf_se, cfg.fso
    at_e = e.alpha_tilde
    xi9 = power + 1.0
    spec = BivariateFoxHSpec(
        joint=((1.0 - xi9 / at_e, at_r / at_e, 1.0 / at_e),),
        kernel1=FoxHSpec(m=1, n=0, upper=(), lower=((0.0, 1.0),)),
        kernel2=cfg.fso.cdf_kernel_fox(m_o),
    )
    z1 = coeff * e.delta ** (-at_r / at_e)
    z2 = fso.V * cfg.sigma / fso.mu_s * e.delta ** (-1.0 / at_e)
    return e.delta ** (-xi9 / at_e) / at_e * fox_h_bivariate(spec, z1, z2, policy)


def _binomial_series(term_fn, sp):
    """Adaptive alternating-series summation.

    term_fn(k) returns the k-th term.  Stops when three consecutive terms are
    below tolerance, aborts when terms grow twice in a row (asymptotic
    divergence).  Returns (sum, converged, terms_used, bound).
    """
    total = 0.0
    comp = 0.0
    prev_mag = None
    growth = 0
    small = 0
    term = 0.0
    for k in range(sp.max_terms):
        term = term_fn(k)
        if not np.isfinite(term):
            return total, False, k + 1, np.inf
        if sp.compensated:
            t = total + (term - comp)
            comp = (t - total) - (term - comp)
            total = t
        else:
            total += term
        mag = abs(term)
        if prev_mag is not None and mag > prev_mag:
            growth += 1
            if growth >= 2:
                return total, False, k + 1, mag
        else:
            growth = 0
        if mag <= sp.rel_tol * max(abs(total), 1e-300):
            small += 1
            if small >= 3:
                return total, True, k + 1, mag
        else:
            small = 0
        prev_mag = mag
    return total, False, sp.max_terms, abs(term)


# --------------------------------------------------------------------------
# Scenario I term families
# --------------------------------------------------------------------------

def im1_term(e):
    """Plain eavesdropper exponential moment (normalises the density)."""
    return exp_moment(e, e.theta)


def im2_term(cfg, m_o, policy=DEFAULT_POLICY):
    return g_exp_moment(cfg, m_o, cfg.rf_se.theta, policy)


def _pow_kernel_series(cfg, m_r, m_o, sp, policy):
    """Shared machinery of the I3 (m_o None) and I4 families.

    Integrand x^(theta_e + at*m_r) e^(-d_e x^at_e) (xi1 s^at x^at + d_p)^-xi2
    [G(V s x / mu_s)], expanded binomially in m2; falls back to direct
    quadrature when the expansion misbehaves.
    """
    r, p, e, fso = cfg.rf_sr, cfg.rf_sp, cfg.rf_se, cfg.fso
    at = r.alpha_tilde
    sig = cfg.sigma
    xi1s = r.delta * cfg.pc.psi_q ** (-at) * sig ** at
    xi2 = m_r + p.mu
    zr = xi1s / p.delta
    base_pow = e.theta + at * m_r

    def term(m2):
        c = float(binom(xi2 + m2 - 1, m2)) * (-zr) ** m2
        pw = base_pow + at * m2
        if m_o is None:
            return c * exp_moment(e, pw)
        return c * g_exp_moment(cfg, m_o, pw, policy)

    if zr < 1.0:
        total, converged, n_used, bound = _binomial_series(term, sp)
        if converged:
            return total * p.delta ** (-xi2), "series", n_used
    # direct quadrature of the defining integrand
    if m_o is None:
        f = lambda x: x ** base_pow * np.exp(-e.delta * x ** e.alpha_tilde) * \
            (xi1s * x ** at + p.delta) ** (-xi2)
    else:
        from .specfun import LineEvaluator

        c_arg = fso.V * sig / fso.mu_s
        kern = LineEvaluator(fso.cdf_kernel_spec(m_o),
                             max(c_arg * e.avg_snr, 1e-6), policy)

        def f(x):
            return x ** base_pow * np.exp(-e.delta * x ** e.alpha_tilde) * \
                (xi1s * x ** at + p.delta) ** (-xi2) * \
                (kern(c_arg * x) if x > 0 else 0.0)

    val, _ = quad(f, 0.0, np.inf, limit=200)
    return val, "quadrature", 0


def im3_term(cfg, m_r, sp=DEFAULT_SERIES, policy=DEFAULT_POLICY):
    val, route, _ = _pow_kernel_series(cfg, m_r, None, sp, policy)
    return val, route


def im4_term(cfg, m_r, m_o, sp=DEFAULT_SERIES, policy=DEFAULT_POLICY):
    val, route, _ = _pow_kernel_series(cfg, m_r, m_o, sp, policy)
    return val, route


@dataclass
class ImTermSet:
    im1: float
    im2: dict
    im3: dict
    im4: dict
    routes: dict


def im_terms(cfg, sp=DEFAULT_SERIES, policy=DEFAULT_POLICY):
    """All Scenario-I integral terms for the configured mixture orders."""
    if cfg.pc.scenario != "I":
        raise ParameterError("im_terms is defined for Scenario I configs")
    from .cun_cdf import require_equal_alpha

    require_equal_alpha(cfg.rf_sr, cfg.rf_sp)
    routes = {}
    i2 = {m_o: im2_term(cfg, m_o, policy) for m_o in range(1, cfg.fso.beta_o + 1)}
    i3, i4 = {}, {}
    for m_r in range(cfg.rf_sr.mu):
        i3[m_r], routes[f"im3[{m_r}]"] = im3_term(cfg, m_r, sp, policy)
        for m_o in range(1, cfg.fso.beta_o + 1):
            i4[(m_r, m_o)], routes[f"im4[{m_r},{m_o}]"] = \
                im4_term(cfg, m_r, m_o, sp, policy)
    return ImTermSet(im1=im1_term(cfg.rf_se), im2=i2, im3=i3, im4=i4,
                     routes=routes)


# --------------------------------------------------------------------------
# Scenario II term families
# --------------------------------------------------------------------------

def _xi10(cfg):
    r = cfg.rf_sr
    return r.delta * cfg.pc.psi_t ** (-r.alpha_tilde) * cfg.sigma ** r.alpha_tilde


def r1_term(cfg):
    return im1_term(cfg.rf_se)


def r2_term(cfg, m_r, policy=DEFAULT_POLICY):
    r, e = cfg.rf_sr, cfg.rf_se
    return exp_pair_moment(e, e.theta + r.alpha_tilde * m_r, _xi10(cfg),
                           r.alpha_tilde, policy)


def r4_term(cfg, k, policy=DEFAULT_POLICY):
    """Same kernel as r2 at the combined series power k = m_r + m4 + m5."""
    return r2_term(cfg, k, policy)


def r5_term(cfg, m_o, policy=DEFAULT_POLICY):
    return g_exp_moment(cfg, m_o, cfg.rf_se.theta, policy)


def r6_term(cfg, m_r, m_o, policy=DEFAULT_POLICY):
    r, e = cfg.rf_sr, cfg.rf_se
    return g_exp_pair_moment(cfg, m_o, e.theta + r.alpha_tilde * m_r,
                             _xi10(cfg), r.alpha_tilde, policy)


def r8_term(cfg, k, m_o, policy=DEFAULT_POLICY):
    return r6_term(cfg, k, m_o, policy)


def _r6_fast(cfg, m_o, power, policy):
    """Assembly route for the r6/r8 kernels: when the stretch exponents
    match, the two exponentials merge and the bivariate H collapses to the
    univariate weighted moment (equivalent values, far cheaper)."""
    r, e, fso = cfg.rf_sr, cfg.rf_se, cfg.fso
    if abs(r.alpha_tilde - e.alpha_tilde) <= 1e-12:
        return _g_weighted_moment(fso, m_o, power, _xi10(cfg) + e.delta,
                                  e.alpha_tilde, fso.V * cfg.sigma / fso.mu_s,
                                  policy)
    return g_exp_pair_moment(cfg, m_o, power, _xi10(cfg), r.alpha_tilde, policy)


@dataclass
class RTermSet:
    r1: float
    r2: dict
    r4: dict
    r5: dict
    r6: dict
    r8: dict
    k_max: int

    @property
    def r3(self):
        return self.r2

    @property
    def r7(self):
        return self.r6


def r_terms(cfg, sp=DEFAULT_SERIES, policy=DEFAULT_POLICY, k_extra=2):
    """All Scenario-II integral terms (the unbounded series index k is
    materialised up to mu_r - 1 + k_extra)."""
    if cfg.pc.scenario != "II":
        raise ParameterError("r_terms is defined for Scenario II configs")
    from .cun_cdf import require_equal_alpha

    require_equal_alpha(cfg.rf_sr, cfg.rf_sp)
    k_max = cfg.rf_sr.mu - 1 + k_extra
    r2 = {m_r: r2_term(cfg, m_r, policy) for m_r in range(cfg.rf_sr.mu)}
    r4 = {k: r4_term(cfg, k, policy) for k in range(k_max + 1)}
    r5 = {m_o: r5_term(cfg, m_o, policy) for m_o in range(1, cfg.fso.beta_o + 1)}
    r6 = {(m_r, m_o): r6_term(cfg, m_r, m_o, policy)
          for m_r in range(cfg.rf_sr.mu)
          for m_o in range(1, cfg.fso.beta_o + 1)}
    r8 = {(k, m_o): r8_term(cfg, k, m_o, policy)
          for k in range(k_max + 1)
          for m_o in range(1, cfg.fso.beta_o + 1)}
    return RTermSet(r1=r1_term(cfg), r2=r2, r4=r4, r5=r5, r6=r6, r8=r8,
                    k_max=k_max)


# --------------------------------------------------------------------------
# quadrature routes
# --------------------------------------------------------------------------

def _inverse_cdf_e(e, u):
    return (gammaincinv(e.mu, u) / e.delta) ** (1.0 / e.alpha_tilde)


def sop_lower_quadrature(cfg, sp=DEFAULT_SERIES, policy=DEFAULT_POLICY):
    """Probability-substituted quadrature of the defining outage integral."""
    from .channels import MalagaCdfEvaluator

    sig = cfg.sigma
    fso_cdf = MalagaCdfEvaluator(cfg.fso, snr_ref=sig * cfg.rf_se.avg_snr,
                                 policy=policy, blocked=True)

    def integrand(u):
        g_e = _inverse_cdf_e(cfg.rf_se, u)
        x = sig * g_e
        return cdf_rf(cfg, x, sp) * fso_cdf(x)

    val, _ = quad(integrand, 0.0, 1.0, limit=200)
    return val


def _p2_part_quadrature(cfg, sp, policy):
    """E over the eavesdropper of P2(sigma x) * F_fso*(sigma x), where P2 is
    the exact tail piece of lambda2."""
    from .channels import MalagaCdfEvaluator

    sig = cfg.sigma
    r, p, pc = cfg.rf_sr, cfg.rf_sp, cfg.pc
    fso_cdf = MalagaCdfEvaluator(cfg.fso, snr_ref=sig * cfg.rf_se.avg_snr,
                                 policy=policy, blocked=True)

    def p2_exact(x):
        from scipy.special import gammaincc

        at = r.alpha_tilde
        w = (pc.psi_q / pc.psi_t) ** at
        c = p.delta + r.delta * pc.psi_q ** (-at) * x ** at
        tot = 0.0
        for m_r in range(r.mu):
            om = p.mu + m_r
            pref = p.delta ** p.mu * r.delta ** m_r / \
                (_gamma(p.mu) * _gamma(m_r + 1.0)) * \
                pc.psi_q ** (-at * m_r) * x ** (at * m_r)
            tot += pref * float(gammaincc(om, c * w)) * _gamma(om) / c ** om
        return tot

    def integrand(u):
        g_e = _inverse_cdf_e(cfg.rf_se, u)
        x = sig * g_e
        return p2_exact(x) * fso_cdf(x)

    val, _ = quad(integrand, 0.0, 1.0, limit=200)
    return val


# --------------------------------------------------------------------------
# metric assemblies
# --------------------------------------------------------------------------

def sop_lower_scenario1(cfg, sp=DEFAULT_SERIES, policy=DEFAULT_POLICY):
    """Secrecy-outage lower bound for the interference-only constraint."""
    if cfg.pc.scenario != "I":
        raise ParameterError("config is not Scenario I")
    r, p, e, fso = cfg.rf_sr, cfg.rf_sp, cfg.rf_se, cfg.fso
    diags = {}
    if abs(r.alpha_tilde - p.alpha_tilde) > 1e-12:
        val = sop_lower_quadrature(cfg, sp, policy)
        diags["route"] = "quadrature"
        return SecrecyResult(_clamp_unit(val, "SOP_L^I"), "SOP_L", "I", diags)
    at = r.alpha_tilde
    sig = cfg.sigma
    ce = _f_e_norm(e)
    P_o = fso.blockage_p
    terms = im_terms(cfg, sp, policy)
    diags.update(terms.routes)
    diags["route"] = "closed"
    total = P_o + (1.0 - P_o) * fso.K * ce * sum(
        fso.varsigma(m_o) * terms.im2[m_o] for m_o in terms.im2)
    for m_r in range(r.mu):
        xi2 = m_r + p.mu
        d_mr = _gamma(xi2) * r.delta ** m_r * p.delta ** p.mu * \
            cfg.pc.psi_q ** (-at * m_r) / (_gamma(p.mu) * _gamma(m_r + 1.0))
        fso_part = sum(fso.varsigma(m_o) * terms.im4[(m_r, m_o)]
                       for m_o in range(1, fso.beta_o + 1))
        total -= ce * d_mr * sig ** (at * m_r) * (
            P_o * terms.im3[m_r] + (1.0 - P_o) * fso.K * fso_part)
    return SecrecyResult(_clamp_unit(total, "SOP_L^I"), "SOP_L", "I", diags)


def sop_lower_scenario2(cfg, sp=DEFAULT_SERIES, policy=DEFAULT_POLICY):
    """Secrecy-outage lower bound for the double power constraint."""
    if cfg.pc.scenario != "II":
        raise ParameterError("config is not Scenario II")
    r, p, e, fso, pc = cfg.rf_sr, cfg.rf_sp, cfg.rf_se, cfg.fso, cfg.pc
    diags = {}
    if abs(r.alpha_tilde - p.alpha_tilde) > 1e-12:
        val = sop_lower_quadrature(cfg, sp, policy)
        diags["route"] = "quadrature"
        return SecrecyResult(_clamp_unit(val, "SOP_L^II"), "SOP_L", "II", diags)

    from scipy.special import gammaincc

    at = r.alpha_tilde
    sig = cfg.sigma
    ce = _f_e_norm(e)
    P_o = fso.blockage_p
    w = (pc.psi_q / pc.psi_t) ** at
    big_a = float(gammaincc(p.mu, p.delta * w))  # = Xi5_II = sum Xi1_II

    def fso_bracket(term_plain, term_mix):
        return P_o * ce * term_plain + (1.0 - P_o) * fso.K * ce * term_mix

    # constant piece: 1 * F_fso* expectation
    r5_mix = sum(fso.varsigma(m_o) * r5_term(cfg, m_o, policy)
                 for m_o in range(1, fso.beta_o + 1))
    total = P_o + (1.0 - P_o) * fso.K * ce * r5_mix

    # lambda1 tail piece (finite)
    for m_r in range(r.mu):
        b_mr = r.delta ** m_r * pc.psi_t ** (-at * m_r) / _gamma(m_r + 1.0)
        r6_mix = sum(fso.varsigma(m_o) *
                     _r6_fast(cfg, m_o, e.theta + at * m_r, policy)
                     for m_o in range(1, fso.beta_o + 1))
        total -= (1.0 - big_a) * b_mr * sig ** (at * m_r) * \
            fso_bracket(r2_term(cfg, m_r, policy), r6_mix)

    # P2 piece: try the corrected quadruple series, else quadrature
    z5 = r.delta * sig ** at / (p.delta * pc.psi_q ** at)
    r4_cache, bracket_cache = {}, {}

    def r4_at(k):
        if k not in r4_cache:
            r4_cache[k] = r4_term(cfg, k, policy)
        return r4_cache[k]

    def bracket_at(k):
        if k not in bracket_cache:
            r8_mix = sum(fso.varsigma(m_o) *
                         _r6_fast(cfg, m_o, e.theta + at * k, policy)
                         for m_o in range(1, fso.beta_o + 1))
            bracket_cache[k] = fso_bracket(r4_at(k), r8_mix)
        return bracket_cache[k]

    series_ok = z5 < 0.8
    if series_ok and r4_at(1) > 0:
        # cheap asymptotic-growth pre-check on the elementary family
        ratio0 = z5 * (p.mu) * r4_at(1) / max(r4_at(0), 1e-300)
        if ratio0 >= 0.9:
            series_ok = False
    p2_total = 0.0
    if series_ok:
        exp_w = np.exp(-p.delta * w)
        for m_r in range(r.mu):
            if not series_ok:
                break
            om = p.mu + m_r
            # prefactor of the tail piece: d_p^(mu_p - Om) d_r^m_r
            # psi_q^(-at m_r) sig^(at m_r) Gamma(Om) / (Gamma(mu_p) m_r!)
            s_base = p.delta ** (-m_r) * r.delta ** m_r * \
                pc.psi_q ** (-at * m_r) * sig ** (at * m_r) * \
                _gamma(om) / (_gamma(p.mu) * _gamma(m_r + 1.0))
            for m3 in range(om):
                if not series_ok:
                    break
                for m4 in range(m3 + 1):
                    c34 = _icomb(m3, m4) / _gamma(m3 + 1.0) * \
                        (p.delta * w) ** (m3 - m4) * \
                        (r.delta * pc.psi_t ** (-at) * sig ** at) ** m4

                    def term(m5, _mr=m_r, _om=om, _m4=m4):
                        k = _mr + _m4 + m5
                        coef = float(binom(_om + m5 - 1, m5)) * (-z5) ** m5
                        return coef * bracket_at(k)

                    val5, converged, n5, bound = _binomial_series(term, sp)
                    if not converged:
                        series_ok = False
                        diags["p2_series_abort"] = \
                            f"m_r={m_r} m3={m3} m4={m4} bound={bound:.3g}"
                        break
                    p2_total += exp_w * s_base * c34 * val5
                    diags[f"p2_terms[{m_r},{m3},{m4}]"] = n5
    if series_ok:
        total -= p2_total
        diags["route"] = "closed"
    else:
        total -= _p2_part_quadrature(cfg, sp, policy)
        diags["route"] = "closed+quadrature-p2"
        diags["p2_series_ratio"] = z5
    return SecrecyResult(_clamp_unit(total, "SOP_L^II"), "SOP_L", "II", diags)


def sop_lower(cfg, sp=DEFAULT_SERIES, policy=DEFAULT_POLICY):
    """Scenario-dispatching secrecy-outage lower bound."""
    if cfg.pc.scenario == "I":
        return sop_lower_scenario1(cfg, sp, policy)
    return sop_lower_scenario2(cfg, sp, policy)


def spsc(cfg, sp=DEFAULT_SERIES, policy=DEFAULT_POLICY):
    """Probability of strictly positive secrecy capacity: the zero-rate
    complement of the outage bound, reusing the same code path."""
    base = sop_lower(cfg.with_target_rate(0.0), sp, policy)
    diags = dict(base.diagnostics)
    return SecrecyResult(1.0 - base.value, "SPSC", cfg.pc.scenario, diags)


def est(cfg, sp=DEFAULT_SERIES, policy=DEFAULT_POLICY):
    """Effective secrecy throughput: rate times outage-free probability."""
    base = sop_lower(cfg, sp, policy)
    diags = dict(base.diagnostics)
    value = cfg.target_rate * (1.0 - base.value)
    if value < 0 or value > cfg.target_rate:
        raise NumericalIntegrityError(f"EST {value} outside [0, {cfg.target_rate}]")
    return SecrecyResult(value, "EST", cfg.pc.scenario, diags)
