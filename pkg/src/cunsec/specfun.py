"""Special-function kernel: gamma family, Meijer G, Fox H, bivariate Fox H.

All G/H evaluations use the same method: a truncated Mellin-Barnes integral
along a vertical line, trapezoidal quadrature, with adaptive doubling of the
node count and the half-length until the value is stable.  The convention is

    H(z) = (1/2*pi*i) * int_L Phi(t) z^t dt,
    Phi(t) = prod_{j<=m} Gamma(b_j - B_j t) * prod_{j<=n} Gamma(1 - a_j + A_j t)
           / [ prod_{j>m} Gamma(1 - b_j + B_j t) * prod_{j>n} Gamma(a_j - A_j t) ]

with L separating the poles of the m-group (right of L) from the poles of the
n-group (left of L).  The abscissa is chosen automatically near the point that
minimises the integrand magnitude, which keeps cancellation under control for
arguments far from 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammainc, gammaincc, loggamma
from scipy.special import gamma as _scipy_gamma

from .errors import ContourError, ConvergenceError, ParameterError

__all__ = [
    "ContourPolicy",
    "MeijerGSpec",
    "FoxHSpec",
    "BivariateFoxHSpec",
    "LineEvaluator",
    "gamma_fn",
    "lower_incomplete_gamma",
    "upper_incomplete_gamma",
    "meijer_g",
    "fox_h",
    "fox_h_bivariate",
]


# --------------------------------------------------------------------------
# elementary gamma family
# --------------------------------------------------------------------------

def gamma_fn(x):
    """Gamma function for x > 0."""
    if not np.isfinite(x) or x <= 0:
        raise ParameterError(f"gamma_fn requires x > 0, got {x}")
    return float(_scipy_gamma(x))


def lower_incomplete_gamma(a, x):
    """Unregularised lower incomplete gamma, int_0^x t^(a-1) e^-t dt."""
    if not np.isfinite(a) or a <= 0:
        raise ParameterError(f"lower_incomplete_gamma requires a > 0, got a={a}")
    if not np.isfinite(x) or x < 0:
        raise ParameterError(f"lower_incomplete_gamma requires x >= 0, got x={x}")
    return float(gammainc(a, x) * _scipy_gamma(a))


def upper_incomplete_gamma(a, x):
    """Unregularised upper incomplete gamma, int_x^inf t^(a-1) e^-t dt."""
    if not np.isfinite(a) or a <= 0:
        raise ParameterError(f"upper_incomplete_gamma requires a > 0, got a={a}")
    if not np.isfinite(x) or x < 0:
        raise ParameterError(f"upper_incomplete_gamma requires x >= 0, got x={x}")
    return float(gammaincc(a, x) * _scipy_gamma(a))


# --------------------------------------------------------------------------
# specs and policy
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ContourPolicy:
    """Numerical policy for Mellin-Barnes evaluation.

    half_length is the starting contour half-length; both it and the node
    count grow adaptively when `adaptive` is set.  node counts are per axis.
    """

    abscissa_offset: float = 0.0
    half_length: float = 32.0
    node_count: int = 2049
    adaptive: bool = True
    rel_tol: float = 1e-8
    max_nodes: int = 2 ** 16
    bivariate_node_count: int = 513
    bivariate_max_nodes: int = 2 ** 12 + 1

    def __post_init__(self):
        if self.node_count < 64:
            raise ParameterError("node_count must be >= 64")
        if not (0.0 < self.rel_tol < 1.0):
            raise ParameterError("rel_tol must be in (0, 1)")
        if self.half_length <= 0:
            raise ParameterError("half_length must be positive")
        if self.max_nodes < self.node_count:
            raise ParameterError("max_nodes must be >= node_count")


DEFAULT_POLICY = ContourPolicy()


def _as_pairs(pairs, side):
    out = []
    for p in pairs:
        try:
            a, A = p
        except TypeError:
            a, A = p, 1.0
        A = float(A)
        if A <= 0:
            raise ParameterError(f"{side} coefficient must be > 0, got {A}")
        out.append((float(a), A))
    return tuple(out)


@dataclass(frozen=True)
class FoxHSpec:
    """H^{m,n}_{p,q}[z | (a_j,A_j); (b_j,B_j)] parameter block (argument kept
    separate so one spec can serve many arguments)."""

    m: int
    n: int
    upper: tuple  # p pairs (a_j, A_j); first n belong to the n-group
    lower: tuple  # q pairs (b_j, B_j); first m belong to the m-group

    def __post_init__(self):
        object.__setattr__(self, "upper", _as_pairs(self.upper, "upper"))
        object.__setattr__(self, "lower", _as_pairs(self.lower, "lower"))
        if not (0 <= self.n <= len(self.upper)):
            raise ParameterError("need 0 <= n <= p")
        if not (0 <= self.m <= len(self.lower)):
            raise ParameterError("need 0 <= m <= q")

    @property
    def p(self):
        return len(self.upper)

    @property
    def q(self):
        return len(self.lower)

    def pole_interval(self):
        """Open interval of abscissas separating the two pole families."""
        lo = max(((a - 1.0) / A for a, A in self.upper[: self.n]), default=-np.inf)
        hi = min((b / B for b, B in self.lower[: self.m]), default=np.inf)
        return lo, hi

    def decay_rate(self):
        """Coefficient of the exponential decay exp(-rate*pi/2*|y|)."""
        rate = sum(B for _, B in self.lower[: self.m])
        rate += sum(A for _, A in self.upper[: self.n])
        rate -= sum(B for _, B in self.lower[self.m:])
        rate -= sum(A for _, A in self.upper[self.n:])
        return rate

    def log_phi(self, t):
        t = np.asarray(t, dtype=complex)
        out = np.zeros_like(t)
        for b, B in self.lower[: self.m]:
            out = out + loggamma(b - B * t)
        for a, A in self.upper[: self.n]:
            out = out + loggamma(1.0 - a + A * t)
        for b, B in self.lower[self.m:]:
            out = out - loggamma(1.0 - b + B * t)
        for a, A in self.upper[self.n:]:
            out = out - loggamma(a - A * t)
        return out


@dataclass(frozen=True)
class MeijerGSpec:
    """G^{m,n}_{p,q}(z | a; b): the unit-coefficient special case of Fox H."""

    m: int
    n: int
    a: tuple
    b: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(float(x) for x in self.a))
        object.__setattr__(self, "b", tuple(float(x) for x in self.b))
        if self.m > len(self.b):
            raise ParameterError("need m <= q")
        if self.n > len(self.a):
            raise ParameterError("need n <= p")

    def as_fox_h(self):
        return FoxHSpec(
            m=self.m,
            n=self.n,
            upper=tuple((x, 1.0) for x in self.a),
            lower=tuple((x, 1.0) for x in self.b),
        )


@dataclass(frozen=True)
class BivariateFoxHSpec:
    """Extended generalised bivariate Fox H.

    joint holds triples (a, A1, A2) contributing Gamma(1 - a + A1*t1 + A2*t2)
    to the numerator of the double Mellin-Barnes integrand; kernel1/kernel2
    are the per-variable univariate blocks.  An empty joint group makes the
    function separable into the product of the two kernels.
    """

    joint: tuple
    kernel1: FoxHSpec
    kernel2: FoxHSpec

    def __post_init__(self):
        trip = []
        for j in self.joint:
            a, A1, A2 = j
            if A1 < 0 or A2 < 0:
                raise ParameterError("joint coefficients must be >= 0")
            trip.append((float(a), float(A1), float(A2)))
        object.__setattr__(self, "joint", tuple(trip))


# --------------------------------------------------------------------------
# line integration engine
# --------------------------------------------------------------------------

def _pick_abscissa(spec, z, policy, extra_lo=None):
    lo, hi = spec.pole_interval()
    if extra_lo is not None:
        lo = max(lo, extra_lo)
    if lo >= hi:
        raise ContourError(
            f"pole families straddle every vertical line (interval [{lo}, {hi}] empty); "
            "the Mellin-Barnes representation is not valid for these parameters"
        )

    def magnitude(cs):
        with np.errstate(all="ignore"):
            m = spec.log_phi(cs.astype(complex)).real + cs * np.log(z)
        return np.where(np.isfinite(m), m, np.inf)

    # extend unbounded sides geometrically while the magnitude keeps falling
    # (saddle chasing keeps cancellation under control for extreme arguments)
    clo = lo if np.isfinite(lo) else min(hi, 0.0) - 60.0
    chi = hi if np.isfinite(hi) else max(lo, 0.0) + 60.0
    for _ in range(6):
        grew = False
        if not np.isfinite(lo) and clo > -4000.0:
            probe = np.array([clo, clo + 1.0])
            m = magnitude(probe)
            if m[0] < m[1]:
                clo *= 2.0
                grew = True
        if not np.isfinite(hi) and chi < 4000.0:
            probe = np.array([chi - 1.0, chi])
            m = magnitude(probe)
            if m[1] < m[0]:
                chi *= 2.0
                grew = True
        if not grew:
            break
    pad = 1e-3 * (chi - clo) + 1e-9
    cands = np.linspace(clo + pad, chi - pad, 257)
    mag = magnitude(cands)
    c = float(cands[int(np.argmin(mag))])
    if policy.abscissa_offset:
        c = float(np.clip(c + policy.abscissa_offset, clo + pad, chi - pad))
    return c


def _trapz_line(spec, z, c, half_length, nodes):
    y = np.linspace(-half_length, half_length, nodes)
    t = c + 1j * y
    with np.errstate(all="ignore"):
        vals = np.exp(spec.log_phi(t) + t * np.log(z))
    vals = np.nan_to_num(vals, nan=0.0, posinf=0.0, neginf=0.0)
    integral = np.trapezoid(vals, y) / (2.0 * np.pi)
    l1 = np.trapezoid(np.abs(vals), y) / (2.0 * np.pi)
    return integral, l1


def _converge_line(spec, z, policy, extra_lo=None):
    """Adaptive vertical-line integral.

    Returns (value, error, l1, contour) with contour = (c, half, nodes) at
    convergence so callers can reuse the grid for nearby arguments.
    """
    if not np.isfinite(z) or z <= 0:
        raise ParameterError(f"argument must be a positive real, got {z}")
    c = _pick_abscissa(spec, z, policy, extra_lo=extra_lo)
    rate = max(spec.decay_rate(), 1e-2)
    half = max(policy.half_length, 30.0 / rate)
    nodes = policy.node_count
    v_prev, l1 = _trapz_line(spec, z, c, half, nodes)
    history = [v_prev]
    if not policy.adaptive:
        return v_prev, abs(v_prev), l1, (c, half, nodes)
    for _ in range(24):
        v_nodes, l1 = _trapz_line(spec, z, c, half, 2 * nodes - 1)
        err_nodes = abs(v_nodes - v_prev)
        grown = int((2 * nodes - 1) * 1.5) | 1
        v_tail, _ = _trapz_line(spec, z, c, 1.5 * half, grown)
        err_tail = abs(v_tail - v_nodes)
        history = [v_nodes, v_tail]
        noise = 1e-15 * l1
        budget = max(policy.rel_tol * abs(v_tail), noise)
        if err_nodes <= budget and err_tail <= budget:
            return v_tail, err_nodes + err_tail, l1, (c, 1.5 * half, grown)
        if err_tail > err_nodes:
            half *= 1.5
            nodes = grown
        else:
            nodes = 2 * nodes - 1
        v_prev = v_tail
        if nodes > policy.max_nodes:
            raise ConvergenceError(
                "Mellin-Barnes refinement exceeded the node budget "
                f"({policy.max_nodes}); last estimates {history}",
                estimates=history,
                diagnostics={"half_length": half, "nodes": nodes, "abscissa": c},
            )
    raise ConvergenceError(
        f"Mellin-Barnes refinement stalled; last estimates {history}",
        estimates=history,
        diagnostics={"half_length": half, "nodes": nodes, "abscissa": c},
    )


def _eval_line(spec, z, policy, extra_lo=None):
    value, err, l1, _ = _converge_line(spec, z, policy, extra_lo=extra_lo)
    return _finalize(value, err, l1, policy, [value])


class LineEvaluator:
    """Fixed-contour evaluator for many arguments of one G/H spec.

    The contour is converged once at a reference argument and then reused,
    which drops the per-argument cost to one vectorised pass.  Intended for
    quadrature fallbacks and CDF grids where thousands of evaluations of the
    same kernel are needed; accuracy at arguments far from the reference is
    that of the frozen grid.
    """

    def __init__(self, spec, z_ref, policy=None):
        if isinstance(spec, MeijerGSpec):
            spec = spec.as_fox_h()
        self.spec = spec
        self.policy = policy or DEFAULT_POLICY
        _, _, _, (c, half, nodes) = _converge_line(spec, z_ref, self.policy)
        self.c = c
        self.y = np.linspace(-half, half, nodes)
        t = c + 1j * self.y
        with np.errstate(all="ignore"):
            self.log_phi = spec.log_phi(t)
        self.t = t

    def eval_many(self, zs):
        zs = np.asarray(zs, dtype=float)
        if np.any(zs <= 0):
            raise ParameterError("arguments must be positive reals")
        out = np.empty(zs.shape)
        flat = zs.reshape(-1)
        res = np.empty(len(flat))
        chunk = max(1, (1 << 21) // len(self.t))
        for i in range(0, len(flat), chunk):
            lz = np.log(flat[i:i + chunk])
            with np.errstate(all="ignore"):
                mat = np.exp(self.log_phi[None, :] + self.t[None, :] * lz[:, None])
            mat = np.nan_to_num(mat, nan=0.0, posinf=0.0, neginf=0.0)
            res[i:i + chunk] = np.trapezoid(mat, self.y, axis=1).real / (2 * np.pi)
        out.reshape(-1)[:] = res
        return out if out.ndim else float(out)

    def __call__(self, z):
        return float(self.eval_many(np.array([float(z)]))[0])


def _finalize(value, err, l1, policy, history):
    noise = 1e-14 * l1
    im_budget = max(policy.rel_tol * abs(value.real), 10.0 * noise)
    if abs(value.imag) > im_budget:
        raise ConvergenceError(
            f"imaginary residue {value.imag:.3e} exceeds budget {im_budget:.3e} "
            "for a real-by-construction integral",
            estimates=history,
        )
    return float(value.real), float(max(err, noise))


# --------------------------------------------------------------------------
# public evaluators
# --------------------------------------------------------------------------

def meijer_g(spec, z, policy=DEFAULT_POLICY):
    """Evaluate a Meijer G function at positive real z."""
    if isinstance(spec, MeijerGSpec):
        spec = spec.as_fox_h()
    value, _ = _eval_line(spec, float(z), policy)
    return value


def fox_h(spec, z, policy=DEFAULT_POLICY):
    """Evaluate a univariate Fox H function at positive real z."""
    value, _ = _eval_line(spec, float(z), policy)
    return value


def _bivar_grid(spec, z1, z2, c1, c2, half1, half2, n1, n2):
    """Product-contour trapezoid, row-chunked to bound peak memory."""
    y1 = np.linspace(-half1, half1, n1)
    y2 = np.linspace(-half2, half2, n2)
    t1 = c1 + 1j * y1
    t2 = c2 + 1j * y2
    with np.errstate(all="ignore"):
        l1 = spec.kernel1.log_phi(t1) + t1 * np.log(z1)
        l2 = spec.kernel2.log_phi(t2) + t2 * np.log(z2)
    inner = np.empty(n1, dtype=complex)
    inner_abs = np.empty(n1)
    rows = max(1, (1 << 22) // n2)
    for i in range(0, n1, rows):
        t1_blk = t1[i:i + rows]
        with np.errstate(all="ignore"):
            blk = np.zeros((len(t1_blk), n2), dtype=complex)
            for a, A1, A2 in spec.joint:
                blk += loggamma(1.0 - a + A1 * t1_blk[:, None] + A2 * t2[None, :])
            blk = np.exp(blk + l1[i:i + rows, None] + l2[None, :])
        blk = np.nan_to_num(blk, nan=0.0, posinf=0.0, neginf=0.0)
        inner[i:i + rows] = np.trapezoid(blk, y2, axis=1)
        inner_abs[i:i + rows] = np.trapezoid(np.abs(blk), y2, axis=1)
    val = np.trapezoid(inner, y1) / (2.0 * np.pi) ** 2
    l1abs = np.trapezoid(inner_abs, y1) / (2.0 * np.pi) ** 2
    return val, l1abs


def _bivar_abscissas(spec, z1, z2):
    """Pick the product-contour abscissas, keeping the integrand magnitude
    small along the real axis including the joint gamma factor (which blows
    up near its pole and must be kept at a distance)."""

    def joint_mag(c1, c2s):
        out = np.zeros_like(np.asarray(c2s, dtype=float))
        for a, A1, A2 in spec.joint:
            arg = 1.0 - a + A1 * c1 + A2 * np.asarray(c2s, dtype=float)
            with np.errstate(all="ignore"):
                out = out + np.where(arg > 0,
                                     loggamma(np.maximum(arg, 1e-12)).real,
                                     np.inf)
        return out

    lo2, hi2 = spec.kernel2.pole_interval()
    if lo2 >= hi2:
        raise ContourError("kernel2 pole families straddle every vertical line")
    lo2 = lo2 if np.isfinite(lo2) else min(hi2, 0.0) - 60.0
    hi2 = hi2 if np.isfinite(hi2) else max(lo2, 0.0) + 60.0
    pad2 = 1e-2 * (hi2 - lo2)
    c2s = np.linspace(lo2 + pad2, hi2 - pad2, 97)
    with np.errstate(all="ignore"):
        mag2 = spec.kernel2.log_phi(c2s.astype(complex)).real + c2s * np.log(z2)
    mag2 = np.where(np.isfinite(mag2), mag2, np.inf) + joint_mag(-0.5, c2s)
    c2 = float(c2s[int(np.argmin(mag2))])

    lo1, hi1 = spec.kernel1.pole_interval()
    for a, A1, A2 in spec.joint:
        if A1 > 0:
            lo1 = max(lo1, (a - 1.0 - A2 * c2) / A1)
    if lo1 >= hi1:
        raise ContourError(
            "no product contour clears the joint gamma poles for this spec")
    lo1 = lo1 if np.isfinite(lo1) else min(hi1, 0.0) - 60.0
    hi1 = hi1 if np.isfinite(hi1) else max(lo1, 0.0) + 60.0
    pad1 = 1e-2 * (hi1 - lo1)
    c1s = np.linspace(lo1 + pad1, hi1 - pad1, 97)
    with np.errstate(all="ignore"):
        mag1 = spec.kernel1.log_phi(c1s.astype(complex)).real + c1s * np.log(z1)
    mag1 = np.where(np.isfinite(mag1), mag1, np.inf)
    mag1 = mag1 + np.array([joint_mag(c, [c2])[0] for c in c1s])
    c1 = float(c1s[int(np.argmin(mag1))])
    return c1, c2


def fox_h_bivariate(spec, z1, z2, policy=DEFAULT_POLICY):
    """Evaluate the bivariate Fox H (EGBFHF) at positive real (z1, z2)."""
    z1 = float(z1)
    z2 = float(z2)
    if not np.isfinite(z1) or z1 <= 0 or not np.isfinite(z2) or z2 <= 0:
        raise ParameterError("both arguments must be positive reals")
    c1, c2 = _bivar_abscissas(spec, z1, z2)
    for a, A1, A2 in spec.joint:
        if 1.0 - a + A1 * c1 + A2 * c2 <= 0:
            raise ContourError(
                "no product contour clears the joint gamma poles for this spec"
            )
    rate1 = max(spec.kernel1.decay_rate() + sum(A1 for _, A1, _ in spec.joint), 1e-2)
    rate2 = max(spec.kernel2.decay_rate() + sum(A2 for _, _, A2 in spec.joint), 1e-2)
    half1 = max(24.0, 30.0 / rate1)
    half2 = max(24.0, 30.0 / rate2)
    n = policy.bivariate_node_count
    n1 = n2 = n
    v_prev, l1 = _bivar_grid(spec, z1, z2, c1, c2, half1, half2, n1, n2)
    if not policy.adaptive:
        return _finalize(v_prev, abs(v_prev), l1, policy, [v_prev])[0]
    diag = []
    for _ in range(10):
        v_nodes, l1 = _bivar_grid(spec, z1, z2, c1, c2, half1, half2,
                                  2 * n1 - 1, 2 * n2 - 1)
        err_nodes = abs(v_nodes - v_prev)
        g1 = int((2 * n1 - 1) * 1.4) | 1
        g2 = int((2 * n2 - 1) * 1.4) | 1
        v_tail, _ = _bivar_grid(spec, z1, z2, c1, c2, 1.4 * half1, 1.4 * half2, g1, g2)
        err_tail = abs(v_tail - v_nodes)
        diag = [("nodes", err_nodes), ("tail", err_tail)]
        noise = 1e-15 * l1
        budget = max(policy.rel_tol * abs(v_tail), noise)
        if err_nodes <= budget and err_tail <= budget:
            return _finalize(v_tail, err_nodes + err_tail, l1, policy,
                             [v_nodes, v_tail])[0]
        if err_tail > err_nodes:
            half1 *= 1.4
            half2 *= 1.4
            n1, n2 = g1, g2
        else:
            n1, n2 = 2 * n1 - 1, 2 * n2 - 1
        v_prev = v_tail
        if max(n1, n2) > policy.bivariate_max_nodes:
            raise ConvergenceError(
                "bivariate Mellin-Barnes refinement exceeded the per-axis node "
                f"budget; per-axis diagnostics {diag}",
                estimates=[v_prev],
                diagnostics={"axis1_nodes": n1, "axis2_nodes": n2,
                             "half_lengths": (half1, half2)},
            )
    raise ConvergenceError(
        f"bivariate refinement stalled; per-axis diagnostics {diag}",
        estimates=[v_prev],
    )

