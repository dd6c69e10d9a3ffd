"""Verification experiments for the L^p mapping behavior of the projection.

The experiments mirror the structure of the underlying results:

* exact critical-range algebra: the projection is L^p bounded exactly
  for p in ((2k+2)/(k+2), (2k+2)/k), an interval that the Schur-test
  algebra reproduces from the exponent window [1/2, (k+2)/(2k));
* a numerical Schur verifier that integrates |B_k| against powers of
  the boundary surrogate h and classifies the result as bounded or
  growing along boundary ladders and quadrature-offset ladders;
* disc-level checks of the weighted Poisson-type integral and of the
  -log(delta) blow-up of the unweighted kernel mass;
* a divergence scan that measures the L^p norm of 1/z2 on shrinking
  cores, fits its growth exponent, and bisects the empirical critical
  p -- this is the sharpness half, and it is valid for real exponents;
* a norm-ratio probe over monomial families, whose exact projection
  norms either stay bounded (inside the range) or present a divergent
  integral as an unboundedness certificate (outside).

"Bounded" is operationalized as ladder saturation; growth-vs-saturation
is classified by the fitted log-log slope over the finest ladder levels,
which separates near-critical exponents far more reliably than raw
level-to-level differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Optional, Sequence

import numpy as np

from .geometry import DomainSpec, Point2, aux_h, boundary_ladder
from .kernel import kernel_abs_polar, p_coefficients, q_base_coefficients, q_shift_coefficients, _horner
from .projection import MonomialInput, project_monomial
from .quadrature import (
    DivergentIntegralError,
    QuadratureSpec,
    angle_rule,
    disc_kernel_moment,
    gauss_rule,
    graded_breaks,
    jacobi_right_rule,
    panel_rule,
    radial_moment,
)

__all__ = [
    "RangeReport",
    "SchurConfig",
    "VerificationReport",
    "VERDICT_CONSISTENT",
    "VERDICT_VIOLATED",
    "VERDICT_INCONCLUSIVE",
    "critical_range",
    "schur_range",
    "verify_schur",
    "verify_calculus1",
    "verify_disc_log",
    "divergence_scan",
    "norm_ratio_probe",
    "fit_loglog_slope",
]

VERDICT_CONSISTENT = "consistent"
VERDICT_VIOLATED = "violated"
VERDICT_INCONCLUSIVE = "inconclusive"

# fitted slope of ratios against the boundary gap below which a ladder of
# Schur ratios counts as growing rather than converging
_RATIO_GROWTH_SLOPE = 0.05


def _growth_threshold(deltas: Sequence[float], tail: int = 4) -> float:
    """Growth threshold for a log-log offset-ladder slope.

    A log-divergent quantity has slope 1/ln(1/delta) on the ladder, the
    shallowest growth the experiments must still flag; saturating
    quantities fall below that at a rate set by their distance from the
    critical exponent.  70% of the endpoint slope splits the two with
    balanced margins at any ladder depth.
    """
    window = np.asarray(sorted(deltas)[: max(tail, 2)], dtype=float)
    return 0.7 / float(np.mean(np.log(1.0 / window)))


# ----------------------------------------------------------------------
# range algebra

@dataclass(frozen=True)
class RangeReport:
    """An open interval (p_low, p_high) of exponents with its provenance.

    Endpoints are exact ``Fraction`` values whenever the inputs were
    rational; they are always Hoelder-conjugate.
    """

    p_low: Fraction | float
    p_high: Fraction | float
    source: str

    def __post_init__(self) -> None:
        if not 1.0 < float(self.p_low) <= 2.0 <= float(self.p_high):
            raise ValueError(f"degenerate range ({self.p_low}, {self.p_high})")

    @property
    def p_low_float(self) -> float:
        return float(self.p_low)

    @property
    def p_high_float(self) -> float:
        return float(self.p_high)

    def conjugacy_defect(self):
        """1/p_low + 1/p_high - 1; exactly zero for rational endpoints."""
        if isinstance(self.p_low, Rational) and isinstance(self.p_high, Rational):
            return Fraction(1) / self.p_low + Fraction(1) / self.p_high - 1
        return 1.0 / self.p_low + 1.0 / self.p_high - 1.0

    def contains(self, p: float) -> bool:
        return float(self.p_low) < p < float(self.p_high)


def critical_range(d: DomainSpec) -> RangeReport:
    """The sharp interval ((2k+2)/(k+2), (2k+2)/k) of L^p boundedness.

    Exact rational endpoints for integer k; the formula extends to real
    exponents, where it bounds the possible range from outside.
    """
    if d.integer_exponent:
        k = Fraction(int(d.exponent))
        return RangeReport((2 * k + 2) / (k + 2), (2 * k + 2) / k, "theorem_formula")
    k = d.exponent
    return RangeReport((2 * k + 2) / (k + 2), (2 * k + 2) / k, "theorem_formula")


def schur_range(a, b) -> RangeReport:
    """The interval ((a+b)/b, (a+b)/a) delivered by the Schur test with
    auxiliary exponents in [a, b)."""
    if not 0 < a < b:
        raise ValueError(f"need 0 < a < b, got a={a}, b={b}")
    if isinstance(a, Rational) and isinstance(b, Rational):
        a, b = Fraction(a), Fraction(b)
    return RangeReport((a + b) / b, (a + b) / a, "schur_algebra")


# ----------------------------------------------------------------------
# reports and fits

@dataclass
class VerificationReport:
    """Structured outcome of a verification experiment."""

    experiment: str
    parameters: dict
    samples: list[dict] = field(default_factory=list)
    fitted_exponent: Optional[float] = None
    bound_constant: Optional[float] = None
    verdict: str = VERDICT_INCONCLUSIVE
    tolerance: float = 0.02
    expected_violation: bool = False

    @property
    def passed(self) -> bool:
        """Whether the outcome matches the theoretical prediction."""
        return self.verdict == VERDICT_CONSISTENT or (
            self.verdict == VERDICT_VIOLATED and self.expected_violation
        )


def fit_loglog_slope(x: Sequence[float], y: Sequence[float], tail: int = 4) -> float:
    """Least-squares slope of log y against log x over the last ``tail``
    points, discarding coarser (pre-asymptotic) levels."""
    lx = np.log(np.asarray(x, dtype=float)[-tail:])
    ly = np.log(np.asarray(y, dtype=float)[-tail:])
    if lx.size < 2:
        raise ValueError("need at least two ladder levels for a fit")
    return float(np.polyfit(lx, ly, 1)[0])


def _saturates(values: Sequence[float], tol: float) -> bool:
    """Last-three-levels saturation test: consecutive relative changes
    below ``tol``."""
    v = np.asarray(values, dtype=float)
    if v.size < 3:
        return False
    tailv = v[-3:]
    rel = np.abs(np.diff(tailv)) / np.abs(tailv[:-1])
    return bool(np.all(rel < tol))


# ----------------------------------------------------------------------
# Schur-test integrals
#
# All integrals are evaluated in box coordinates (u, v, theta1, psi):
# u = |w1|/v^(1/k), v = |w2|, theta1 the relative angle of w1 and psi the
# phase of t relative to s^k.  The h-weight is exactly separable there:
#
#   h(w)^-eps * dV = (1-u^(2k))^-eps u du * (1-v^2)^-eps v^(1+2/k-2eps) dv
#                    * dtheta1 dpsi
#
# and |B_k(z, w)| is evaluated through the rotation-reduced kernel.  For
# z1 = 0 the kernel loses its u and theta1 dependence and the whole
# integral factors into (1-d u integral) x (2-d (v, psi) integral); the
# full 4-d tensor is only needed on the inner-boundary ladder.
#
# Offsets: the v -> 0 end carries the experiment's offset ladder (that
# edge decides the Schur exponent window).  The u -> 1 and v -> 1 edges
# are integrable uniformly over eps < 1 and are integrated to the
# boundary with Gauss-Jacobi end rules; for eps >= 1 those edges are
# genuinely divergent and are probed with an explicit cut ladder
# instead.

_U_ORDER = 10
_PSI_ORDER = 8
_N_THETA1 = 32


def _u_factor(k: int, eps: float, *, cut: Optional[float] = None, order: int = _U_ORDER) -> float:
    """int_0^(1 or 1-cut) u (1 - u^(2k))^(-eps) du."""
    # (1-u^(2k))/(1-u) is the degree 2k-1 geometric polynomial, smooth on [0,1]
    geom = np.ones(2 * k)

    if cut is not None:
        top = 1.0 - cut
        breaks = np.concatenate(([0.0], graded_breaks(0.0, top, toward="upper",
                                                      floor=min(cut, top / 4), ratio=4.0)[1:]))
        u, w = panel_rule(breaks, order)
        return float(np.sum(w * u * (1.0 - u ** (2 * k)) ** (-eps)))
    if eps >= 1.0:
        raise DivergentIntegralError(
            "inner-boundary edge integral diverges: need eps < 1 for "
            f"(1-u^(2k))^(-eps) to be integrable, got eps = {eps}"
        )
    cap = 1e-3
    breaks = np.concatenate(([0.0], graded_breaks(0.0, 1.0 - cap, toward="upper",
                                                  floor=1e-4, ratio=4.0)[1:]))
    u, w = panel_rule(breaks, order)
    total = float(np.sum(w * u * (1.0 - u ** (2 * k)) ** (-eps)))
    uj, wj = jacobi_right_rule(1.0 - cap, 1.0, -eps, order)
    smooth = uj * np.real(_horner(geom, uj)) ** (-eps)
    return total + float(np.sum(wj * smooth))


def _v_axis(k: float, eps: float, y: float, v0: float, *,
            cut: Optional[float] = None, order: int = _U_ORDER):
    """Radial nodes/weights on (v0, 1) with v^(1+2/k-2eps) (1-v^2)^(-eps)
    folded in (Jacobi rim rule unless a cut is requested)."""
    power = 1.0 + 2.0 / k - 2.0 * eps
    segs = []
    lo = graded_breaks(v0, 0.5, toward="lower", floor=3.0 * v0, ratio=4.0)
    vlo, wlo = panel_rule(lo, order)
    segs.append((vlo, wlo * vlo**power * (1.0 - vlo**2) ** (-eps)))
    if cut is not None:
        top = 1.0 - cut
        hi = graded_breaks(0.5, top, toward="upper", floor=min(cut, (top - 0.5) / 4), ratio=4.0)
        vhi, whi = panel_rule(hi, order)
        segs.append((vhi, whi * vhi**power * (1.0 - vhi**2) ** (-eps)))
    else:
        if eps >= 1.0:
            raise DivergentIntegralError(
                "outer-boundary edge integral diverges: need eps < 1 for "
                f"(1-v^2)^(-eps) to be integrable, got eps = {eps}"
            )
        f_v = max(min((1.0 - y) / 8.0, 1e-3), 1e-13)
        hi = graded_breaks(0.5, 1.0 - f_v, toward="upper", floor=f_v, ratio=4.0)
        vhi, whi = panel_rule(hi, order)
        segs.append((vhi, whi * vhi**power * (1.0 - vhi**2) ** (-eps)))
        vj, wj = jacobi_right_rule(1.0 - f_v, 1.0, -eps, order)
        segs.append((vj, wj * vj**power * (1.0 + vj) ** (-eps)))
    v = np.concatenate([s[0] for s in segs])
    w = np.concatenate([s[1] for s in segs])
    return v, w


def _psi_axis(scale: float, order: int = _PSI_ORDER):
    """Panels on [0, pi] graded toward the aligned angle, weights doubled
    for the even symmetry of the theta1-averaged integrand."""
    floor = max(scale / 16.0, 1e-8)
    breaks = graded_breaks(0.0, math.pi, toward="lower", floor=floor, ratio=4.0)
    psi, w = panel_rule(breaks, max(order, 4))
    return psi, 2.0 * w


def _schur_value_axis_free(d: DomainSpec, y: float, eps: float, v0: float,
                           cut: Optional[float] = None) -> float:
    """I(z) for z = (0, y): separable u-factor times a 2-d (v, psi) integral."""
    k = d.k_int()
    u_int = _u_factor(k, eps, cut=cut)
    v, wv = _v_axis(k, eps, y, v0, cut=cut)
    psi, wpsi = _psi_axis(max(1.0 - y, 1e-6))
    t = y * np.outer(v, np.exp(-1j * psi))
    p0 = float(np.real(_horner(p_coefficients(k), 0.0 + 0.0j)))
    q0 = float(np.real(_horner(q_base_coefficients(k), 0.0 + 0.0j)))
    # |B| at s=0 reduces to |p(0) t + q(0)| / (k pi^2 |1-t|^2 |t|)
    a = np.abs(p0 * t + q0) / (k * math.pi**2 * np.abs(1.0 - t) ** 2 * y * v[:, None])
    w_int = float(wv @ a @ wpsi)
    return 2.0 * math.pi * u_int * w_int


def _schur_value_full(d: DomainSpec, x: float, y: float, eps: float, v0: float) -> float:
    """I(z) for z1 != 0: 4-d tensor over (u, v, theta1, psi)."""
    k = d.k_int()
    gap = 1.0 - x**k / y
    # u axis with h-density folded in; Jacobi rim for the (1-u)^(-eps) edge
    f_u = max(gap / 16.0, 1e-9)
    u_breaks = np.concatenate(([0.0], graded_breaks(0.0, 1.0 - f_u, toward="upper",
                                                    floor=f_u, ratio=4.0)[1:]))
    u, wu = panel_rule(u_breaks, _U_ORDER)
    wu_eff = wu * u * (1.0 - u ** (2 * k)) ** (-eps)
    uj, wj = jacobi_right_rule(1.0 - f_u, 1.0, -eps, _U_ORDER)
    geom = np.ones(2 * k)
    wj_eff = wj * uj * np.real(_horner(geom, uj)) ** (-eps)
    u = np.concatenate((u, uj))
    wu_eff = np.concatenate((wu_eff, wj_eff))

    v, wv_eff = _v_axis(k, eps, y, v0)
    th1, wth1 = angle_rule(_N_THETA1)
    psi, wpsi = _psi_axis(gap)

    total = 0.0
    block = max(1, int(3_000_000 // max(1, u.size * th1.size * psi.size)))
    for j0 in range(0, v.size, block):
        vv = v[j0 : j0 + block]
        r1 = u[:, None, None, None] * vv[None, :, None, None] ** (1.0 / k)
        absb = kernel_abs_polar(
            d, x, y, r1, vv[None, :, None, None],
            th1[None, None, :, None], psi[None, None, None, :],
        )
        w4 = (wu_eff[:, None, None, None]
              * wv_eff[j0 : j0 + block][None, :, None, None]
              * wth1[None, None, :, None]
              * wpsi[None, None, None, :])
        total += float(np.sum(absb * w4))
    return total


def _schur_value(d: DomainSpec, z: Point2, eps: float, v0: float,
                 cut: Optional[float] = None) -> float:
    x, y = abs(z.z1), abs(z.z2)
    if x == 0.0:
        return _schur_value_axis_free(d, y, eps, v0, cut=cut)
    if cut is not None:
        raise NotImplementedError("edge-cut ladders are probed on the z1 = 0 axis")
    return _schur_value_full(d, x, y, eps, v0)


# ----------------------------------------------------------------------
# Schur verifier

@dataclass(frozen=True)
class SchurConfig:
    """Configuration of the Schur-test verification experiment.

    ``a`` and ``b`` are the exponent-window endpoints used for reporting;
    the canonical instance is a = 1/2, b = (k+2)/(2k), which reproduces
    the critical range.  ``eps`` is the exponent actually tested.
    """

    eps: float
    a: float = 0.5
    b: Optional[float] = None
    ladder_levels: int = 6
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)
    tolerance: float = 0.02

    def __post_init__(self) -> None:
        if not 0.0 < self.eps < 2.0:
            raise ValueError(f"eps must lie in (0, 2), got {self.eps}")
        if self.ladder_levels < 2:
            raise ValueError("ladder_levels must be >= 2")
        if self.b is not None and not self.a < self.b:
            raise ValueError("need a < b")


_PROBE_POINT = Point2(0j, 0.6 + 0j)
_V0_PROBE_LADDER = tuple(10.0 ** -np.arange(2, 13))
_EDGE_CUT_LADDER = tuple(10.0 ** -np.arange(2, 8))
_V0_WORK_AXIS = 1e-16
_V0_WORK_FULL = 1e-8


def verify_schur(d: DomainSpec, cfg: SchurConfig) -> VerificationReport:
    """Test whether |B_k| maps h^(-eps) to a bounded multiple of itself.

    Protocol: first classify the quadrature-offset ladder of the full
    integral at a fixed probe point (growth there means the integral
    itself diverges, which is the expected failure mode for eps at or
    above (k+2)/(2k); for eps >= 1 the divergence instead sits on the
    inner/outer boundary edges and is probed with an explicit edge-cut
    ladder).  If the integral saturates, the ratio I(z) / h(z)^(-eps) is
    computed along the three boundary ladders and the verdict is
    "consistent" exactly when every ladder of ratios saturates.
    """
    k = d.k_int()
    eps = cfg.eps
    b = cfg.b if cfg.b is not None else (k + 2) / (2 * k)
    in_stated_range = cfg.a <= eps < b
    params = {
        "k": k,
        "eps": eps,
        "a": cfg.a,
        "b": b,
        "in_stated_range": in_stated_range,
        "ladder_levels": cfg.ladder_levels,
    }
    report = VerificationReport(
        experiment="schur",
        parameters=params,
        tolerance=cfg.tolerance,
        expected_violation=not in_stated_range,
    )

    probe_y = float(abs(_PROBE_POINT.z2))
    if eps >= 0.995:
        # the (1-u^(2k))^(-eps) and (1-v^2)^(-eps) edge factors are at or
        # beyond integrability: demonstrate with an edge-cut ladder
        values = [_schur_value(d, _PROBE_POINT, eps, v0=1e-6, cut=c)
                  for c in _EDGE_CUT_LADDER]
        slope = fit_loglog_slope([1.0 / c for c in _EDGE_CUT_LADDER], values)
        report.samples = [
            {"kind": "edge_cut_ladder", "cut": c, "value": val,
             "provenance": "quadrature-with-error"}
            for c, val in zip(_EDGE_CUT_LADDER, values)
        ]
        report.fitted_exponent = slope
        report.parameters["divergence_edge"] = "boundary edges u -> 1 / v -> 1"
        report.verdict = (VERDICT_VIOLATED if slope > _growth_threshold(_EDGE_CUT_LADDER)
                          else VERDICT_INCONCLUSIVE)
        return report

    values = [_schur_value(d, _PROBE_POINT, eps, v0=v0) for v0 in _V0_PROBE_LADDER]
    slope = fit_loglog_slope([1.0 / v0 for v0 in _V0_PROBE_LADDER], values)
    report.samples = [
        {"kind": "offset_ladder", "v0": v0, "value": val,
         "provenance": "quadrature-with-error"}
        for v0, val in zip(_V0_PROBE_LADDER, values)
    ]
    if slope > _growth_threshold(_V0_PROBE_LADDER):
        report.fitted_exponent = slope
        report.parameters["divergence_edge"] = "singular corner v -> 0"
        report.verdict = VERDICT_VIOLATED
        return report

    # The integral is finite: measure ratios along the boundary ladders.
    # Boundedness shows up as ratios that flatten or decay as the gap
    # shrinks; a violation is persistent growth, i.e. a fitted slope of
    # log(ratio) against log(gap) below -_RATIO_GROWTH_SLOPE.  (On the
    # corner ladder the ratio decays like |z2|^(2 eps - 1), so raw
    # level-to-level differences are the wrong test for boundedness.)
    worst = 0.0
    slopes: dict[str, float] = {}
    diffs: dict[str, float] = {}
    for stratum in ("outer", "inner", "corner"):
        pts = boundary_ladder(d, stratum, cfg.ladder_levels)
        gaps, ratios = [], []
        for j, z in enumerate(pts, start=1):
            v0 = _V0_WORK_FULL if abs(z.z1) > 0 else _V0_WORK_AXIS
            val = _schur_value(d, z, eps, v0=v0)
            h = aux_h(d, z)
            ratio = val * h**eps
            gaps.append(2.0**-j)
            ratios.append(ratio)
            report.samples.append(
                {"kind": "ladder", "stratum": stratum, "level": j,
                 "z1": z.z1.real, "z2": z.z2.real, "h": h,
                 "value": val, "ratio": ratio,
                 "provenance": "quadrature-with-error"}
            )
            worst = max(worst, ratio)
        slopes[stratum] = fit_loglog_slope(gaps, ratios, tail=min(4, len(ratios)))
        tail = ratios[-3:]
        diffs[stratum] = max(abs(b / a - 1.0) for a, b in zip(tail, tail[1:]))
    report.parameters["stratum_slopes"] = slopes
    report.parameters["stratum_last_diffs"] = diffs
    report.bound_constant = worst
    growing = {s: m for s, m in slopes.items() if m < -_RATIO_GROWTH_SLOPE}
    if growing:
        stratum, rslope = min(growing.items(), key=lambda kv: kv[1])
        report.verdict = VERDICT_VIOLATED
        report.fitted_exponent = rslope
        report.parameters["growing_stratum"] = stratum
        return report
    report.verdict = VERDICT_CONSISTENT
    return report


# ----------------------------------------------------------------------
# disc-level verifications

def verify_calculus1(eps: float, beta: float, levels: int,
                     quad: QuadratureSpec) -> VerificationReport:
    """Plateau check for the weighted disc integral I_(eps,beta).

    Computes I(z) (1 - |z|^2)^eps along |z| = 1 - 2^-j; the claim is a
    one-sided bound, so the experiment verifies that the product
    saturates to a finite plateau.
    """
    if not 0.0 < eps < 1.0:
        raise DivergentIntegralError(f"need 0 < eps < 1, got {eps}")
    if not 0.0 <= beta < 2.0:
        raise DivergentIntegralError(f"need 0 <= beta < 2, got {beta}")
    if levels < 4:
        raise ValueError("levels must be >= 4")
    report = VerificationReport(
        experiment="calculus1",
        parameters={"eps": eps, "beta": beta, "levels": levels},
    )
    i0 = disc_kernel_moment(0.0, eps, beta, quad)
    report.samples.append({"abs_z": 0.0, "value": i0, "product": i0,
                           "provenance": "quadrature-with-error"})
    deltas, products, values = [], [], []
    for j in range(1, levels + 1):
        a = 1.0 - 2.0**-j
        val = disc_kernel_moment(a, eps, beta, quad)
        prod = val * (1.0 - a * a) ** eps
        deltas.append(1.0 - a * a)
        values.append(val)
        products.append(prod)
        report.samples.append({"abs_z": a, "value": val, "product": prod,
                               "provenance": "quadrature-with-error"})
    report.fitted_exponent = fit_loglog_slope(deltas, values)
    report.bound_constant = products[-1]
    report.verdict = (VERDICT_CONSISTENT if _saturates(products, report.tolerance)
                      else VERDICT_INCONCLUSIVE)
    return report


def verify_disc_log(levels: int, quad: QuadratureSpec) -> VerificationReport:
    """Check the -log(delta) law of the unweighted kernel mass on the disc.

    The integral of |1 - z conj(w)|^-2 grows like pi * (-log delta(z));
    the slope against -log delta is fitted and, with the weight
    delta(w)^(-1/2) inserted, the growth switches to the delta^(-1/2)
    power law.  Both fits must land within the report tolerance (10%).
    """
    if levels < 4:
        raise ValueError("levels must be >= 4")
    report = VerificationReport(
        experiment="disc_log",
        parameters={"levels": levels},
        tolerance=0.10,
    )
    v0 = disc_kernel_moment(0.0, 0.0, 0.0, quad)
    report.samples.append({"abs_z": 0.0, "value": v0, "kind": "plain",
                           "provenance": "quadrature-with-error"})
    deltas, plain, weighted = [], [], []
    for j in range(1, levels + 1):
        a = 1.0 - 2.0**-j
        val = disc_kernel_moment(a, 0.0, 0.0, quad)
        wval = disc_kernel_moment(a, 0.5, 0.0, quad, weight_form="lin")
        delta = 1.0 - a
        deltas.append(delta)
        plain.append(val)
        weighted.append(wval)
        report.samples.append({"abs_z": a, "value": val, "weighted_value": wval,
                               "ratio_to_log": val / (-math.log(delta)),
                               "kind": "ladder",
                               "provenance": "quadrature-with-error"})
    # linear slope of the plain mass against -log delta tends to pi
    logx = -np.log(np.asarray(deltas[-6:]))
    slope = float(np.polyfit(logx, np.asarray(plain[-6:]), 1)[0])
    wexp = fit_loglog_slope(deltas, weighted, tail=5)
    report.parameters["log_law_slope"] = slope
    report.parameters["log_law_slope_over_pi"] = slope / math.pi
    report.fitted_exponent = wexp
    slope_ok = abs(slope / math.pi - 1.0) < report.tolerance
    weight_ok = abs(wexp / -0.5 - 1.0) < report.tolerance
    report.verdict = VERDICT_CONSISTENT if (slope_ok and weight_ok) else VERDICT_INCONCLUSIVE
    return report


# ----------------------------------------------------------------------
# divergence scan (sharpness half; valid for real exponents)

def _z2_power_mass(d: DomainSpec, p: float, delta: float, order: int = 8) -> float:
    """int over the domain cut at |z2| > delta of |z2|^(-p), by nested
    radial quadrature (angles are exact by symmetry)."""
    breaks = graded_breaks(delta, 1.0, toward="lower", floor=3.0 * delta, ratio=4.0)
    r2, w2 = panel_rule(breaks, order)
    # inner integral of r1 over [0, r2^(1/k)] at Gauss nodes (exact: linear)
    x, wx = gauss_rule(0.0, 1.0, 4)
    upper = r2 ** (1.0 / d.k)
    inner = (upper**2) * float(np.sum(wx * x))  # = upper^2 / 2
    vals = inner * r2 ** (1.0 - p)
    return 4.0 * math.pi**2 * float(np.sum(w2 * vals))


def _classify_deltas(values: Sequence[float], deltas: Sequence[float]) -> tuple[str, float]:
    slope = fit_loglog_slope([1.0 / dd for dd in deltas], values)
    return ("growing" if slope > _growth_threshold(deltas) else "saturating"), slope


def divergence_scan(d: DomainSpec, p_grid: Sequence[float],
                    delta_grid: Sequence[float], quad: QuadratureSpec) -> VerificationReport:
    """Measure where the projection of conj(z2) leaves L^p.

    The projected function is a constant times 1/z2, so its p-th power
    mass on the core |z2| > delta behaves like the 1-d integral of
    r^(1 - p + 2/k): it saturates for p < 2 + 2/k and grows like
    delta^(2 - p + 2/k) beyond (with a log at the endpoint).  The scan
    classifies each p of the grid, fits growth exponents, bisects the
    empirical critical p, and compares it against (2k+2)/k.  Real
    (non-integer) exponents are fully supported.
    """
    deltas = sorted(float(x) for x in delta_grid)[::-1]
    if len(deltas) < 4:
        raise ValueError("need at least 4 deltas for growth classification")
    p_crit = 2.0 + 2.0 / d.k
    report = VerificationReport(
        experiment="divergence_scan",
        parameters={"k": d.k, "p_critical_formula": p_crit,
                    "delta_min": deltas[-1], "delta_max": deltas[0]},
    )

    fit_ok = True
    for p in p_grid:
        vals = [_z2_power_mass(d, p, dd) for dd in deltas]
        cls, slope = _classify_deltas(vals, deltas)
        predicted = 2.0 - p + 2.0 / d.k
        row = {"p": p, "classification": cls, "fitted_slope": slope,
               "provenance": "quadrature-with-error"}
        if cls == "saturating":
            exact = radial_moment(d, 0.0, -p)
            row["limit"] = vals[-1]
            row["exact_limit"] = exact
            row["limit_rel_err"] = abs(vals[-1] - exact) / exact
        else:
            row["predicted_exponent"] = predicted
            if abs(predicted) > 0.05:  # power growth; the endpoint is log-type
                row["exponent_rel_err"] = abs(slope - (-predicted)) / abs(predicted)
                fit_ok = fit_ok and row["exponent_rel_err"] < 0.05
            else:
                row["growth_type"] = "logarithmic"
        for dd, val in zip(deltas, vals):
            report.samples.append({"p": p, "delta": dd, "value": val,
                                   "provenance": "quadrature-with-error"})
        report.parameters.setdefault("grid_rows", []).append(row)

    lo, hi = 2.0, p_crit + 2.0
    for _ in range(40):
        mid = 0.5 * (lo + hi)
        vals = [_z2_power_mass(d, mid, dd) for dd in deltas]
        cls, _ = _classify_deltas(vals, deltas)
        if cls == "growing":
            hi = mid
        else:
            lo = mid
    empirical = 0.5 * (lo + hi)
    report.parameters["p_critical_empirical"] = empirical
    rel = abs(empirical - p_crit) / p_crit
    report.parameters["p_critical_rel_err"] = rel
    report.fitted_exponent = empirical
    report.verdict = (VERDICT_CONSISTENT if rel < report.tolerance and fit_ok
                      else VERDICT_INCONCLUSIVE)
    return report


# ----------------------------------------------------------------------
# operator norm probes on monomial families

def norm_ratio_probe(d: DomainSpec, p: float, family: Sequence[MonomialInput],
                     quad: QuadratureSpec) -> VerificationReport:
    """Finite-sample lower bounds on the L^p operator norm over a family.

    Norms of monomials are exact through the radial moments.  Family
    members whose projection has divergent L^p mass are reported as
    unboundedness certificates rather than numbers; inside the critical
    range the verdict is consistent when no certificate fires, outside
    it is consistent when at least one does.
    """
    if p < 1.0:
        raise ValueError("p must be >= 1")
    rng = critical_range(d)
    inside = rng.contains(p)
    report = VerificationReport(
        experiment="norm_ratio_probe",
        parameters={"k": d.k, "p": p, "p_inside_range": inside,
                    "p_low": rng.p_low_float, "p_high": rng.p_high_float},
    )
    certificates = 0
    worst = 0.0
    for m in family:
        m1, m2 = m.modulus_exponents()
        row = {"hol": (m.hol.a1, m.hol.a2), "antihol": (m.antihol.a1, m.antihol.a2),
               "provenance": "exact-formula"}
        try:
            input_mass = radial_moment(d, p * m1, p * m2)
        except DivergentIntegralError as exc:
            row["status"] = "input-not-in-Lp"
            row["detail"] = str(exc)
            report.samples.append(row)
            continue
        proj = project_monomial(d, m)
        if proj is None:
            row["status"] = "projects-to-zero"
            row["ratio"] = 0.0
            report.samples.append(row)
            continue
        row["gamma"] = (proj.index.a1, proj.index.a2)
        row["coeff"] = proj.coeff
        try:
            proj_mass = radial_moment(d, p * proj.index.a1, p * proj.index.a2)
        except DivergentIntegralError as exc:
            row["status"] = "certificate"
            row["detail"] = f"projection norm diverges: {exc}"
            certificates += 1
            report.samples.append(row)
            continue
        ratio = abs(proj.coeff) * proj_mass ** (1.0 / p) / input_mass ** (1.0 / p)
        row["status"] = "finite"
        row["ratio"] = ratio
        worst = max(worst, ratio)
        report.samples.append(row)
    report.bound_constant = worst
    report.parameters["certificates"] = certificates
    if inside:
        report.verdict = VERDICT_CONSISTENT if certificates == 0 else VERDICT_VIOLATED
    else:
        report.expected_violation = True
        report.verdict = VERDICT_CONSISTENT if certificates > 0 else VERDICT_INCONCLUSIVE
    return report
