"""Hankel (keyhole) contour quadrature and the integral checks built on it.

The loop comes in from -X below the cut (arg z = -pi), runs
counter-clockwise round |z| = r, and goes back out to -X above the cut
(arg z = +pi).  Every multivalued factor is written in terms of an
explicit ``log z`` supplied by the caller, so the circle and both lips
share one branch convention:

    circle     log z = log r + i theta,  theta in [-pi, pi]
    lower lip  log z = log x - i pi
    upper lip  log z = log x + i pi

On the lips the offset from the cut is taken to zero analytically;
single-valued factors are evaluated on the negative real axis directly.
Integrals are returned already divided by 2 pi i.
"""
from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import mpmath as mp

from .exact import bernoulli_paper, conv_binom, harmonic
from .numerics import (
    EvalConfig,
    PoleError,
    bernoulli_prime,
    const_gamma,
    digamma,
    h_nonpos,
    to_mpf,
    zeta,
    zeta_prime,
)
from .report import VerificationReport, make_report

__all__ = [
    "KernelId",
    "HankelContour",
    "QuadratureResult",
    "QuadratureError",
    "ContourError",
    "gauss_legendre",
    "integrate_segment",
    "hankel_integrate",
    "mellin_integral",
    "lemma1_check",
    "lemma2_value",
    "lemma3_check",
    "lemma_sum_check",
    "mellin_check",
    "sec3_identity_check",
    "sec3_log_split_check",
]

TWO_PI = 2 * math.pi
GL_POINTS = 20
MAX_PANELS = 2 ** 14


class QuadratureError(ArithmeticError):
    """Panel doubling hit the cap before the error estimate met tolerance."""


class ContourError(ValueError):
    """Contour geometry violates r < 2 pi or the lip decay requirement."""


class KernelId(enum.Enum):
    LEMMA1 = "lemma1"
    LEMMA2 = "lemma2"
    LEMMA3 = "lemma3"
    SEC3_PLAIN = "sec3_plain"
    SEC3_LOG = "sec3_log"
    SEC3_SPLIT_A = "sec3_split_a"
    SEC3_SPLIT_B = "sec3_split_b"


@dataclass(frozen=True)
class HankelContour:
    radius: float = 3.0
    lip_truncation: float | None = None  # None -> chosen from the precision
    panels: int = 4  # starting panel count per segment
    gl_points: int = GL_POINTS

    def __post_init__(self):
        if not 0 < self.radius < TWO_PI:
            raise ContourError(f"radius must lie in (0, 2 pi), got {self.radius}")
        if self.lip_truncation is not None and self.lip_truncation <= self.radius:
            raise ContourError("lip truncation must exceed the radius")
        if self.panels < 1:
            raise ContourError("need at least one panel")

    def lip_end(self, cfg: EvalConfig) -> float:
        if self.lip_truncation is not None:
            return float(self.lip_truncation)
        return max(50.0, cfg.target_digits * math.log(10) + 30)


@dataclass(frozen=True)
class QuadratureResult:
    value: mp.mpc
    error_estimate: mp.mpf
    panels_used: int


# -- Gauss-Legendre ---------------------------------------------------------


@lru_cache(maxsize=None)
def gauss_legendre(m: int, prec: int) -> tuple[tuple, tuple]:
    """Nodes and weights of the m-point rule on [-1, 1] at ``prec`` bits."""
    with mp.workprec(prec + 20):
        nodes, weights = [], []
        eps = mp.mpf(2) ** (-(prec + 10))
        for i in range(1, m + 1):
            x = mp.mpf(math.cos(math.pi * (i - 0.25) / (m + 0.5)))
            for _ in range(100):
                p0, p1 = mp.mpf(1), x
                for k in range(2, m + 1):
                    p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
                dp = m * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x -= dx
                if abs(dx) < eps:
                    break
            p0, p1 = mp.mpf(1), x
            for k in range(2, m + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = m * (x * p1 - p0) / (x * x - 1)
            nodes.append(x)
            weights.append(2 / ((1 - x * x) * dp * dp))
    return tuple(nodes), tuple(weights)


def _panel_sum(f, a, b, panels: int, rule) -> mp.mpc:
    nodes, weights = rule
    h = (b - a) / panels
    total = mp.mpf(0)
    for p in range(panels):
        lo = a + p * h
        mid = lo + h / 2
        half = h / 2
        acc = mp.mpf(0)
        for x, w in zip(nodes, weights):
            acc += w * f(mid + half * x)
        total += acc * half
    return total


def integrate_segment(
    f: Callable, a, b, tol, start_panels: int = 4, gl_points: int = GL_POINTS
) -> QuadratureResult:
    """Composite Gauss-Legendre on [a, b] with panel doubling.

    Panels are summed left to right so results are bit-reproducible.
    """
    rule = gauss_legendre(gl_points, mp.mp.prec)
    panels = start_panels
    coarse = _panel_sum(f, a, b, panels, rule)
    while True:
        panels *= 2
        if panels > MAX_PANELS:
            raise QuadratureError(f"no convergence on [{a}, {b}] within {MAX_PANELS} panels")
        fine = _panel_sum(f, a, b, panels, rule)
        err = abs(fine - coarse)
        if err <= tol:
            return QuadratureResult(fine, err, panels)
        coarse = fine


# -- kernels -----------------------------------------------------------------


def _phi(z):
    """Analytic log((e^z - 1)/z), zero at the origin.

    Written as z/2 + log(sinh(z/2)/(z/2)); the principal log of the
    second factor is the analytic branch on |z| < 2 pi and on the
    negative real axis.
    """
    w = z / 2
    return w + mp.log(mp.sinh(w) / w)


def _ipow(z, logz, k):
    # z^k for integer k is branch-free; otherwise exp(k log z)
    if isinstance(k, int):
        return z ** k
    return mp.exp(k * logz)


def _kernel(kid: KernelId, idx) -> tuple[Callable, bool]:
    """Kernel f(z, log z) and whether it is single-valued near the cut."""
    if kid is KernelId.LEMMA1:
        n = int(idx)
        return (lambda z, L: _ipow(z, L, 1 - n) / (1 - mp.exp(-z))), True
    if kid is KernelId.LEMMA2:
        n = int(idx)
        # log(1 - e^{-z}) = [log((e^z-1)/z) - z] + log z
        return (lambda z, L: _ipow(z, L, -n) * (_phi(z) - z + L) / (1 - mp.exp(-z))), False
    if kid is KernelId.LEMMA3:
        n = int(idx)
        return (lambda z, L: _ipow(z, L, -n) * mp.exp(z) / (1 - mp.exp(z)) * L), False
    if kid is KernelId.SEC3_PLAIN:
        s = idx
        integer = isinstance(s, int) or (isinstance(s, float) and s.is_integer())
        if integer:
            k = -int(s) - 1
            return (lambda z, L: _ipow(z, L, k) * _sq_ratio(z)), True
        s = mp.mpf(s)
        return (lambda z, L: mp.exp(-(s + 1) * L) * _sq_ratio(z)), False
    if kid is KernelId.SEC3_LOG:
        n = int(idx)
        return (lambda z, L: _ipow(z, L, -n - 1) * _sq_ratio(z) * L), False
    if kid is KernelId.SEC3_SPLIT_A:
        n = int(idx)
        # log(e^z - 1) = log((e^z-1)/z) + log z
        return (lambda z, L: _ipow(z, L, -n - 1) * (_phi(z) + L) * _sq_ratio(z)), False
    if kid is KernelId.SEC3_SPLIT_B:
        n = int(idx)
        return (lambda z, L: _ipow(z, L, -n - 1) * _phi(z) * _sq_ratio(z)), True
    raise ValueError(f"unknown kernel {kid!r}")


def _sq_ratio(z):
    # e^{2z}/(1 - e^z)^2 = (e^z/(e^z - 1))^2
    q = mp.exp(z) / mp.expm1(z)
    return q * q


@lru_cache(maxsize=1024)
def hankel_integrate(
    kernel: KernelId, index, contour: HankelContour, cfg: EvalConfig
) -> QuadratureResult:
    """(1/2 pi i) times the loop integral of the kernel along the contour.

    Cached: identical arguments return the identical result object.
    """
    f, single_valued = _kernel(kernel, index)
    X = contour.lip_end(cfg)
    with mp.workprec(cfg.prec_bits + 10):
        tol = mp.mpf(10) ** (-(cfg.target_digits + 3))
        r = mp.mpf(contour.radius)
        log_r = mp.log(r)
        ipi = mp.mpc(0, mp.pi)
        two_pi_i = 2 * ipi

        def on_circle(theta):
            z = r * mp.expj(theta)
            return f(z, log_r + mp.mpc(0, theta)) * mp.mpc(0, 1) * z

        circle = integrate_segment(
            on_circle, -mp.pi, mp.pi, tol / 4, contour.panels, contour.gl_points
        )
        value = circle.value
        err = circle.error_estimate
        panels = circle.panels_used

        if not single_valued:
            Xm = mp.mpf(X)
            # the neglected lip beyond -X is bounded by the kernel size there
            edge = abs(f(mp.mpc(-Xm), mp.log(Xm) + ipi)) + abs(f(mp.mpc(-Xm), mp.log(Xm) - ipi))
            if edge > mp.mpf(10) ** (-(cfg.target_digits + 10)):
                raise ContourError(
                    f"kernel not negligible at -X (|f| ~ {mp.nstr(edge, 3)}); raise lip_truncation"
                )

            def on_lips(t):
                # lower lip minus upper lip, x = e^t, dx = x dt
                x = mp.exp(t)
                z = mp.mpc(-x)
                lx = t
                return (f(z, lx - ipi) - f(z, lx + ipi)) * x

            lips = integrate_segment(
                on_lips, log_r, mp.log(Xm), tol / 4, contour.panels, contour.gl_points
            )
            value += lips.value
            err += lips.error_estimate
            panels += lips.panels_used
        value = value / two_pi_i
        err = err / (2 * mp.pi)
    with mp.workprec(cfg.prec_bits):
        return QuadratureResult(+value, +err, panels)


def mellin_integral(s, cfg: EvalConfig) -> QuadratureResult:
    """int_0^inf x^{s-1}/(e^x - 1)^2 dx for s > 2, substituting x = e^t."""
    s = mp.mpf(s)
    if s <= 2:
        raise ValueError(f"Mellin integral diverges for s <= 2 (got {s})")
    with mp.workprec(cfg.prec_bits + 10):
        s = +s
        tol = mp.mpf(10) ** (-(cfg.target_digits + 3))
        # near 0 the integrand in t behaves like e^{(s-2)t}
        t_lo = (mp.log(tol) - 10) / (s - 2)
        X = max(50.0, cfg.working_digits * math.log(10) + 30)
        t_hi = mp.log(X)

        def g(t):
            x = mp.exp(t)
            d = mp.expm1(x)
            return x ** s / (d * d)

        # the small-x side is a near-exponential ramp, the large-x side
        # decays doubly exponentially; integrate them separately
        left = integrate_segment(g, t_lo, 0, tol / 8, 2)
        right = integrate_segment(g, 0, t_hi, tol / 8, 2)
        value = left.value + right.value
        err = left.error_estimate + right.error_estimate
    with mp.workprec(cfg.prec_bits):
        return QuadratureResult(+value, +err, left.panels_used + right.panels_used)


# -- checks ------------------------------------------------------------------


def _tol(digits: int, cfg: EvalConfig) -> mp.mpf:
    with mp.workprec(cfg.prec_bits):
        return mp.mpf(10) ** (-digits)


def _default_contour(contour: HankelContour | None) -> HankelContour:
    return contour if contour is not None else HankelContour()


def lemma1_target(n: int) -> Fraction:
    return bernoulli_paper(n - 1) / math.factorial(n - 1)


def lemma3_target(n: int, cfg: EvalConfig) -> mp.mpf:
    """B'_n/n! - (B_n/n!)(-gamma + H_n)."""
    bp = bernoulli_prime(n, cfg)
    g = const_gamma(cfg)
    with mp.workprec(cfg.prec_bits):
        fn = math.factorial(n)
        return bp / fn - to_mpf(bernoulli_paper(n)) / fn * (-g + to_mpf(harmonic(n)))


def lemma2_target(n: int, cfg: EvalConfig) -> mp.mpf:
    """(-1)^n h(1 - n)/(n - 1)!."""
    h = h_nonpos(1 - n, cfg)
    with mp.workprec(cfg.prec_bits):
        return (-1) ** n * h / math.factorial(n - 1)


def lemma1_check(n: int, contour=None, cfg: EvalConfig | None = None, digits: int = 20):
    cfg = cfg or EvalConfig()
    t0 = time.perf_counter()
    _need_pos(n)
    c = _default_contour(contour)
    q = hankel_integrate(KernelId.LEMMA1, n, c, cfg)
    return make_report(
        "lemma1", {"n": n, "r": c.radius}, q.value, lemma1_target(n), _tol(digits, cfg),
        digits=cfg.target_digits, started=t0,
    )


def lemma2_value(
    n: int, contour=None, cfg: EvalConfig | None = None, strict_digits: int | None = None
):
    """Lemma-2 integral vs the hybrid-identity value of h(1 - n).

    Report-only unless ``strict_digits`` is given.
    """
    cfg = cfg or EvalConfig()
    t0 = time.perf_counter()
    _need_pos(n)
    c = _default_contour(contour)
    q = hankel_integrate(KernelId.LEMMA2, n, c, cfg)
    target = lemma2_target(n, cfg)
    digits = strict_digits if strict_digits is not None else cfg.target_digits
    return make_report(
        "lemma2", {"n": n, "r": c.radius}, q.value, target, _tol(digits, cfg),
        digits=cfg.target_digits, started=t0, report_only=strict_digits is None,
    )


def lemma3_check(n: int, contour=None, cfg: EvalConfig | None = None, digits: int = 15):
    cfg = cfg or EvalConfig()
    t0 = time.perf_counter()
    _need_pos(n)
    c = _default_contour(contour)
    q = hankel_integrate(KernelId.LEMMA3, n, c, cfg)
    return make_report(
        "lemma3", {"n": n, "r": c.radius}, q.value, lemma3_target(n, cfg), _tol(digits, cfg),
        digits=cfg.target_digits, started=t0,
    )


def lemma_sum_check(n: int, contour=None, cfg: EvalConfig | None = None, digits: int = 15):
    """Sum of the three lemma integrals against the exact conv_binom(n)/n!."""
    cfg = cfg or EvalConfig()
    t0 = time.perf_counter()
    _need_pos(n)
    c = _default_contour(contour)
    parts = [
        hankel_integrate(k, n, c, cfg).value
        for k in (KernelId.LEMMA1, KernelId.LEMMA2, KernelId.LEMMA3)
    ]
    with mp.workprec(cfg.prec_bits):
        total = parts[0] + parts[1] + parts[2]
    exact = conv_binom(n) / math.factorial(n)
    return make_report(
        "lemma_sum", {"n": n, "r": c.radius}, total, exact, _tol(digits, cfg),
        digits=cfg.target_digits, started=t0,
    )


def mellin_rhs(s, cfg: EvalConfig) -> mp.mpf:
    """Gamma(s) (zeta(s - 1) - zeta(s))."""
    z1 = zeta(mp.mpf(s) - 1, cfg)
    z0 = zeta(s, cfg)
    with mp.workprec(cfg.prec_bits):
        return mp.gamma(mp.mpf(s)) * (z1 - z0)


def mellin_check(s, cfg: EvalConfig | None = None, digits: int = 20) -> VerificationReport:
    cfg = cfg or EvalConfig()
    t0 = time.perf_counter()
    if mp.mpf(s) <= 2:
        raise ValueError(f"mellin_check needs s > 2, got {s}")
    q = mellin_integral(s, cfg)
    return make_report(
        "mellin", {"s": str(s)}, q.value, mellin_rhs(s, cfg), _tol(digits, cfg),
        digits=cfg.target_digits, started=t0,
    )


def sec3_rhs(s, cfg: EvalConfig) -> mp.mpf:
    """(zeta(-s-1) - zeta(-s))/Gamma(1+s)."""
    s_mp = mp.mpf(s)
    if s_mp < 0 and s_mp == mp.floor(s_mp):
        raise PoleError(f"Gamma(1+s) has a pole at s = {s}")
    z1 = zeta(-s_mp - 1, cfg)
    z0 = zeta(-s_mp, cfg)
    with mp.workprec(cfg.prec_bits):
        return (z1 - z0) / mp.gamma(1 + s_mp)


def sec3_rhs_derivative(n, cfg: EvalConfig) -> mp.mpf:
    """d/ds of (zeta(-s-1) - zeta(-s))/Gamma(1+s) at s = n."""
    s = mp.mpf(n)
    zp1 = zeta_prime(-s - 1, cfg)
    zp0 = zeta_prime(-s, cfg)
    F = sec3_rhs(n, cfg)
    psi = digamma(1 + s, cfg)
    with mp.workprec(cfg.prec_bits):
        return (zp0 - zp1) / mp.gamma(1 + s) - F * psi


def sec3_identity_check(s, contour=None, cfg: EvalConfig | None = None, digits: int = 15):
    cfg = cfg or EvalConfig()
    t0 = time.perf_counter()
    c = _default_contour(contour)
    rhs = sec3_rhs(s, cfg)
    q = hankel_integrate(KernelId.SEC3_PLAIN, s, c, cfg)
    return make_report(
        "sec3_identity", {"s": str(s), "r": c.radius}, q.value, rhs, _tol(digits, cfg),
        digits=cfg.target_digits, started=t0,
    )


def sec3_log_split_check(
    n: int, contour=None, cfg: EvalConfig | None = None, digits: int = 12
) -> list[VerificationReport]:
    """Three routes to the log-weighted integral; returns two reports.

    (a) log-kernel quadrature, (b) split-A minus split-B quadrature,
    (c) minus the s-derivative of the zeta/Gamma expression.  The z^{-s-1}
    factor contributes -log z on differentiation, hence the sign in (c).
    """
    cfg = cfg or EvalConfig()
    t0 = time.perf_counter()
    _need_pos(n)
    c = _default_contour(contour)
    a = hankel_integrate(KernelId.SEC3_LOG, n, c, cfg).value
    split_a = hankel_integrate(KernelId.SEC3_SPLIT_A, n, c, cfg).value
    split_b = hankel_integrate(KernelId.SEC3_SPLIT_B, n, c, cfg).value
    deriv = sec3_rhs_derivative(n, cfg)
    with mp.workprec(cfg.prec_bits):
        cval = -deriv
        b = split_a - split_b
    tol = _tol(digits, cfg)
    inputs = {"n": n, "r": c.radius}
    return [
        make_report("sec3_log_vs_split", inputs, a, b, tol, digits=cfg.target_digits, started=t0),
        make_report("sec3_log_vs_zeta", inputs, a, cval, tol, digits=cfg.target_digits, started=t0),
    ]


def _need_pos(n) -> None:
    if int(n) != n or n < 1:
        raise ValueError(f"index must be an integer >= 1, got {n}")
