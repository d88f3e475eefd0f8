"""Arbitrary-precision real analysis on top of mpmath floats.

Every public function takes an ``EvalConfig``, works at
``cfg.prec_bits`` and returns an ``mpf``.  Results are meant to be
correct to ``cfg.target_digits`` decimals (absolute), which the guard
digits and the Euler-Maclaurin stopping rule are chosen to guarantee.

Zeta values and derivatives come from Euler-Maclaurin summation with
analytically differentiated (log-weighted) terms; Euler's constant from
the Brent-McMillan series, with an Euler-Maclaurin limit of H_n - log n
as an independent second route.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

import mpmath as mp

from .exact import bernoulli_paper, bernoulli_std, conv_binom, harmonic
from .report import VerificationReport, make_report

__all__ = [
    "EvalConfig",
    "PoleError",
    "to_mpf",
    "const_gamma",
    "const_log_2pi",
    "zeta",
    "zeta_prime",
    "zeta_prime_fd",
    "zeta_prime_neg_even",
    "digamma",
    "bernoulli_interp",
    "bernoulli_prime",
    "euler_sum_closed",
    "euler_sum_direct",
    "h_nonpos",
    "h_nonpos_closed_minus1",
    "ramanujan_h0",
    "hybrid_h0_closed_form",
    "glaisher_combo",
    "psi_tilde",
    "dunne_schubert_partial",
    "dunne_schubert_check",
]


class PoleError(ValueError):
    """Argument sits on a pole of the function being evaluated."""


@dataclass(frozen=True)
class EvalConfig:
    target_digits: int = 30
    guard_digits: int = 15
    # Euler-Maclaurin knobs: None picks them from the precision
    em_terms: int | None = None
    em_max_corrections: int = 2000

    def __post_init__(self):
        if self.target_digits < 1 or self.guard_digits < 1:
            raise ValueError("target_digits and guard_digits must be positive")

    @property
    def working_digits(self) -> int:
        return self.target_digits + self.guard_digits

    @property
    def prec_bits(self) -> int:
        return math.ceil(self.working_digits * math.log2(10))

    @property
    def tolerance(self) -> mp.mpf:
        with mp.workprec(self.prec_bits):
            return mp.mpf(10) ** (-self.target_digits)

    def with_digits(self, digits: int) -> EvalConfig:
        return replace(self, target_digits=digits)


def to_mpf(x) -> mp.mpf:
    """Convert at the current working precision (Fractions exactly rounded)."""
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


@lru_cache(maxsize=None)
def _bernoulli_even_mpf(k: int, prec: int) -> mp.mpf:
    # B_{2k} / (2k)!
    with mp.workprec(prec):
        return to_mpf(bernoulli_std(2 * k) / math.factorial(2 * k))


# -- constants ---------------------------------------------------------------


@lru_cache(maxsize=None)
def _gamma_brent_mcmillan(prec: int) -> mp.mpf:
    with mp.workprec(prec + 20):
        digits = prec * math.log10(2)
        n = int(math.ceil(digits * math.log(10) / 4)) + 2
        n2 = mp.mpf(n) ** 2
        log_n = mp.log(n)
        a = -log_n
        b = mp.mpf(1)
        u, v = a, b
        eps = mp.mpf(2) ** (-(prec + 20))
        k = 1
        while True:
            b = b * n2 / (k * k)
            a = (a * n2 / k + b) / k
            u += a
            v += b
            if k > n and abs(a) < eps * abs(u) and b < eps * v:
                break
            k += 1
        return +(u / v)


@lru_cache(maxsize=None)
def _gamma_euler_maclaurin(prec: int) -> mp.mpf:
    # gamma = H_N - log N - 1/(2N) + sum_k B_2k / (2k N^2k)
    with mp.workprec(prec + 20):
        digits = prec * math.log10(2)
        N = int(digits) + 20
        h = to_mpf(harmonic(N))
        g = h - mp.log(N) - mp.mpf(1) / (2 * N)
        eps = mp.mpf(2) ** (-(prec + 20))
        k = 1
        while True:
            term = to_mpf(bernoulli_std(2 * k)) / (2 * k * mp.mpf(N) ** (2 * k))
            g += term
            if abs(term) < eps:
                break
            k += 1
        return +g


def const_gamma(cfg: EvalConfig, method: str = "brent-mcmillan") -> mp.mpf:
    """Euler's constant.  ``method`` selects one of two independent routes."""
    if method == "brent-mcmillan":
        return _gamma_brent_mcmillan(cfg.prec_bits)
    if method == "euler-maclaurin":
        return _gamma_euler_maclaurin(cfg.prec_bits)
    raise ValueError(f"unknown method {method!r}")


def const_log_2pi(cfg: EvalConfig) -> mp.mpf:
    with mp.workprec(cfg.prec_bits):
        return mp.log(2 * mp.pi)


# -- Euler-Maclaurin power-sum tails ----------------------------------------


def _power_tail(a, N: int, cfg: EvalConfig, want_log: bool = True):
    """Continued values of sum_{n>=N} n^-a and sum_{n>=N} log(n) n^-a.

    Euler-Maclaurin with the log-weighted sum obtained by differentiating
    every term in ``a``.  Correction terms are added until the first
    omitted one (with s + 2j + 1 > 0, where it bounds the remainder) is
    below the working epsilon.  Must be called inside a workprec block.
    """
    a = mp.mpf(a)
    if a == 1:
        raise PoleError("power tail diverges at a = 1")
    eps = mp.mpf(2) ** (-mp.mp.prec)
    logN = mp.log(N)
    Na = mp.mpf(N) ** (-a)
    # integral term N^{1-a}/(a-1)
    t0 = N * Na / (a - 1)
    s_val = t0 + Na / 2
    s_log = (logN * t0 + t0 / (a - 1) + logN * Na / 2) if want_log else mp.mpf(0)
    # poch = (a)_{2j-1} rising, dpoch its a-derivative
    poch = a
    dpoch = mp.mpf(1)
    power = Na / N  # N^{-a-1}
    j = 1
    prev = None
    while True:
        c = _bernoulli_even_mpf(j, mp.mp.prec)
        term = c * poch * power
        s_val += term
        if want_log:
            dterm = c * (logN * poch - dpoch) * power
            s_log += dterm
        else:
            dterm = mp.mpf(0)
        size = max(abs(term), abs(dterm))
        if poch == 0 and dpoch == 0:
            break
        if size < eps and a + 2 * j + 1 > 0:
            break
        if prev is not None and size > prev and a + 2 * j + 1 > 0 and j > 5:
            raise ArithmeticError(f"Euler-Maclaurin diverging at a={a}, N={N}; raise em_terms")
        if j > 2 * mp.mp.prec:
            raise ArithmeticError("Euler-Maclaurin correction cap reached")
        prev = size
        f1, f2 = a + 2 * j - 1, a + 2 * j
        dpoch = dpoch * f1 * f2 + poch * (f1 + f2)
        poch = poch * f1 * f2
        power = power / (N * N)
        j += 1
    return s_val, s_log


def _em_cutoff(s, cfg: EvalConfig) -> int:
    if cfg.em_terms is not None:
        return cfg.em_terms
    return int(math.ceil(0.5 * cfg.working_digits + abs(float(s)))) + 10


def _extra_bits(s, N: int) -> int:
    # the head sum grows like N^{1-s}; absorb the cancellation for s < 1
    s = float(s)
    grow = max(0.0, (1.0 - s)) * math.log2(N)
    return int(grow) + 2 * int(math.log2(N) + 1) + 10


def _zeta_pair(s, cfg: EvalConfig, want_log: bool):
    with mp.workprec(cfg.prec_bits):
        s_mp = to_mpf(s)
    if s_mp == 1:
        raise PoleError("zeta has a pole at s = 1")
    N = _em_cutoff(s_mp, cfg)
    with mp.workprec(cfg.prec_bits + _extra_bits(s_mp, N)):
        head = mp.mpf(0)
        head_log = mp.mpf(0)
        for k in range(2, N):
            kk = mp.mpf(k) ** (-s_mp)
            head += kk
            if want_log:
                head_log += mp.log(k) * kk
        head += 1
        tail, tail_log = _power_tail(s_mp, N, cfg, want_log)
        z = head + tail
        zp = -(head_log + tail_log)
    with mp.workprec(cfg.prec_bits):
        return +z, +zp


def zeta(s, cfg: EvalConfig) -> mp.mpf:
    """Riemann zeta at real s != 1 (Euler-Maclaurin, continued to s < 1)."""
    return _zeta_pair(s, cfg, want_log=False)[0]


def zeta_prime(s, cfg: EvalConfig) -> mp.mpf:
    """d/ds zeta(s) from the term-wise differentiated Euler-Maclaurin sum."""
    return _zeta_pair(s, cfg, want_log=True)[1]


def zeta_prime_fd(s, cfg: EvalConfig, levels: int = 12) -> mp.mpf:
    """Oracle for zeta'(s): Richardson-extrapolated central differences.

    Step sizes h_j = h_0 / 2^j with h_0 a quarter of the distance to the
    pole; extrapolation in h^2.  Evaluations carry 40 extra digits to
    absorb the difference cancellation.
    """
    with mp.workprec(cfg.prec_bits):
        s = to_mpf(s)
    if s == 1:
        raise PoleError("zeta has a pole at s = 1")
    inner = replace(cfg, guard_digits=cfg.guard_digits + 40)
    with mp.workprec(inner.prec_bits):
        h0 = min(mp.mpf(1), abs(s - 1)) / 4
        table = []
        for j in range(levels + 1):
            h = h0 / 2 ** j
            d = (zeta(s + h, inner) - zeta(s - h, inner)) / (2 * h)
            row = [d]
            for k in range(1, j + 1):
                f = mp.mpf(4) ** k
                row.append((f * row[k - 1] - table[j - 1][k - 1]) / (f - 1))
            table.append(row)
        val = table[-1][-1]
    with mp.workprec(cfg.prec_bits):
        return +val


# -- digamma -----------------------------------------------------------------


def digamma(x, cfg: EvalConfig) -> mp.mpf:
    """psi(x) = Gamma'(x)/Gamma(x): upward recurrence then the asymptotic series."""
    with mp.workprec(cfg.prec_bits + 20):
        x = to_mpf(x) if isinstance(x, Fraction) else mp.mpf(x)
        if x <= 0 and x == mp.floor(x):
            raise PoleError(f"digamma has a pole at {x}")
        if x < mp.mpf(1) / 2:
            # reflection: psi(x) = psi(1 - x) - pi cot(pi x)
            val = digamma(1 - x, cfg) - mp.pi * mp.cot(mp.pi * x)
            with mp.workprec(cfg.prec_bits):
                return +val
        x0 = 0.5 * cfg.working_digits + 10
        acc = mp.mpf(0)
        while x < x0:
            acc -= 1 / x
            x += 1
        eps = mp.mpf(2) ** (-mp.mp.prec)
        val = mp.log(x) - 1 / (2 * x)
        x2 = x * x
        xp = x2
        k = 1
        while True:
            term = to_mpf(bernoulli_std(2 * k)) / (2 * k * xp)
            val -= term
            if abs(term) < eps:
                break
            xp *= x2
            k += 1
        val += acc
    with mp.workprec(cfg.prec_bits):
        return +val


# -- Bernoulli interpolation -------------------------------------------------


def bernoulli_interp(s, cfg: EvalConfig) -> mp.mpf:
    """B_s = -s zeta(1 - s), the interpolation matching B_1 = +1/2."""
    with mp.workprec(cfg.prec_bits):
        s_mp = to_mpf(s)
        if s_mp == 0:
            return mp.mpf(1)
        return -s_mp * zeta(1 - s_mp, cfg)


def bernoulli_prime(n: int, cfg: EvalConfig) -> mp.mpf:
    """B'_n = d/ds[-s zeta(1-s)] at s = n, i.e. -zeta(1-n) + n zeta'(1-n)."""
    if n < 1:
        raise ValueError(f"bernoulli_prime needs n >= 1, got {n}")
    z, zp = _zeta_pair(1 - n, cfg, want_log=True)
    with mp.workprec(cfg.prec_bits):
        return -z + n * zp


# -- Euler sums --------------------------------------------------------------


def euler_sum_closed(s: int, cfg: EvalConfig) -> mp.mpf:
    """sum H_n / n^s via Euler's reduction to zeta values."""
    if int(s) != s or s < 2:
        raise ValueError(f"euler_sum_closed needs an integer s >= 2, got {s}")
    s = int(s)
    with mp.workprec(cfg.prec_bits):
        val = (1 + mp.mpf(s) / 2) * zeta(s + 1, cfg)
        for k in range(1, s - 1):
            val -= zeta(k + 1, cfg) * zeta(s - k, cfg) / 2
        return val


def euler_sum_direct(s: int, cfg: EvalConfig, return_partials: bool = False):
    """sum H_n / n^s by direct summation plus an asymptotic tail.

    The head sum runs to N - 1.  For the tail, H_n is replaced by its
    expansion log n + gamma + 1/(2n) - sum_k B_2k / (2k n^2k) and each
    resulting power sum over n >= N is evaluated by Euler-Maclaurin.
    With ``return_partials`` the list of head partial sums is returned too.
    """
    if int(s) != s or s < 2:
        raise ValueError(f"euler_sum_direct needs an integer s >= 2, got {s}")
    s = int(s)
    N = int(cfg.working_digits) + 20
    gamma = const_gamma(cfg, method="euler-maclaurin")
    with mp.workprec(cfg.prec_bits + 20):
        eps = mp.mpf(2) ** (-mp.mp.prec)
        h = mp.mpf(0)
        total = mp.mpf(0)
        partials = []
        for n in range(1, N):
            h += mp.mpf(1) / n
            total += h / mp.mpf(n) ** s
            partials.append(total)
        t_s, tl_s = _power_tail(s, N, cfg)
        t_s1, _ = _power_tail(s + 1, N, cfg, want_log=False)
        tail = tl_s + gamma * t_s + t_s1 / 2
        k = 1
        while True:
            c = to_mpf(bernoulli_std(2 * k)) / (2 * k)
            t_k, _ = _power_tail(s + 2 * k, N, cfg, want_log=False)
            term = c * t_k
            tail -= term
            if abs(term) < eps:
                break
            k += 1
        total += tail
    with mp.workprec(cfg.prec_bits):
        total = +total
    if return_partials:
        return total, partials
    return total


# -- hybrid identity ---------------------------------------------------------


def _hybrid_exact_part(n: int) -> Fraction:
    # n B_{n-1} - conv_binom(n) - B_n H_n
    return n * bernoulli_paper(n - 1) - conv_binom(n) - bernoulli_paper(n) * harmonic(n)


def h_nonpos(m: int, cfg: EvalConfig) -> mp.mpf:
    """h(m) for integer m <= 0, defined through the hybrid identity.

    With n = 1 - m:
        (-1)^(n-1) n h(1-n) = B'_n + n B_{n-1} + gamma B_n - conv_binom(n) - B_n H_n
    """
    if int(m) != m or m > 0:
        raise ValueError(f"h_nonpos needs an integer m <= 0, got {m}")
    n = 1 - int(m)
    bp = bernoulli_prime(n, cfg)
    g = const_gamma(cfg)
    with mp.workprec(cfg.prec_bits):
        rhs = bp + g * to_mpf(bernoulli_paper(n)) + to_mpf(_hybrid_exact_part(n))
        sign = 1 if (n - 1) % 2 == 0 else -1
        return sign * rhs / n


def h_nonpos_closed_minus1(cfg: EvalConfig) -> mp.mpf:
    """h(-1) = -zeta'(-1) - gamma/12 - 1/8, the hand-simplified n = 2 case."""
    zp = zeta_prime(-1, cfg)
    g = const_gamma(cfg, method="euler-maclaurin")
    with mp.workprec(cfg.prec_bits):
        return -zp - g / 12 - mp.mpf(1) / 8


def hybrid_h0_closed_form(cfg: EvalConfig) -> mp.mpf:
    """gamma/2 + 1/2 - log(2 pi)/2 from independently computed constants."""
    g = const_gamma(cfg, method="euler-maclaurin")
    with mp.workprec(cfg.prec_bits):
        return g / 2 + mp.mpf(1) / 2 - const_log_2pi(cfg) / 2


def ramanujan_h0(cfg: EvalConfig) -> mp.mpf:
    """3 gamma/2 + 1/2 - log(2 pi)/2 (Ramanujan-summed sum of H_n)."""
    g = const_gamma(cfg)
    with mp.workprec(cfg.prec_bits):
        return 3 * g / 2 + mp.mpf(1) / 2 - const_log_2pi(cfg) / 2


def zeta_prime_neg_even(k: int, cfg: EvalConfig) -> mp.mpf:
    """zeta'(-2k) = (-1)^k (2k)! zeta(2k+1) / (2 (2 pi)^{2k}), k >= 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    z = zeta(2 * k + 1, cfg)
    with mp.workprec(cfg.prec_bits):
        return (-1) ** k * math.factorial(2 * k) * z / (2 * (2 * mp.pi) ** (2 * k))


def glaisher_combo(n: int, cfg: EvalConfig) -> mp.mpf:
    """zeta'(-n) - H_n zeta(-n), with H_0 = 0."""
    if int(n) != n or n < 0:
        raise ValueError(f"glaisher_combo needs an integer n >= 0, got {n}")
    z, zp = _zeta_pair(-int(n), cfg, want_log=True)
    with mp.workprec(cfg.prec_bits):
        return zp - to_mpf(harmonic(int(n))) * z


# -- digamma asymptotics -----------------------------------------------------


def psi_tilde(x, cfg: EvalConfig) -> mp.mpf:
    """psi(x) - log x + 1/(2x)."""
    p = digamma(x, cfg)
    with mp.workprec(cfg.prec_bits):
        x = mp.mpf(x)
        return p - mp.log(x) + 1 / (2 * x)


def dunne_schubert_partial(x, K: int, cfg: EvalConfig) -> mp.mpf:
    """Partial sum of the asymptotic series of psi_tilde, K terms.

    psi(x) - log x + 1/(2x) ~ -sum_{k>=1} B_2k / (2k x^2k).
    """
    with mp.workprec(cfg.prec_bits):
        x = mp.mpf(x)
        return -sum(
            (to_mpf(bernoulli_std(2 * k)) / (2 * k * x ** (2 * k)) for k in range(1, K + 1)),
            mp.mpf(0),
        )


def dunne_schubert_check(x, K: int, cfg: EvalConfig) -> VerificationReport:
    """Remainder of the truncated series vs the first omitted term."""
    t0 = time.perf_counter()
    if mp.mpf(x) < 2:
        raise ValueError("dunne_schubert_check needs x >= 2")
    if K < 0:
        raise ValueError("K must be >= 0")
    lhs = psi_tilde(x, cfg)
    rhs = dunne_schubert_partial(x, K, cfg)
    with mp.workprec(cfg.prec_bits):
        bound = abs(to_mpf(bernoulli_std(2 * K + 2)) / ((2 * K + 2) * mp.mpf(x) ** (2 * K + 2)))
    return make_report(
        "dunne_schubert",
        {"x": str(x), "K": K},
        lhs,
        rhs,
        bound,
        digits=cfg.target_digits,
        started=t0,
    )
