"""Command-line verification harness.

    python -m bernsum <suite> [--digits D] [--n-max N] [--format text|json|csv]
                              [--radius R] [--strict-lemma2 D]

Exit status: 0 when every asserted check passes, 1 when at least one
fails, 2 on a usage or configuration error.
"""
from __future__ import annotations

import argparse
import logging
import math
import sys
import time
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Iterator

import mpmath as mp

from . import exact, numerics, quadrature, series
from .exact import bernoulli_paper, bernoulli_std, conv_binom, harmonic
from .numerics import EvalConfig, to_mpf
from .quadrature import ContourError, HankelContour, KernelId
from .report import FAIL, REPORT_ONLY, Emitter, VerificationReport, make_report

log = logging.getLogger("bernsum")

EXACT_N_MAX = 200
QUAD_N_MAX = 8


@dataclass(frozen=True)
class RunConfig:
    digits: int = 30
    n_max: int | None = None  # None -> suite default
    format: str = "text"
    radius: float = 3.0
    strict_lemma2: int | None = None
    tolerance: str | None = None  # overrides every numeric tolerance
    timing: bool = False

    def eval_config(self) -> EvalConfig:
        return EvalConfig(target_digits=self.digits)

    def contour(self) -> HankelContour:
        return HankelContour(radius=self.radius)

    def n(self, default: int) -> int:
        return default if self.n_max is None else self.n_max


class _Ctx:
    """Per-run helpers shared by the suites."""

    def __init__(self, rc: RunConfig):
        self.rc = rc
        self.cfg = rc.eval_config()
        self.contour = rc.contour()
        self._override = None
        if rc.tolerance is not None:
            with mp.workprec(self.cfg.prec_bits):
                self._override = mp.mpf(rc.tolerance)

    def tol(self, digits: int | None = None):
        """Tolerance 10^-min(digits, run digits), unless overridden."""
        if self._override is not None:
            return self._override
        d = self.rc.digits if digits is None else min(digits, self.rc.digits)
        with mp.workprec(self.cfg.prec_bits):
            return mp.mpf(10) ** (-d)

    def exact_tol(self):
        # exact checks demand equality; an override can only loosen numerics
        return Fraction(0)

    def report(self, check_id, inputs, lhs, rhs, tol, started, **kw) -> VerificationReport:
        return make_report(
            check_id, inputs, lhs, rhs, tol, digits=self.rc.digits, started=started, **kw
        )

    def retol(self, r: VerificationReport, tol) -> VerificationReport:
        """Re-judge a report built by a library check under ``tol``."""
        if self._override is None or r.status == REPORT_ONLY:
            return r
        with mp.workprec(self.cfg.prec_bits):
            ok = mp.mpf(r.abs_error) <= tol
        return replace(r, tolerance=mp.nstr(tol, 5), status="PASS" if ok else FAIL)


# -- suites ------------------------------------------------------------------


def suite_bernoulli(ctx: _Ctx) -> Iterator[VerificationReport]:
    n_max = ctx.rc.n(EXACT_N_MAX)
    for m in range(2, n_max + 1, 2):
        t0 = time.perf_counter()
        yield ctx.report(
            "staudt_clausen", {"n": m}, bernoulli_paper(m).denominator,
            exact.staudt_clausen_denominator(m), ctx.exact_tol(), t0,
        )
    for m in range(3, n_max + 1, 2):
        t0 = time.perf_counter()
        yield ctx.report("bernoulli_odd_zero", {"n": m}, bernoulli_paper(m), 0, ctx.exact_tol(), t0)
    for m in range(0, min(n_max, 30) + 1):
        t0 = time.perf_counter()
        yield ctx.report(
            "bernoulli_interp", {"n": m}, numerics.bernoulli_interp(m, ctx.cfg),
            bernoulli_paper(m), ctx.tol(), t0,
        )
    for s in (-3, -2, -1, 0, 2, 3, 5):
        t0 = time.perf_counter()
        yield ctx.report(
            "zeta_prime_fd", {"s": s}, numerics.zeta_prime(s, ctx.cfg),
            numerics.zeta_prime_fd(s, ctx.cfg), ctx.tol(), t0,
        )


def suite_harmonic(ctx: _Ctx) -> Iterator[VerificationReport]:
    n_max = ctx.rc.n(EXACT_N_MAX)
    for n in range(2, n_max + 1):
        t0 = time.perf_counter()
        yield ctx.report(
            "harmonic_step", {"n": n}, harmonic(n) - harmonic(n - 1), Fraction(1, n),
            ctx.exact_tol(), t0,
        )
    g = numerics.const_gamma(ctx.cfg)
    for n in range(1, min(n_max, 50) + 1):
        t0 = time.perf_counter()
        psi = numerics.digamma(n + 1, ctx.cfg)
        with mp.workprec(ctx.cfg.prec_bits):
            lhs = psi + g
        yield ctx.report("digamma_harmonic", {"n": n}, lhs, harmonic(n), ctx.tol(), t0)


def suite_matiyasevich(ctx: _Ctx) -> Iterator[VerificationReport]:
    n_max = ctx.rc.n(EXACT_N_MAX)
    for n in range(4, n_max + 1, 2):
        t0 = time.perf_counter()
        yield ctx.report(
            "matiyasevich", {"n": n}, exact.matiyasevich_residual(n), 0, ctx.exact_tol(), t0
        )


def suite_series(ctx: _Ctx) -> Iterator[VerificationReport]:
    n_max = ctx.rc.n(EXACT_N_MAX)
    for n in range(1, min(n_max, 64) + 1):
        t0 = time.perf_counter()
        yield ctx.report(
            "product_coeff", {"n": n}, series.product_lhs_coeff(n) * math.factorial(n),
            conv_binom(n), ctx.exact_tol(), t0,
        )
    N = min(n_max, 128)
    H = series.hn_ogf(N)
    for n in range(1, N + 1):
        t0 = time.perf_counter()
        yield ctx.report("hn_ogf", {"n": n}, H[n], harmonic(n), ctx.exact_tol(), t0)
    t0 = time.perf_counter()
    order = min(n_max, series.DEFAULT_ORDER)
    f = series.egf_em1_over_z(order)
    L = series.series_log(f)
    mism = sum(1 for a, b in zip(L.coeffs, series.egf_log_em1_over_z(order).coeffs) if a != b)
    yield ctx.report("log_series_bernoulli", {"order": order}, mism, 0, ctx.exact_tol(), t0)
    t0 = time.perf_counter()
    back = series.series_exp(L)
    mism = sum(1 for a, b in zip(back.coeffs, f.coeffs) if a != b)
    yield ctx.report("exp_log_roundtrip", {"order": order}, mism, 0, ctx.exact_tol(), t0)


def suite_norlund(ctx: _Ctx) -> Iterator[VerificationReport]:
    n_max = min(ctx.rc.n(40), 40) if ctx.rc.n_max is None else ctx.rc.n_max
    for n in range(0, n_max + 1):
        t0 = time.perf_counter()
        yield ctx.report(
            "norlund_at_1", {"n": n}, series.norlund(n)(1), bernoulli_std(n), ctx.exact_tol(), t0
        )
        t0 = time.perf_counter()
        via_poly = series.norlund(n).derivative()(1)
        via_series = series._norlund_deriv_series(n)
        yield ctx.report(
            "norlund_deriv_at_1", {"n": n}, via_poly, via_series, ctx.exact_tol(), t0
        )


def suite_euler_sums(ctx: _Ctx) -> Iterator[VerificationReport]:
    cfg = ctx.cfg
    for s in (2, 3, 4, 5, 6):
        t0 = time.perf_counter()
        yield ctx.report(
            "euler_sum", {"s": s}, numerics.euler_sum_direct(s, cfg),
            numerics.euler_sum_closed(s, cfg), ctx.tol(), t0,
        )
    z = {k: numerics.zeta(k, cfg) for k in (2, 3, 4, 5)}
    with mp.workprec(cfg.prec_bits):
        printed = {2: 2 * z[3], 3: 5 * z[4] / 4, 4: 3 * z[5] - z[2] * z[3]}
    for s, val in printed.items():
        t0 = time.perf_counter()
        yield ctx.report(
            "euler_sum_printed", {"s": s}, numerics.euler_sum_direct(s, cfg), val, ctx.tol(), t0
        )


def _h_from_lemma2(n: int, ctx: _Ctx):
    q = quadrature.hankel_integrate(KernelId.LEMMA2, n, ctx.contour, ctx.cfg)
    with mp.workprec(ctx.cfg.prec_bits):
        return (-1) ** n * math.factorial(n - 1) * q.value


def suite_hybrid(ctx: _Ctx) -> Iterator[VerificationReport]:
    cfg = ctx.cfg
    t0 = time.perf_counter()
    h0 = numerics.h_nonpos(0, cfg)
    yield ctx.report("hybrid_h0", {"m": 0}, h0, numerics.hybrid_h0_closed_form(cfg), ctx.tol(), t0)
    t0 = time.perf_counter()
    r = numerics.ramanujan_h0(cfg)
    with mp.workprec(cfg.prec_bits):
        diff = r - h0
    yield ctx.report(
        "ramanujan_minus_h0", {}, diff, numerics.const_gamma(cfg, "euler-maclaurin"), ctx.tol(), t0
    )
    t0 = time.perf_counter()
    yield ctx.report(
        "hybrid_h_minus1", {"m": -1}, numerics.h_nonpos(-1, cfg),
        numerics.h_nonpos_closed_minus1(cfg), ctx.tol(), t0,
    )
    strict = ctx.rc.strict_lemma2
    for n in range(1, ctx.rc.n(QUAD_N_MAX) + 1):
        t0 = time.perf_counter()
        yield ctx.report(
            "h_table", {"m": 1 - n}, numerics.h_nonpos(1 - n, cfg), _h_from_lemma2(n, ctx),
            ctx.tol(strict) if strict is not None else ctx.tol(), t0,
            report_only=strict is None,
        )


def suite_lemmas(ctx: _Ctx) -> Iterator[VerificationReport]:
    cfg, c = ctx.cfg, ctx.contour
    strict = ctx.rc.strict_lemma2
    for n in range(1, ctx.rc.n(QUAD_N_MAX) + 1):
        yield ctx.retol(quadrature.lemma1_check(n, c, cfg, digits=min(20, ctx.rc.digits)), ctx.tol(20))
        r2 = quadrature.lemma2_value(n, c, cfg, strict_digits=None if strict is None else min(strict, ctx.rc.digits))
        yield ctx.retol(r2, ctx.tol(strict)) if strict is not None else r2
        yield ctx.retol(quadrature.lemma3_check(n, c, cfg, digits=min(15, ctx.rc.digits)), ctx.tol(15))
        yield ctx.retol(quadrature.lemma_sum_check(n, c, cfg, digits=min(15, ctx.rc.digits)), ctx.tol(15))


def suite_section3(ctx: _Ctx) -> Iterator[VerificationReport]:
    cfg, c = ctx.cfg, ctx.contour
    for s in (2.5, 3, 4):
        yield ctx.retol(quadrature.mellin_check(s, cfg, digits=min(20, ctx.rc.digits)), ctx.tol(20))
    for s in (0, 1.5, 3):
        yield ctx.retol(quadrature.sec3_identity_check(s, c, cfg, digits=min(15, ctx.rc.digits)), ctx.tol(15))
    for n in range(1, min(ctx.rc.n(4), 4) + 1):
        for r in quadrature.sec3_log_split_check(n, c, cfg, digits=min(12, ctx.rc.digits)):
            yield ctx.retol(r, ctx.tol(12))


def suite_asymptotic(ctx: _Ctx) -> Iterator[VerificationReport]:
    for x in (10, 20):
        for K in range(0, 4):
            r = numerics.dunne_schubert_check(x, K, ctx.cfg)
            yield ctx.retol(r, ctx.tol())


def suite_glaisher(ctx: _Ctx) -> Iterator[VerificationReport]:
    cfg = ctx.cfg
    for n in range(0, min(ctx.rc.n(10), 10) + 1):
        t0 = time.perf_counter()
        lhs = numerics.glaisher_combo(n, cfg)
        if n == 0:
            oracle = numerics.const_log_2pi(cfg)
            with mp.workprec(cfg.prec_bits):
                rhs = -oracle / 2
        elif n % 2 == 0:
            rhs = numerics.zeta_prime_neg_even(n // 2, cfg)
        else:
            zp = numerics.zeta_prime_fd(-n, cfg)
            z = numerics.zeta(-n, cfg)
            with mp.workprec(cfg.prec_bits):
                rhs = zp - to_mpf(harmonic(n)) * z
        yield ctx.report("glaisher", {"n": n}, lhs, rhs, ctx.tol(), t0)


SUITES: dict[str, Callable[[_Ctx], Iterator[VerificationReport]]] = {
    "bernoulli": suite_bernoulli,
    "harmonic": suite_harmonic,
    "matiyasevich": suite_matiyasevich,
    "series": suite_series,
    "norlund": suite_norlund,
    "euler-sums": suite_euler_sums,
    "hybrid": suite_hybrid,
    "lemmas": suite_lemmas,
    "section3": suite_section3,
    "asymptotic": suite_asymptotic,
    "glaisher": suite_glaisher,
}


def run(subcommand: str, config: RunConfig, sink: Callable[[VerificationReport], None] | None = None):
    """Run a suite (or ``all``); returns (exit_status, reports)."""
    if subcommand != "all" and subcommand not in SUITES:
        raise ValueError(f"unknown suite {subcommand!r}")
    ctx = _Ctx(config)
    names = list(SUITES) if subcommand == "all" else [subcommand]
    reports = []
    for name in names:
        log.info("running %s", name)
        for r in SUITES[name](ctx):
            if not config.timing and config.format != "text":
                r = replace(r, wall_time_ms=0)
            reports.append(r)
            if sink is not None:
                sink(r)
    status = 1 if any(r.status == FAIL for r in reports) else 0
    return status, reports


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="bernsum",
        description="Verify Bernoulli-number, Euler-sum and Hankel-contour identities.",
    )
    p.add_argument("suite", choices=[*SUITES, "all"])
    p.add_argument("--digits", type=int, default=30, help="target decimal digits (default 30)")
    p.add_argument("--n-max", type=int, default=None,
                   help=f"largest index (default {EXACT_N_MAX} exact, {QUAD_N_MAX} quadrature)")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--radius", type=float, default=3.0, help="Hankel circle radius, 0 < R < 2 pi")
    p.add_argument("--strict-lemma2", type=int, default=None, metavar="D",
                   help="assert the Lemma-2 / h-table values to D digits")
    p.add_argument("--tolerance", default=None, metavar="T",
                   help="override every numeric tolerance (e.g. 0 to exercise FAIL)")
    p.add_argument("--timing", action="store_true",
                   help="record wall times in json/csv output (breaks byte-reproducibility)")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else 0
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )
    try:
        if args.digits < 1:
            raise ValueError("--digits must be positive")
        if args.n_max is not None and args.n_max < 1:
            raise ValueError("--n-max must be positive")
        if args.strict_lemma2 is not None and args.strict_lemma2 < 1:
            raise ValueError("--strict-lemma2 must be positive")
        if args.tolerance is not None:
            float(args.tolerance)
        rc = RunConfig(
            digits=args.digits, n_max=args.n_max, format=args.format, radius=args.radius,
            strict_lemma2=args.strict_lemma2, tolerance=args.tolerance, timing=args.timing,
        )
        rc.contour()
    except (ValueError, ContourError) as e:
        print(f"bernsum: error: {e}", file=sys.stderr)
        return 2
    emitter = Emitter(rc.format, sys.stdout)
    status, reports = run(args.suite, rc, sink=emitter)
    n_fail = sum(r.status == FAIL for r in reports)
    log.info("%d reports, %d failed", len(reports), n_fail)
    return status


if __name__ == "__main__":
    sys.exit(main())
