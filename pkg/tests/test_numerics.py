from fractions import Fraction

import mpmath as mp
import pytest

from bernsum.exact import bernoulli_paper, bernoulli_std, harmonic
from bernsum.numerics import (
    EvalConfig,
    PoleError,
    bernoulli_interp,
    bernoulli_prime,
    const_gamma,
    const_log_2pi,
    digamma,
    dunne_schubert_check,
    dunne_schubert_partial,
    euler_sum_closed,
    euler_sum_direct,
    glaisher_combo,
    h_nonpos,
    h_nonpos_closed_minus1,
    hybrid_h0_closed_form,
    psi_tilde,
    ramanujan_h0,
    zeta,
    zeta_prime,
    zeta_prime_fd,
    zeta_prime_neg_even,
)

from conftest import close

# frozen from mpmath at 50 digits (independent library)
GAMMA_30 = "0.577215664901532860606512090082"
LOG_2PI_20 = "1.8378770664093454836"
RAMANUJAN_H0 = "0.44688496414762654912943839871798600670184153027"
H0 = "-0.13033070075390631147707369136441642434031780567"
B_PRIME_2 = "-0.24750895406756852509450598715222795219473942734"
ZETA_PRIME_M1 = "-0.1654211437004509292139196602427806427640363803352"
H_M1 = "-0.0076801617080101425032896805974195598228102309931"


def mpq(q: Fraction):
    with mp.workprec(400):
        return mp.mpf(q.numerator) / q.denominator


def test_config_precision():
    cfg = EvalConfig(30, 15)
    assert cfg.working_digits == 45
    assert cfg.prec_bits == 150  # ceil(45 * log2 10)
    with pytest.raises(ValueError):
        EvalConfig(0)


class TestConstants:
    def test_gamma_digits(self, cfg30):
        assert close(const_gamma(cfg30), GAMMA_30, 30)

    def test_gamma_two_routes(self, cfg45):
        a = const_gamma(cfg45, "brent-mcmillan")
        b = const_gamma(cfg45, "euler-maclaurin")
        assert close(a, b, 45)
        with mp.workdps(60):
            assert close(a, +mp.euler, 45)

    def test_gamma_bracket(self):
        g = const_gamma(EvalConfig(5))
        assert 0.57 < g < 0.58

    def test_gamma_precision_monotone(self):
        lo = mp.nstr(const_gamma(EvalConfig(20)), 20)
        hi = mp.nstr(const_gamma(EvalConfig(40)), 40)
        assert hi[:19] == lo[:19]

    def test_gamma_unknown_method(self, cfg30):
        with pytest.raises(ValueError):
            const_gamma(cfg30, "nope")

    def test_log_2pi(self):
        cfg = EvalConfig(20)
        v = const_log_2pi(cfg)
        assert close(v, LOG_2PI_20, 19)
        assert 1.83 < v < 1.84
        with mp.workprec(cfg.prec_bits):
            assert abs(mp.exp(v) - 2 * mp.pi) < mp.mpf(10) ** -19


class TestZeta:
    def test_zeta_zero(self, cfg30):
        assert close(zeta(0, cfg30), Fraction(-1, 2), 30)

    @pytest.mark.parametrize("n", range(0, 12))
    def test_zeta_negative_integers(self, cfg30, n):
        # zeta(-n) = -B^std_{n+1}/(n+1)
        expected = -bernoulli_std(n + 1) / (n + 1)
        if n == 0:
            expected = Fraction(-1, 2)
        assert close(zeta(-n, cfg30), expected, 30)

    def test_zeta_minus_one(self, cfg30):
        assert close(zeta(-1, cfg30), Fraction(-1, 12), 30)

    def test_zeta_two_direct_sum_oracle(self, cfg30):
        # sum_{k<N} k^-2 + tail via 1/N + 1/(2N^2) + 1/(6N^3) - 1/(30 N^5) + ...
        with mp.workdps(50):
            N = 1000
            head = mp.fsum(mp.mpf(1) / k**2 for k in range(1, N))
            n = mp.mpf(N)
            tail = 1 / n + 1 / (2 * n**2) + 1 / (6 * n**3) - 1 / (30 * n**5) + 1 / (42 * n**7)
            assert close(zeta(2, cfg30), head + tail, 24)
        assert close(zeta(2, cfg30), "1.6449340668482264364724151666", 28)

    @pytest.mark.parametrize("s", ["-7.25", "-2.5", "0.5", "1.5", "2.75", "10"])
    def test_zeta_against_mpmath(self, cfg30, s):
        with mp.workdps(60):
            ref = mp.zeta(mp.mpf(s))
        assert close(zeta(mp.mpf(s), cfg30), ref, 30)

    def test_zeta_pole(self, cfg30):
        with pytest.raises(PoleError):
            zeta(1, cfg30)
        with pytest.raises(PoleError):
            zeta_prime(1, cfg30)

    def test_zeta_prime_zero(self, cfg30):
        with mp.workprec(cfg30.prec_bits):
            half_log = -const_log_2pi(cfg30) / 2
        assert close(zeta_prime(0, cfg30), half_log, 30)

    def test_zeta_prime_minus_one_glaisher(self, cfg30):
        with mp.workdps(60):
            ref = mp.mpf(1) / 12 - mp.log(mp.glaisher)
        assert close(zeta_prime(-1, cfg30), ref, 30)
        assert close(zeta_prime(-1, cfg30), ZETA_PRIME_M1, 30)

    @pytest.mark.parametrize("s", [-3, -2, -1, 0, 2, 3, 5])
    def test_zeta_prime_finite_difference(self, cfg30, s):
        assert close(zeta_prime(s, cfg30), zeta_prime_fd(s, cfg30), 30)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_zeta_prime_negative_even(self, cfg30, k):
        assert close(zeta_prime(-2 * k, cfg30), zeta_prime_neg_even(k, cfg30), 30)

    def test_precision_contract(self):
        lo, hi = EvalConfig(25), EvalConfig(35)
        for s in (-3, 0.5, 2):
            assert close(zeta(s, lo), zeta(s, hi), 25)
            assert close(zeta_prime(s, lo), zeta_prime(s, hi), 25)


class TestDigamma:
    def test_at_one(self, cfg30):
        with mp.workprec(cfg30.prec_bits):
            ref = -const_gamma(cfg30)
        assert close(digamma(1, cfg30), ref, 30)

    @pytest.mark.parametrize("n", range(1, 51))
    def test_harmonic(self, cfg30, n):
        g = const_gamma(cfg30)
        with mp.workprec(cfg30.prec_bits):
            lhs = digamma(n + 1, cfg30) + g
        assert close(lhs, harmonic(n), 30)

    @pytest.mark.parametrize("x", ["0.3", "2.5", "17.125", "-1.5"])
    def test_recurrence(self, cfg30, x):
        with mp.workprec(cfg30.prec_bits):
            xm = mp.mpf(x)
            d = digamma(xm + 1, cfg30) - digamma(xm, cfg30)
            assert close(d, 1 / xm, 30)

    def test_poles(self, cfg30):
        for x in (0, -1, -7):
            with pytest.raises(PoleError):
                digamma(x, cfg30)


class TestBernoulliInterp:
    def test_examples(self, cfg30):
        assert close(bernoulli_interp(1, cfg30), Fraction(1, 2), 30)
        assert close(bernoulli_interp(4, cfg30), Fraction(-1, 30), 30)
        assert close(bernoulli_interp(3, cfg30), 0, 30)
        assert bernoulli_interp(0, cfg30) == 1

    @pytest.mark.parametrize("n", range(0, 31))
    def test_matches_exact(self, cfg30, n):
        assert close(bernoulli_interp(n, cfg30), bernoulli_paper(n), 30)

    def test_bernoulli_prime_one(self, cfg30):
        with mp.workprec(cfg30.prec_bits):
            ref = mp.mpf(1) / 2 - const_log_2pi(cfg30) / 2
        assert close(bernoulli_prime(1, cfg30), ref, 30)

    def test_bernoulli_prime_two(self, cfg30):
        with mp.workprec(cfg30.prec_bits):
            ref = mp.mpf(1) / 12 + 2 * zeta_prime(-1, cfg30)
        assert close(bernoulli_prime(2, cfg30), ref, 30)
        assert close(bernoulli_prime(2, cfg30), B_PRIME_2, 30)

    def test_bernoulli_prime_three(self, cfg30):
        with mp.workprec(cfg30.prec_bits):
            ref = 3 * zeta_prime(-2, cfg30)
        assert close(bernoulli_prime(3, cfg30), ref, 30)

    def test_bernoulli_prime_matches_numeric_derivative(self, cfg30):
        for n in (1, 2, 5):
            with mp.workdps(60):
                ref = mp.diff(lambda s: -s * mp.zeta(1 - s), n)
            assert close(bernoulli_prime(n, cfg30), ref, 30)


class TestEulerSums:
    def test_closed_forms(self, cfg30):
        z = {k: zeta(k, cfg30) for k in (2, 3, 4, 5)}
        with mp.workprec(cfg30.prec_bits):
            assert close(euler_sum_closed(2, cfg30), 2 * z[3], 30)
            assert close(euler_sum_closed(3, cfg30), 5 * z[4] / 4, 30)
            assert close(euler_sum_closed(4, cfg30), 3 * z[5] - z[2] * z[3], 30)

    @pytest.mark.parametrize("s", [2, 3, 4, 5, 6])
    def test_direct_vs_closed(self, s):
        cfg = EvalConfig(30)
        assert close(euler_sum_direct(s, cfg), euler_sum_closed(s, cfg), 30)

    def test_direct_against_mpmath_zeta(self, cfg30):
        # outside-library values for the printed closed forms
        with mp.workdps(60):
            refs = {2: 2 * mp.zeta(3), 3: 5 * mp.zeta(4) / 4, 4: 3 * mp.zeta(5) - mp.zeta(2) * mp.zeta(3)}
        for s, ref in refs.items():
            assert close(euler_sum_direct(s, cfg30), ref, 30)

    def test_partials_increase(self, cfg30):
        _, partials = euler_sum_direct(3, cfg30, return_partials=True)
        assert all(b > a for a, b in zip(partials, partials[1:]))

    def test_domain(self, cfg30):
        for f in (euler_sum_closed, euler_sum_direct):
            with pytest.raises(ValueError):
                f(1, cfg30)


class TestHybrid:
    def test_h0_closed_form(self, cfg45):
        assert close(h_nonpos(0, cfg45), hybrid_h0_closed_form(cfg45), 45)
        assert close(h_nonpos(0, cfg45), H0, 45)

    def test_h_minus1(self, cfg30):
        assert close(h_nonpos(-1, cfg30), h_nonpos_closed_minus1(cfg30), 30)
        assert close(h_nonpos(-1, cfg30), H_M1, 30)

    def test_ramanujan_difference(self, cfg45):
        r = ramanujan_h0(cfg45)
        with mp.workprec(cfg45.prec_bits):
            diff = r - h_nonpos(0, cfg45)
        assert close(diff, const_gamma(cfg45, "euler-maclaurin"), 45)

    def test_ramanujan_value(self):
        v = ramanujan_h0(EvalConfig(20))
        assert close(v, RAMANUJAN_H0, 20)
        assert 0.44 < v < 0.45

    def test_domain(self, cfg30):
        with pytest.raises(ValueError):
            h_nonpos(1, cfg30)


class TestGlaisher:
    def test_n0(self, cfg30):
        assert close(glaisher_combo(0, cfg30), zeta_prime(0, cfg30), 30)

    def test_n1(self, cfg30):
        with mp.workprec(cfg30.prec_bits):
            ref = zeta_prime(-1, cfg30) + mp.mpf(1) / 12
        assert close(glaisher_combo(1, cfg30), ref, 30)

    def test_n2(self, cfg30):
        with mp.workprec(cfg30.prec_bits):
            ref = -zeta(3, cfg30) / (4 * mp.pi**2)
        assert close(glaisher_combo(2, cfg30), ref, 30)


class TestDunneSchubert:
    def test_k3(self, cfg30):
        r = dunne_schubert_check(10, 3, cfg30)
        assert r.status == "PASS"
        bound = abs(bernoulli_std(8)) / (8 * Fraction(10) ** 8)
        assert close(r.tolerance, bound, 14)

    def test_k0(self, cfg30):
        assert dunne_schubert_partial(10, 0, cfg30) == 0
        r = dunne_schubert_check(10, 0, cfg30)
        assert r.lhs == mp.nstr(psi_tilde(10, cfg30), 30)
        assert r.status == "PASS"

    def test_error_decreases(self, cfg30):
        errs = []
        for K in (1, 2, 3):
            with mp.workprec(cfg30.prec_bits):
                errs.append(abs(psi_tilde(10, cfg30) - dunne_schubert_partial(10, K, cfg30)))
        assert errs[0] > errs[1] > errs[2]

    def test_domain(self, cfg30):
        with pytest.raises(ValueError):
            dunne_schubert_check(1, 2, cfg30)
