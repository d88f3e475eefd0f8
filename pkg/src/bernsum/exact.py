"""Exact rational arithmetic: Bernoulli and harmonic numbers, the two
Bernoulli convolution sums, and the Matiyasevich residual.

Values are ``fractions.Fraction`` (always reduced, denominator >= 1).
Bernoulli numbers use the convention

    z / (e^z - 1) = sum_n (-1)^n B_n z^n / n!

so that B_1 = +1/2 and B_n agrees with the usual numbers for n != 1.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import comb

__all__ = [
    "bernoulli_paper",
    "bernoulli_std",
    "bernoulli_table",
    "harmonic",
    "binomial",
    "conv_plain",
    "conv_binom",
    "matiyasevich_residual",
    "staudt_clausen_denominator",
]

_lock = threading.Lock()
_std_table: list[Fraction] = [Fraction(1)]


def _extend_std(n: int) -> None:
    # sum_{k=0}^{m} C(m+1, k) B_k = 0  (standard convention, B_1 = -1/2)
    with _lock:
        for m in range(len(_std_table), n + 1):
            if m > 1 and m % 2 == 1:
                _std_table.append(Fraction(0))
                continue
            acc = Fraction(0)
            for k in range(m):
                bk = _std_table[k]
                if bk:
                    acc += comb(m + 1, k) * bk
            _std_table.append(-acc / (m + 1))


def bernoulli_std(n: int) -> Fraction:
    """Bernoulli number in the usual convention (B_1 = -1/2)."""
    if n < 0:
        raise ValueError(f"Bernoulli index must be >= 0, got {n}")
    if n >= len(_std_table):
        _extend_std(n)
    return _std_table[n]


def bernoulli_paper(n: int) -> Fraction:
    """Bernoulli number with B_1 = +1/2, i.e. (-1)^n times the usual one."""
    b = bernoulli_std(n)
    return -b if n == 1 else b


def bernoulli_table(n: int) -> list[Fraction]:
    """[B_0, ..., B_n] in the B_1 = +1/2 convention."""
    return [bernoulli_paper(k) for k in range(n + 1)]


@lru_cache(maxsize=None)
def harmonic(n: int) -> Fraction:
    """H_n = 1 + 1/2 + ... + 1/n.  H_0 = 0 is accepted for convenience."""
    if n < 0:
        raise ValueError(f"harmonic number index must be >= 0, got {n}")
    if n == 0:
        return Fraction(0)
    # iterative so deep indices never recurse
    h = Fraction(0)
    for j in range(1, n + 1):
        h += Fraction(1, j)
    return h


def binomial(n: int, k: int) -> int:
    if n < 0 or k < 0 or k > n:
        raise ValueError(f"binomial({n}, {k}) requires 0 <= k <= n")
    k = min(k, n - k)
    c = 1
    for i in range(1, k + 1):
        c = c * (n - k + i) // i
    return c


def _check_pos(n: int) -> None:
    if n < 1:
        raise ValueError(f"index must be >= 1, got {n}")


def conv_plain(n: int) -> Fraction:
    """sum over k + l = n, 1 <= k <= n, of (B_k / k) B_l."""
    _check_pos(n)
    return sum(
        (bernoulli_paper(k) / k * bernoulli_paper(n - k) for k in range(1, n + 1)),
        Fraction(0),
    )


def conv_binom(n: int) -> Fraction:
    """sum over k + l = n, 1 <= k <= n, of C(n, k) (B_k / k) B_l."""
    _check_pos(n)
    return sum(
        (
            binomial(n, k) * bernoulli_paper(k) / k * bernoulli_paper(n - k)
            for k in range(1, n + 1)
        ),
        Fraction(0),
    )


def matiyasevich_residual(n: int) -> Fraction:
    """conv_plain(n) - conv_binom(n) - B_n H_n.

    Vanishes for even n > 2; defined for every n >= 1 so the failures at
    odd and small n are visible.
    """
    _check_pos(n)
    return conv_plain(n) - conv_binom(n) - bernoulli_paper(n) * harmonic(n)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def staudt_clausen_denominator(m: int) -> int:
    """Product of primes p with (p - 1) | m, for even m >= 2."""
    if m < 2 or m % 2:
        raise ValueError(f"needs an even index >= 2, got {m}")
    out = 1
    for d in range(1, m + 1):
        if m % d == 0 and _is_prime(d + 1):
            out *= d + 1
    return out
