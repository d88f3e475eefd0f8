"""Truncated formal power series with exact coefficients.

Coefficients live either in Q (``Fraction``) or in Q[z]
(``RationalPolynomial``).  Nothing in here rounds.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .exact import bernoulli_paper, bernoulli_std, conv_binom

__all__ = [
    "DEFAULT_ORDER",
    "RationalPolynomial",
    "TruncatedSeries",
    "series_mul",
    "series_log",
    "series_exp",
    "egf_bernoulli_neg",
    "egf_bernoulli_std",
    "egf_log_em1_over_z",
    "egf_em1_over_z",
    "product_lhs_coeff",
    "hn_ogf",
    "norlund",
    "norlund_deriv_at_1",
]

DEFAULT_ORDER = 64


class RationalPolynomial:
    """Polynomial in one formal variable z with ``Fraction`` coefficients.

    Stored low degree first with trailing zeros trimmed.  The zero
    polynomial has no coefficients and degree ``-inf``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def z(cls) -> RationalPolynomial:
        return cls([0, 1])

    @property
    def degree(self) -> float:
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def _lift(self, other) -> RationalPolynomial:
        if isinstance(other, RationalPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalPolynomial([other])
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return RationalPolynomial(
            [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPolynomial([c * other for c in self.coeffs])
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPolynomial([c / other for c in self.coeffs])
        return NotImplemented

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __call__(self, z) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def derivative(self) -> RationalPolynomial:
        return RationalPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def __repr__(self):
        if not self.coeffs:
            return "RationalPolynomial(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"({c})*z" + (f"^{i}" if i > 1 else ""))
        return "RationalPolynomial(" + " + ".join(terms) + ")"


@dataclass(frozen=True)
class TruncatedSeries:
    """c_0 + c_1 x + ... + c_N x^N  (mod x^{N+1})."""

    coeffs: tuple
    order: int

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("truncation order must be >= 0")
        cs = tuple(self.coeffs)[: self.order + 1]
        if len(cs) < self.order + 1:
            zero = cs[0] * 0 if cs else Fraction(0)
            cs = cs + (zero,) * (self.order + 1 - len(cs))
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_list(cls, coeffs: Sequence, order: int | None = None) -> TruncatedSeries:
        cs = tuple(c if isinstance(c, RationalPolynomial) else Fraction(c) for c in coeffs)
        return cls(cs, len(cs) - 1 if order is None else order)

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def _ring(self) -> type:
        return type(self.coeffs[0])

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        _check_compatible(self, other)
        return TruncatedSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.order)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        _check_compatible(self, other)
        return TruncatedSeries(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.order)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return TruncatedSeries(tuple(c * other for c in self.coeffs), self.order)

    __rmul__ = __mul__

    def derivative(self) -> TruncatedSeries:
        # the top coefficient is unknown after differentiation; pad with zero
        cs = [k * self.coeffs[k] for k in range(1, self.order + 1)]
        zero = self.coeffs[0] * 0
        return TruncatedSeries(tuple(cs) + (zero,), self.order)


def _check_compatible(a: TruncatedSeries, b: TruncatedSeries) -> None:
    if a.order != b.order:
        raise ValueError(f"truncation order mismatch: {a.order} vs {b.order}")
    if a._ring() is not b._ring():
        raise TypeError(f"coefficient ring mismatch: {a._ring().__name__} vs {b._ring().__name__}")


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, truncated at the common order."""
    _check_compatible(a, b)
    N = a.order
    zero = a.coeffs[0] * 0
    out = []
    for n in range(N + 1):
        acc = zero
        for k in range(n + 1):
            ak = a.coeffs[k]
            if ak:
                acc = acc + ak * b.coeffs[n - k]
        out.append(acc)
    return TruncatedSeries(tuple(out), N)


def series_log(a: TruncatedSeries) -> TruncatedSeries:
    """Logarithm of a series with constant term 1, via a L' = a'."""
    if a.coeffs[0] != 1:
        raise ValueError("series_log needs constant term 1")
    N = a.order
    zero = a.coeffs[0] * 0
    L = [zero] * (N + 1)
    for n in range(1, N + 1):
        acc = n * a.coeffs[n]
        for k in range(1, n):
            acc = acc - k * L[k] * a.coeffs[n - k]
        L[n] = acc / n
    return TruncatedSeries(tuple(L), N)


def series_exp(a: TruncatedSeries) -> TruncatedSeries:
    """Exponential of a series with zero constant term, via E' = a' E."""
    if a.coeffs[0] != 0:
        raise ValueError("series_exp needs constant term 0")
    N = a.order
    one = a.coeffs[0] * 0 + 1
    E = [one] + [a.coeffs[0] * 0] * N
    for n in range(1, N + 1):
        acc = a.coeffs[0] * 0
        for k in range(1, n + 1):
            if a.coeffs[k]:
                acc = acc + k * a.coeffs[k] * E[n - k]
        E[n] = acc / n
    return TruncatedSeries(tuple(E), N)


def egf_bernoulli_neg(N: int = DEFAULT_ORDER) -> TruncatedSeries:
    """-z/(e^{-z} - 1) = sum B_n z^n / n!  (B_1 = +1/2)."""
    return TruncatedSeries(tuple(bernoulli_paper(n) / factorial(n) for n in range(N + 1)), N)


def egf_bernoulli_std(N: int = DEFAULT_ORDER) -> TruncatedSeries:
    """x/(e^x - 1) = sum B_n^std x^n / n!  (B_1 = -1/2)."""
    return TruncatedSeries(tuple(bernoulli_std(n) / factorial(n) for n in range(N + 1)), N)


def egf_em1_over_z(N: int = DEFAULT_ORDER) -> TruncatedSeries:
    """(e^z - 1)/z = sum z^n / (n+1)!, built directly from factorials."""
    return TruncatedSeries(tuple(Fraction(1, factorial(n + 1)) for n in range(N + 1)), N)


def egf_log_em1_over_z(N: int = DEFAULT_ORDER) -> TruncatedSeries:
    """log((e^z - 1)/z) = sum_{n>=1} (B_n / n) z^n / n!."""
    cs = [Fraction(0)] + [bernoulli_paper(n) / (n * factorial(n)) for n in range(1, N + 1)]
    return TruncatedSeries(tuple(cs), N)


def product_lhs_coeff(n: int) -> Fraction:
    """n-th coefficient of log((e^z-1)/z) * (-z/(e^{-z}-1))."""
    if n < 1:
        raise ValueError(f"index must be >= 1, got {n}")
    prod = series_mul(egf_log_em1_over_z(n), egf_bernoulli_neg(n))
    return prod[n]


def hn_ogf(N: int = DEFAULT_ORDER) -> TruncatedSeries:
    """-log(1 - x)/(1 - x), built as a product of two exact series."""
    neg_log = TruncatedSeries(tuple([Fraction(0)] + [Fraction(1, k) for k in range(1, N + 1)]), N)
    geometric = TruncatedSeries(tuple(Fraction(1) for _ in range(N + 1)), N)
    return series_mul(neg_log, geometric)


def norlund(n: int) -> RationalPolynomial:
    """Norlund polynomial B_n^{(z)} = n! [x^n] (x/(e^x - 1))^z.

    Uses the x/(e^x - 1) generating function, so B_n^{(1)} is the usual
    Bernoulli number (B_1^{(1)} = -1/2); apply ``(-1)^n`` for the B_1 = +1/2
    convention used elsewhere in the package.
    """
    if n < 0:
        raise ValueError(f"index must be >= 0, got {n}")
    if n == 0:
        return RationalPolynomial([1])
    L = series_log(egf_bernoulli_std(n))
    z = RationalPolynomial.z()
    zL = TruncatedSeries(tuple(z * c for c in L.coeffs), n)
    return series_exp(zL)[n] * factorial(n)


def _norlund_deriv_series(n: int) -> Fraction:
    # d/dz (x/(e^x-1))^z at z = 1 is log(x/(e^x-1)) * x/(e^x-1)
    B = egf_bernoulli_std(n)
    return series_mul(series_log(B), B)[n] * factorial(n)


def norlund_deriv_at_1(n: int) -> Fraction:
    """d/dz B_n^{(z)} at z = 1, from two independent routes that must agree."""
    via_poly = norlund(n).derivative()(1)
    via_series = _norlund_deriv_series(n)
    if via_poly != via_series:
        raise ArithmeticError(
            f"Norlund derivative routes disagree at n={n}: {via_poly} != {via_series}"
        )
    return via_poly
