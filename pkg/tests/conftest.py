import mpmath as mp
import pytest

from bernsum.numerics import EvalConfig


@pytest.fixture(scope="session")
def cfg30():
    return EvalConfig(target_digits=30)


@pytest.fixture(scope="session")
def cfg40():
    return EvalConfig(target_digits=40)


@pytest.fixture(scope="session")
def cfg45():
    return EvalConfig(target_digits=45)


def close(a, b, digits, prec=400):
    """|a - b| < 10^-digits, evaluated well above the mpmath default precision."""
    with mp.workprec(prec):
        from fractions import Fraction

        def conv(x):
            if isinstance(x, Fraction):
                return mp.mpf(x.numerator) / x.denominator
            if isinstance(x, str):
                return mp.mpf(x)
            return x

        return abs(conv(a) - conv(b)) < mp.mpf(10) ** (-digits)
