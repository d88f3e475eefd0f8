"""Exact and high-precision checks of Matiyasevich's Bernoulli identity,
its extension to continued Euler sums, and the Hankel-contour lemmas
behind it."""

from .exact import (
    bernoulli_paper,
    bernoulli_std,
    binomial,
    conv_binom,
    conv_plain,
    harmonic,
    matiyasevich_residual,
)
from .numerics import EvalConfig
from .quadrature import HankelContour, KernelId, hankel_integrate
from .report import VerificationReport

__version__ = "0.1.0"
