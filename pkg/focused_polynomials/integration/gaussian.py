"""
Exact integrals against the standard Gaussian measure, density (2 pi)^{-d/2} exp(-||x||^2 / 2),
and against the Haar probability measure on the unit sphere.

A product of linear forms <a_1, x> ... <a_m, x> integrates to the hafnian of the
Gram matrix (<a_i, a_j>) (Wick's formula). Gamma function ratios are evaluated
through log-Gamma and exponentiated at the end.
"""
from typing import Optional, Sequence
from dataclasses import dataclass
import math
import sys

import numpy as np
from scipy.special import gammaln

from .. import DEFAULT_TERM_CAP
from ..exceptions import CapExceededError, ValidationError
from ..matchings.hafnian import hafnian
from ..polynomials import FocusedPolynomial
from ..utils import get_logger, get_setting


@dataclass(frozen=True)
class GaussianMeasureSpec:
    """The standard Gaussian measure on R^dimension; no other covariance is supported."""

    dimension: int

    def __post_init__(self):
        if int(self.dimension) != self.dimension or self.dimension < 1:
            raise ValidationError(f"Dimension should be a positive integer, got {self.dimension}.")


def wick_integral(vectors: Sequence[Sequence[float]], cap: Optional[int] = None) -> float:
    """Integral of prod_i <a_i, x> over the standard Gaussian measure."""
    a = np.asarray(vectors, dtype=float)
    if a.size == 0:
        return 1.0
    a = np.atleast_2d(a)
    if a.shape[0] % 2:
        return 0.0
    return hafnian(a @ a.T, cap=cap)


def integrate_gaussian(
    poly: FocusedPolynomial,
    cap: Optional[int] = None,
    term_cap: Optional[int] = None,
) -> float:
    """sum_I alpha_I haf(C_I), C_I the Gram matrix of the generators selected by I."""
    if term_cap is None:
        term_cap = get_setting("FOCUSED_TERM_CAP", DEFAULT_TERM_CAP)
    if len(poly.terms) > term_cap:
        raise CapExceededError(
            f"The polynomial has {len(poly.terms)} terms, more than the cap of {term_cap}."
        )
    if poly.m % 2:
        return 0.0
    gram = poly.generators @ poly.generators.T
    return math.fsum(
        term.weight * hafnian(gram[np.ix_(term.indices, term.indices)], cap=cap)
        for term in poly.terms
        if term.weight != 0
    )


def monomial_gaussian_integral(alpha: Sequence[int]) -> float:
    """
    Integral of x^alpha: zero unless all exponents are even, and otherwise
    prod_i 2^{alpha_i/2} Gamma((alpha_i + 1)/2) / Gamma(1/2), i.e. prod_i (alpha_i - 1)!!.
    Values beyond the float range come back as inf.
    """
    alpha = np.asarray(alpha, dtype=int)
    if np.any(alpha < 0):
        raise ValidationError(f"Exponents should be non-negative, got {alpha.tolist()}.")
    if np.any(alpha % 2):
        return 0.0
    logs = alpha / 2 * math.log(2.0) + gammaln((alpha + 1) / 2) - gammaln(0.5)
    log_value = math.fsum(logs)
    if log_value > math.log(sys.float_info.max):
        return math.inf
    return float(math.exp(log_value))


def sphere_factor(n: int, m: int) -> float:
    """Gamma(n/2) / (2^{m/2} Gamma(n/2 + m/2)), turning Gaussian into sphere integrals."""
    if m % 2:
        raise ValidationError(f"Sphere conversion needs an even degree, got {m}.")
    return math.exp(gammaln(n / 2) - (m / 2) * math.log(2.0) - gammaln(n / 2 + m / 2))


def sphere_from_gaussian(gaussian_value: float, n: int, m: int) -> float:
    """Integral over S^{n-1} (Haar probability measure) of a homogeneous degree-m polynomial."""
    return gaussian_value * sphere_factor(n, m)


def integrate_sphere(poly: FocusedPolynomial) -> float:
    if poly.m % 2:
        return 0.0
    return sphere_from_gaussian(integrate_gaussian(poly), poly.n, poly.m)


def needle_sphere_integral(n: int, k: int) -> float:
    """
    Closed form of the integral of xi_1^{2k} over S^{n-1}:
    Gamma(n/2) Gamma(1/2 + k) / (sqrt(pi) Gamma(n/2 + k)).
    """
    value = math.exp(
        gammaln(n / 2) + gammaln(0.5 + k) - 0.5 * math.log(math.pi) - gammaln(n / 2 + k)
    )
    get_logger().debug(f"Closed-form sphere integral of xi_1^{2 * k} in R^{n}: {value}")
    return value
