"""Special functions and Jacobi polynomial machinery.

Everything here is scalar/vector plumbing for the weight family
w(y) = (1-y)^a (1+y)^b on [-1, 1]; the rest of the package uses it with
(a, b) = (-alpha, 0) for a singularity index alpha in [0, 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "JacobiParam",
    "BasisScale",
    "ln_gamma",
    "generalized_binomial",
    "jacobi_eval_all",
    "jacobi_endpoint",
    "jacobi_derivative",
    "basis_scale",
]

# evaluation tolerance for the closed interval [-1, 1]
_DOMAIN_SLACK = 1e-12


@dataclass(frozen=True)
class JacobiParam:
    """Exponent pair of the Jacobi weight (1-y)^a (1+y)^b."""

    a: float
    b: float = 0.0

    def __post_init__(self):
        if not (self.a > -1.0 and self.b > -1.0):
            raise ValueError(
                f"Jacobi exponents must satisfy a > -1 and b > -1, got ({self.a}, {self.b})"
            )


@dataclass(frozen=True)
class BasisScale:
    """Normalization pair for degree n of the fractional basis.

    gamma_n rescales P_n^(-alpha,0) to unit norm under the projection
    measure; h_n is the plain Jacobi norm of P_n under (1-y)^(-alpha).
    """

    n: int
    gamma_n: float
    h_n: float


def ln_gamma(x: float) -> float:
    """Natural log of the gamma function for x > 0."""
    if x <= 0.0:
        raise ValueError(f"ln_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def generalized_binomial(z: float, n: int) -> float:
    """Binomial coefficient C(z, n) for real z, evaluated as a product.

    Equals Gamma(z+1) / (Gamma(z-n+1) n!) but stays exact at integer z
    and avoids gamma-pole cancellation.
    """
    if n < 0:
        raise ValueError(f"generalized_binomial requires n >= 0, got {n}")
    out = 1.0
    for k in range(1, n + 1):
        out *= (z - k + 1) / k
    return out


def _check_domain(y: np.ndarray) -> None:
    if np.any(np.abs(y) > 1.0 + _DOMAIN_SLACK):
        raise ValueError("Jacobi evaluation point outside [-1, 1]")


def jacobi_eval_all(p: JacobiParam, n_max: int, y, dtype=np.float64) -> np.ndarray:
    """Evaluate P_0^(a,b) .. P_{n_max}^(a,b) at y via the three-term recurrence.

    y may be a scalar or 1-d array; the result has shape (n_max+1,) or
    (n_max+1, len(y)).  dtype selects the working precision (the operator
    construction accumulates in extended precision).
    """
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    scalar = np.isscalar(y) or np.ndim(y) == 0
    y = np.atleast_1d(np.asarray(y, dtype=dtype))
    _check_domain(y)
    a = dtype(p.a)
    b = dtype(p.b)
    out = np.zeros((n_max + 1, y.size), dtype=dtype)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = (a + b + 2) * y / 2 + (a - b) / 2
    for n in range(2, n_max + 1):
        nn = dtype(n)
        c1 = 2 * nn * (nn + a + b) * (2 * nn + a + b - 2)
        c2 = (2 * nn + a + b - 1) * (2 * nn + a + b) * (2 * nn + a + b - 2)
        c3 = (2 * nn + a + b - 1) * (a * a - b * b)
        c4 = 2 * (nn + a - 1) * (nn + b - 1) * (2 * nn + a + b)
        out[n] = ((c2 * y + c3) * out[n - 1] - c4 * out[n - 2]) / c1
    return out[:, 0] if scalar else out


def jacobi_endpoint(p: JacobiParam, n: int) -> float:
    """P_n^(a,b)(1) = C(n+a, n)."""
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    return generalized_binomial(n + p.a, n)


def jacobi_derivative(p: JacobiParam, n: int, y) -> float:
    """d/dy P_n^(a,b)(y) via the parameter-shift formula.

    The derivative of P_n^(a,b) is (n+a+b+1)/2 times P_{n-1}^(a+1,b+1).
    """
    if n == 0:
        return 0.0 if np.ndim(y) == 0 else np.zeros(np.shape(y))
    shifted = JacobiParam(p.a + 1.0, p.b + 1.0)
    vals = jacobi_eval_all(shifted, n - 1, y)
    return (n + p.a + p.b + 1) / 2.0 * vals[n - 1]


def basis_scale(alpha: float, n: int) -> BasisScale:
    """Normalization constants gamma_n and h_n of the fractional basis."""
    if not (0.0 <= alpha < 1.0):
        raise ValueError(f"singularity index must lie in [0, 1), got {alpha}")
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    gamma_n = math.sqrt((2 * n + 1 - alpha) / (1 - alpha))
    h_n = 2.0 ** (1 - alpha) / (2 * n + 1 - alpha)
    return BasisScale(n=n, gamma_n=gamma_n, h_n=h_n)
