"""The power-law memory measure: density, mass profiles, and figure data.

The measure on [0, t] has density (1-alpha)/t^(1-alpha) * (t-x)^(-alpha).
alpha = 0 is the uniform full-history measure; alpha -> 1 concentrates
mass at the current time while keeping a polynomial tail over old history.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .quadrature import gauss_jacobi
from .specfun import JacobiParam

__all__ = [
    "FractionalMeasure",
    "density",
    "total_mass",
    "mass_oldest",
    "mass_recent",
    "measure_profile",
    "check_scale_invariance",
]


@dataclass(frozen=True)
class FractionalMeasure:
    """Power-law measure with singularity index alpha at current time t."""

    alpha: float
    t: float = 1.0

    def __post_init__(self):
        if not (0.0 <= self.alpha < 1.0):
            raise ValueError(f"singularity index must lie in [0, 1), got {self.alpha}")
        if self.t <= 0.0:
            raise ValueError(f"current time must be positive, got {self.t}")


def density(m: FractionalMeasure, x) -> np.ndarray | float:
    """Measure density at history position x in [0, t).

    Diverges at x = t for alpha > 0; that endpoint is excluded.
    """
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr < 0.0) or np.any(x_arr >= m.t):
        raise ValueError("density is defined on [0, t) only")
    out = (1.0 - m.alpha) / m.t ** (1.0 - m.alpha) * (m.t - x_arr) ** (-m.alpha)
    return float(out) if np.ndim(x) == 0 else out


def total_mass(m: FractionalMeasure, order: int = 16) -> float:
    """Quadrature check of unit mass, via the substitution x = t(1+eta)/2.

    The substitution maps the density integral onto the Jacobi weight
    (1-eta)^(-alpha); the t-dependent factors are kept explicit so that
    their cancellation is exercised numerically rather than algebraically.
    """
    if order < 4:
        raise ValueError(f"order must be >= 4, got {order}")
    rule = gauss_jacobi(JacobiParam(-m.alpha, 0.0), order)
    jac = (m.t / 2.0) ** (1.0 - m.alpha)
    pref = (1.0 - m.alpha) / m.t ** (1.0 - m.alpha)
    return pref * jac * float(np.sum(rule.weights))


def mass_oldest(alpha: float, p: float) -> float:
    """Measure of the oldest p-fraction of history, [0, p t]: 1 - (1-p)^(1-alpha)."""
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"fraction must lie in [0, 1], got {p}")
    return 1.0 - (1.0 - p) ** (1.0 - alpha)


def mass_recent(alpha: float, p: float) -> float:
    """Measure of the most recent p-fraction of history, [t(1-p), t]: p^(1-alpha)."""
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"fraction must lie in [0, 1], got {p}")
    return p ** (1.0 - alpha)


def measure_profile(alphas, samples: int, t: float = 1.0):
    """Density table for a list of alphas plus reference measures.

    Returns (header, rows): header is the CSV column list
    ``x, alpha_<v>..., legs, lagt, legt``; rows are float tuples.  The grid
    stops at t(1 - 1e-6) because the density diverges at x = t; LegT uses a
    window of width t/2.
    """
    if samples < 2:
        raise ValueError(f"samples must be >= 2, got {samples}")
    alphas = [float(a) for a in alphas]
    measures = [FractionalMeasure(a, t) for a in alphas]
    xs = np.linspace(0.0, t * (1.0 - 1e-6), samples)
    header = ["x"] + [f"alpha_{a:g}" for a in alphas] + ["legs", "lagt", "legt"]
    theta = t / 2.0
    rows = []
    for x in xs:
        row = [x]
        row += [density(m, x) for m in measures]
        row.append(1.0 / t)
        row.append(np.exp(-(t - x)))
        row.append(1.0 / theta if x >= t - theta else 0.0)
        rows.append(tuple(row))
    return header, rows


def check_scale_invariance(alpha: float, n: int, dilation: float,
                           t: float = 2.7, u=np.sin, order: int | None = None) -> float:
    """Max coefficient deviation between a signal at time t and its dilation.

    Projects u over [0, t] and tau -> u(dilation * tau) over [0, t/dilation]
    through the same quadrature oracle and returns the largest absolute
    difference; the two are equal in exact arithmetic.
    """
    if dilation <= 0.0:
        raise ValueError(f"dilation must be positive, got {dilation}")
    if n > 32:
        raise ValueError(f"scale-invariance check supports n <= 32, got {n}")
    from .verify import projection_coefficients

    if order is None:
        order = max(2 * n, 32)
    lam = float(dilation)
    x_direct = projection_coefficients(u, alpha, n, t, order)
    x_dilated = projection_coefficients(lambda s: u(lam * s), alpha, n, t / lam, order)
    return float(np.max(np.abs(x_direct - x_dilated)))
