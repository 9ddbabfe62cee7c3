"""Distribution functions needed for significance levels.

Thin validated wrappers over the Cephes routines in :mod:`scipy.special`.
"""

from __future__ import annotations

import math

from scipy import special as _sp

__all__ = [
    "betainc",
    "student_t_cdf",
    "student_t_sf",
    "t_two_tailed",
    "f_cdf",
    "f_sf",
    "normal_ppf",
]


def _positive(name, value):
    if not (value > 0) or math.isnan(value):
        raise ValueError(f"{name} must be > 0, got {value}")


def betainc(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta function I_x(a, b)."""
    _positive("a", a)
    _positive("b", b)
    if not (0.0 <= x <= 1.0):
        raise ValueError(f"x must lie in [0, 1], got {x}")
    return float(_sp.betainc(a, b, x))


def student_t_cdf(t: float, df: float) -> float:
    """P(T <= t) for Student's t with ``df`` degrees of freedom."""
    _positive("df", df)
    if math.isnan(t):
        raise ValueError("t must not be NaN")
    return float(_sp.stdtr(df, t))


def student_t_sf(t: float, df: float) -> float:
    return student_t_cdf(-t, df)


def t_two_tailed(t: float, df: float) -> float:
    """Two-tailed p-value ``P(|T| >= |t|)``."""
    p = 2.0 * student_t_cdf(-abs(t), df)
    return min(1.0, p)


def f_cdf(x: float, dfn: float, dfd: float) -> float:
    """P(F <= x) for the F distribution with (dfn, dfd) degrees of freedom."""
    _positive("dfn", dfn)
    _positive("dfd", dfd)
    if math.isnan(x):
        raise ValueError("x must not be NaN")
    if x <= 0:
        return 0.0
    return float(_sp.fdtr(dfn, dfd, x))


def f_sf(x: float, dfn: float, dfd: float) -> float:
    """Upper tail P(F > x), computed directly to keep small p-values exact."""
    _positive("dfn", dfn)
    _positive("dfd", dfd)
    if math.isnan(x):
        raise ValueError("x must not be NaN")
    if x <= 0:
        return 1.0
    return float(_sp.fdtrc(dfn, dfd, x))


def normal_ppf(p: float) -> float:
    """Inverse of the standard normal CDF."""
    if not (0.0 < p < 1.0):
        raise ValueError(f"p must lie in (0, 1), got {p}")
    return float(_sp.ndtri(p))
