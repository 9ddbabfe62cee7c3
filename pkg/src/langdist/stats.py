"""Statistics for relating language distance to test scores.

Descriptives, Pearson correlation with a two-tailed t test, threshold
grouping by distance, one-way (M)ANOVA for two groups, Levene's test and
normal Q-Q coordinates. Sums use :func:`math.fsum` throughout, which makes
every statistic independent of input order.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .core import SCORE_COLUMNS, Method, ScoreTable
from .errors import DegenerateInputError, LangDistError
from .special import f_sf, normal_ppf, t_two_tailed

__all__ = [
    "Descriptives",
    "PearsonResult",
    "Group",
    "GroupAssignment",
    "AnovaResult",
    "WilksResult",
    "ManovaResult",
    "LeveneResult",
    "DEFAULT_CUTLINES",
    "SUBSECTIONS",
    "descriptives",
    "pearson",
    "star_band",
    "split_groups",
    "anova_oneway",
    "anova_f",
    "manova",
    "levene",
    "qq_data",
]

SUBSECTIONS = ("reading", "listening", "speaking", "writing")

# Group A holds values at or below the cutline.
DEFAULT_CUTLINES = {Method.EMBEDDING: 0.19, Method.ASJP: 0.83, Method.TREE: 0.83}


def _floats(values, name="values") -> list[float]:
    out = [float(v) for v in values]
    if not all(math.isfinite(v) for v in out):
        raise ValueError(f"{name} must be finite")
    return out


def _mean(xs: Sequence[float]) -> float:
    return math.fsum(xs) / len(xs)


def _ss(xs: Sequence[float], center: float) -> float:
    return math.fsum((x - center) ** 2 for x in xs)


@dataclass(frozen=True)
class Descriptives:
    n: int
    mean: float
    sd: float | None


def descriptives(values: Iterable[float]) -> Descriptives:
    """Mean and sample standard deviation (n - 1 denominator).

    ``sd`` is ``None`` for a single value.
    """
    xs = _floats(values)
    if not xs:
        raise ValueError("descriptives of an empty sample")
    m = _mean(xs)
    sd = math.sqrt(_ss(xs, m) / (len(xs) - 1)) if len(xs) > 1 else None
    return Descriptives(len(xs), m, sd)


def star_band(p: float) -> str:
    """Significance stars: * p<.05, ** p<.01, *** p<.001."""
    if p < 0.001:
        return "***"
    if p < 0.01:
        return "**"
    if p < 0.05:
        return "*"
    return ""


@dataclass(frozen=True)
class PearsonResult:
    r: float
    n: int
    t_stat: float
    p_two_tailed: float

    @property
    def df(self) -> int:
        return self.n - 2

    @property
    def stars(self) -> str:
        return star_band(self.p_two_tailed)


def pearson(x: Sequence[float], y: Sequence[float]) -> PearsonResult:
    """Product-moment correlation and its two-tailed significance.

    The t statistic ``r * sqrt((n - 2) / (1 - r**2))`` is referred to
    Student's t with ``n - 2`` degrees of freedom.

    Raises
    ------
    ValueError
        On unequal lengths or fewer than three observations.
    DegenerateInputError
        If either input is constant.
    """
    xs, ys = _floats(x, "x"), _floats(y, "y")
    if len(xs) != len(ys):
        raise ValueError(f"length mismatch: {len(xs)} vs {len(ys)}")
    n = len(xs)
    if n < 3:
        raise ValueError(f"pearson needs n >= 3, got {n}")
    mx, my = _mean(xs), _mean(ys)
    dx = [v - mx for v in xs]
    dy = [v - my for v in ys]
    sxx = math.fsum(d * d for d in dx)
    syy = math.fsum(d * d for d in dy)
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateInputError("correlation is undefined for a constant input")
    sxy = math.fsum(a * b for a, b in zip(dx, dy))
    r = max(-1.0, min(1.0, sxy / math.sqrt(sxx * syy)))
    df = n - 2
    if abs(r) == 1.0:
        return PearsonResult(r, n, math.copysign(math.inf, r), 0.0)
    t = r * math.sqrt(df / (1.0 - r * r))
    return PearsonResult(r, n, t, t_two_tailed(t, df))


class Group(str, enum.Enum):
    A = "A"
    B = "B"


@dataclass(frozen=True)
class GroupAssignment:
    cutline: float
    groups: Mapping[str, Group]
    method: Method | None = None

    @property
    def counts(self) -> tuple[int, int]:
        n_a = sum(1 for g in self.groups.values() if g is Group.A)
        return n_a, len(self.groups) - n_a

    def members(self, group: Group) -> list[str]:
        return [c for c, g in self.groups.items() if g is group]


def split_groups(distances: Iterable[tuple[str, float]], cutline: float | None = None,
                 method: Method | None = None) -> GroupAssignment:
    """Assign each country to group A (distance <= cutline) or B.

    ``cutline`` defaults to the method's entry in :data:`DEFAULT_CUTLINES`.
    Missing distances must be dropped before the call.
    """
    if cutline is None:
        if method is None:
            raise ValueError("give a cutline or a method with a default cutline")
        cutline = DEFAULT_CUTLINES[method]
    groups: dict[str, Group] = {}
    for country, value in distances:
        if value is None:
            raise ValueError(f"{country}: missing distance must be excluded before grouping")
        if country in groups:
            raise ValueError(f"{country} appears twice")
        groups[country] = Group.A if float(value) <= cutline else Group.B
    if not groups:
        raise ValueError("nothing to group")
    return GroupAssignment(float(cutline), groups, method)


@dataclass(frozen=True)
class AnovaResult:
    F: float
    p: float
    means: tuple
    df_between: int
    df_within: int

    @property
    def mean_a(self) -> float:
        return self.means[0]

    @property
    def mean_b(self) -> float:
        return self.means[1]


def anova_oneway(*groups: Sequence[float], min_size: int = 2) -> AnovaResult:
    """One-way ANOVA F test across two or more groups."""
    gs = [_floats(g) for g in groups]
    if len(gs) < 2:
        raise ValueError("ANOVA needs at least two groups")
    for i, g in enumerate(gs):
        if len(g) < min_size:
            raise ValueError(f"group {i} has {len(g)} values, need >= {min_size}")
    means = [_mean(g) for g in gs]
    allv = [v for g in gs for v in g]
    n, k = len(allv), len(gs)
    df_b, df_w = k - 1, n - k
    if df_w < 1:
        raise ValueError("not enough observations for a within-group variance")
    if k == 2:
        ssb = len(gs[0]) * len(gs[1]) / n * (means[0] - means[1]) ** 2
    else:
        grand = _mean(allv)
        ssb = math.fsum(len(g) * (m - grand) ** 2 for g, m in zip(gs, means))
    ssw = math.fsum(_ss(g, m) for g, m in zip(gs, means))
    if ssw == 0.0:
        if ssb == 0.0:
            raise DegenerateInputError("F is undefined: no variance within or between groups")
        return AnovaResult(math.inf, 0.0, tuple(means), df_b, df_w)
    F = (ssb / df_b) / (ssw / df_w)
    return AnovaResult(F, f_sf(F, df_b, df_w), tuple(means), df_b, df_w)


def anova_f(group_a: Sequence[float], group_b: Sequence[float]) -> AnovaResult:
    """Two-group one-way ANOVA; F has (1, n_a + n_b - 2) degrees of freedom."""
    return anova_oneway(group_a, group_b)


@dataclass(frozen=True)
class WilksResult:
    wilks_lambda: float
    F_approx: float
    df1: int
    df2: int
    p: float


@dataclass(frozen=True)
class ManovaResult:
    variables: Mapping[str, AnovaResult]
    n_a: int
    n_b: int
    overall: WilksResult | None = None
    method: Method | None = None
    cutline: float | None = None

    def __getitem__(self, column: str) -> AnovaResult:
        return self.variables[column]


def _wilks(groups: list[np.ndarray]) -> WilksResult | None:
    allx = np.vstack(groups)
    n, p = allx.shape
    df2 = n - p - 1
    if df2 < 1:
        return None
    within = sum((g - g.mean(axis=0)).T @ (g - g.mean(axis=0)) for g in groups)
    dev = allx - allx.mean(axis=0)
    total = dev.T @ dev
    det_w = np.linalg.det(within)
    det_t = np.linalg.det(total)
    if not (det_w > 0 and det_t > 0):
        return None
    lam = float(det_w / det_t)
    # Exact for two groups (Hotelling's T^2).
    F = (1.0 - lam) / lam * df2 / p
    return WilksResult(lam, F, p, df2, f_sf(F, p, df2))


def manova(groups: GroupAssignment, scores: ScoreTable) -> ManovaResult:
    """Two-group MANOVA reported as per-variable F tests.

    Each of reading, listening, speaking, writing and total gets its own
    two-group ANOVA. Wilks' lambda over the four subsections is attached as
    ``overall`` when the within-group SSCP matrix is non-singular.
    """
    by_country = scores.by_country()
    missing = [c for c in groups.groups if c not in by_country]
    if missing:
        raise LangDistError(f"no {scores.year} scores for: {', '.join(sorted(missing))}")
    a = sorted(groups.members(Group.A))
    b = sorted(groups.members(Group.B))
    if not a or not b:
        raise DegenerateInputError(f"both groups must be non-empty (A={len(a)}, B={len(b)})")
    variables = {}
    for col in SCORE_COLUMNS:
        variables[col] = anova_f([by_country[c].score(col) for c in a],
                                 [by_country[c].score(col) for c in b])
    mats = [np.array([[by_country[c].score(col) for col in SUBSECTIONS] for c in members])
            for members in (a, b)]
    return ManovaResult(variables, len(a), len(b), _wilks(mats), groups.method, groups.cutline)


@dataclass(frozen=True)
class LeveneResult:
    W: float
    p: float


def levene(group_a: Sequence[float], group_b: Sequence[float]) -> LeveneResult:
    """Levene's test on absolute deviations from each group's mean."""
    gs = [_floats(group_a), _floats(group_b)]
    for g in gs:
        if len(g) < 2:
            raise ValueError("each group needs at least two values")
    z = []
    for g in gs:
        m = _mean(g)
        z.append([abs(v - m) for v in g])
    res = anova_oneway(*z)
    return LeveneResult(res.F, res.p)


def qq_data(values: Iterable[float]) -> list[tuple[float, float]]:
    """Normal Q-Q coordinates: (theoretical quantile, sorted sample value).

    Theoretical quantiles sit at plotting positions ``(i - 0.5) / n``.
    """
    xs = sorted(_floats(values))
    n = len(xs)
    if n < 3:
        raise ValueError(f"Q-Q data needs n >= 3, got {n}")
    if xs[0] == xs[-1]:
        raise DegenerateInputError("Q-Q data is degenerate for a constant sample")
    return [(normal_ppf((i - 0.5) / n), x) for i, x in enumerate(xs, 1)]
