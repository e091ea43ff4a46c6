"""Level statistics: per-level means, standardized regression, one-way ANOVA."""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CollinearityError, InsufficientDataError, InsufficientGroupError
from .norms import VARIABLES, LeveledObservations
from .special import f_sf, t_two_sided_p


def stars(p: float) -> str:
    if p < 0.001:
        return "***"
    if p < 0.01:
        return "**"
    if p < 0.05:
        return "*"
    return ""


# --- means -----------------------------------------------------------------


@dataclass(frozen=True)
class LevelMean:
    level: int
    variable: str
    mean: float | None  # None when no record at this level has the variable
    n: int


def level_means(obs: LeveledObservations, variables=VARIABLES) -> list[LevelMean]:
    if not obs.records:
        raise InsufficientDataError("no observations")
    out = []
    for level in obs.levels():
        at_level = [r for r in obs.records if r.level == level]
        for v in variables:
            xs = [r.values.get(v) for r in at_level if r.values.get(v) is not None]
            out.append(LevelMean(level, v, math.fsum(xs) / len(xs) if xs else None, len(xs)))
    return out


def means_csv(rows: list[LevelMean]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["level", "variable", "mean", "n"])
    for r in rows:
        w.writerow([r.level, r.variable, "" if r.mean is None else repr(r.mean), r.n])
    return buf.getvalue()


# --- regression ----------------------------------------------------------


@dataclass(frozen=True)
class Coefficient:
    beta: float
    se: float
    t: float
    p: float

    @property
    def stars(self) -> str:
        return stars(self.p)


@dataclass(frozen=True)
class RegressionResult:
    coefficients: dict  # predictor -> Coefficient
    r_squared: float
    n: int
    df_resid: int
    levels: tuple = field(default=())

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "df_resid": self.df_resid,
            "r_squared": self.r_squared,
            "levels": list(self.levels),
            "coefficients": {
                k: {"beta": c.beta, "se": c.se, "t": c.t, "p": c.p, "stars": c.stars}
                for k, c in self.coefficients.items()
            },
        }


def _zscore(x: np.ndarray) -> np.ndarray:
    return (x - x.mean()) / x.std(ddof=1)


def _dependent_columns(z: np.ndarray, names) -> list[str]:
    dependent = []
    rank = 0
    kept = []
    for j, name in enumerate(names):
        trial = np.column_stack(kept + [z[:, j]])
        r = np.linalg.matrix_rank(trial)
        if r > rank:
            kept.append(z[:, j])
            rank = r
        else:
            dependent.append(name)
    return dependent


def ols_standardized(y, x, names) -> RegressionResult:
    """OLS of z(y) on z-scored columns of x (with intercept), via QR."""
    y = np.asarray(y, dtype=float)
    x = np.asarray(x, dtype=float)
    n, k = x.shape
    if n <= k + 1:
        raise InsufficientDataError(f"need more than {k + 1} complete records, have {n}")
    sd = x.std(axis=0, ddof=1)
    constant = [name for name, s in zip(names, sd) if s == 0]
    if constant:
        raise CollinearityError(constant)
    if y.std(ddof=1) == 0:
        raise InsufficientDataError("dependent variable is constant")
    z = (x - x.mean(axis=0)) / sd
    zy = _zscore(y)
    if np.linalg.matrix_rank(z) < k:
        raise CollinearityError(_dependent_columns(z, names))

    design = np.column_stack([np.ones(n), z])
    q, r = np.linalg.qr(design)
    coef = np.linalg.solve(r, q.T @ zy)
    resid = zy - design @ coef
    df = n - k - 1
    rss = float(resid @ resid)
    sigma2 = rss / df
    r_inv = np.linalg.inv(r)
    se = np.sqrt(sigma2 * np.sum(r_inv**2, axis=1))
    with np.errstate(divide="ignore", invalid="ignore"):
        t = coef / se
    tss = float(zy @ zy)
    coefficients = {
        name: Coefficient(float(coef[j + 1]), float(se[j + 1]), float(t[j + 1]), t_two_sided_p(float(t[j + 1]), df))
        for j, name in enumerate(names)
    }
    return RegressionResult(coefficients, 1.0 - rss / tss, n, df)


LEVEL_SCALES = ("interval", "ordinal")


def mid_ranks(values) -> list[float]:
    """1-based ranks, ties sharing the mean of the positions they occupy."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        for k in range(i, j + 1):
            ranks[order[k]] = (i + j) / 2 + 1
        i = j + 1
    return ranks


def regress(
    obs: LeveledObservations,
    exclude_levels=(),
    level_range=None,
    variables=VARIABLES,
    level_scale: str = "interval",
) -> RegressionResult:
    """Level (dependent) on the norm variables, complete cases only.

    ``level_scale="ordinal"`` regresses on the mid-ranks of the level
    instead of its value, so only the order of levels matters.
    """
    if level_scale not in LEVEL_SCALES:
        raise ValueError(f"unknown level scale {level_scale!r}")
    obs = obs.restrict(exclude_levels, level_range)
    rows = [r for r in obs.records if all(r.values.get(v) is not None for v in variables)]
    levels = [r.level for r in rows]
    y = mid_ranks(levels) if level_scale == "ordinal" else levels
    x = [[r.values.get(v) for v in variables] for r in rows]
    if len(rows) <= len(variables) + 1:
        raise InsufficientDataError(
            f"need more than {len(variables) + 1} complete records, have {len(rows)}"
        )
    res = ols_standardized(y, x, list(variables))
    return RegressionResult(
        res.coefficients, res.r_squared, res.n, res.df_resid, tuple(sorted(set(levels)))
    )


def regression_csv(res: RegressionResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["predictor", "beta", "t", "p", "stars"])
    for name, c in res.coefficients.items():
        w.writerow([name, repr(c.beta), repr(c.t), repr(c.p), c.stars])
    return buf.getvalue()


# --- ANOVA ----------------------------------------------------------------


@dataclass(frozen=True)
class AnovaResult:
    variable: str
    f: float
    df_between: int
    df_within: int
    p: float
    groups: tuple  # of (level, n, mean)
    posthoc: dict  # (level_a, level_b) -> Bonferroni-corrected p

    def as_dict(self) -> dict:
        return {
            "variable": self.variable,
            "F": self.f,
            "df_between": self.df_between,
            "df_within": self.df_within,
            "p": self.p,
            "stars": stars(self.p),
            "groups": [{"level": l, "n": n, "mean": m} for l, n, m in self.groups],
            "posthoc": [
                {"a": a, "b": b, "p_bonferroni": p} for (a, b), p in sorted(self.posthoc.items())
            ],
        }


def _pooled_t_p(a: list[float], b: list[float]) -> float:
    na, nb = len(a), len(b)
    ma, mb = math.fsum(a) / na, math.fsum(b) / nb
    ssa = math.fsum((x - ma) ** 2 for x in a)
    ssb = math.fsum((x - mb) ** 2 for x in b)
    df = na + nb - 2
    pooled = (ssa + ssb) / df
    if pooled == 0:
        return 1.0 if ma == mb else 0.0
    t = (ma - mb) / math.sqrt(pooled * (1 / na + 1 / nb))
    return t_two_sided_p(t, df)


def one_way_anova(groups: dict) -> tuple[float, int, int, float]:
    """F, df_between, df_within and p for ``{label: values}``."""
    if len(groups) < 2:
        raise InsufficientGroupError("ANOVA needs at least two groups")
    small = [g for g, xs in groups.items() if len(xs) < 2]
    if small:
        raise InsufficientGroupError(f"groups with fewer than 2 records: {small}")
    all_x = [x for xs in groups.values() for x in xs]
    grand = math.fsum(all_x) / len(all_x)
    ss_between = math.fsum(len(xs) * (math.fsum(xs) / len(xs) - grand) ** 2 for xs in groups.values())
    ss_within = math.fsum(
        (x - math.fsum(xs) / len(xs)) ** 2 for xs in groups.values() for x in xs
    )
    df_b = len(groups) - 1
    df_w = len(all_x) - len(groups)
    if ss_between == 0:
        return 0.0, df_b, df_w, 1.0
    if ss_within == 0:
        return math.inf, df_b, df_w, 0.0
    f = (ss_between / df_b) / (ss_within / df_w)
    return f, df_b, df_w, f_sf(f, df_b, df_w)


POSTHOC_METHODS = ("bonferroni", "none")


def anova(
    obs: LeveledObservations, variable: str, exclude_levels=(), posthoc: str = "bonferroni"
) -> AnovaResult:
    """One-way ANOVA of a variable across levels, Bonferroni pairwise t-tests.

    ``posthoc="none"`` skips the pairwise tests.
    """
    if posthoc not in POSTHOC_METHODS:
        raise ValueError(f"unknown post-hoc method {posthoc!r}")
    obs = obs.restrict(exclude_levels)
    groups: dict[int, list[float]] = {}
    for r in obs.records:
        x = r.values.get(variable)
        if x is not None:
            groups.setdefault(r.level, []).append(x)
    groups = dict(sorted(groups.items()))
    f, df_b, df_w, p = one_way_anova(groups)
    pairs = list(itertools.combinations(groups, 2)) if posthoc == "bonferroni" else []
    pairwise = {
        (a, b): min(1.0, _pooled_t_p(groups[a], groups[b]) * len(pairs)) for a, b in pairs
    }
    summary = tuple((lvl, len(xs), math.fsum(xs) / len(xs)) for lvl, xs in groups.items())
    return AnovaResult(variable, f, df_b, df_w, p, summary, pairwise)


# --- correlations -----------------------------------------------------------


def correlations(obs: LeveledObservations, variables=VARIABLES) -> dict:
    """Pairwise-complete Pearson r between level and every variable."""
    names = ("level",) + tuple(variables)

    def column(name, r):
        return float(r.level) if name == "level" else r.values.get(name)

    out = {}
    for a, b in itertools.combinations(names, 2):
        pairs = [
            (column(a, r), column(b, r))
            for r in obs.records
            if column(a, r) is not None and column(b, r) is not None
        ]
        if len(pairs) < 3:
            out[(a, b)] = None
            continue
        xs = np.array(pairs)
        if xs[:, 0].std() == 0 or xs[:, 1].std() == 0:
            out[(a, b)] = None
            continue
        out[(a, b)] = float(np.corrcoef(xs[:, 0], xs[:, 1])[0, 1])
    return out
