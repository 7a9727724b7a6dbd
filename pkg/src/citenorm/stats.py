"""Nonparametric significance tests and small regression/correlation helpers.

Ranks are mid-ranks throughout. Exact null distributions are built by
dynamic programming over *doubled* mid-ranks, which are integers even when
ties produce half ranks, so exact tail probabilities need no float fuzz.

Tail functions of the chi-square, normal and t distributions come from
:mod:`scipy.stats`; everything else is computed here.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy import stats as _dist

from .errors import (
    ConstantInput,
    EmptyGroup,
    EmptyReference,
    LengthMismatch,
    TooFewGroups,
    TooFewObservations,
)

DEFAULT_ALPHA = 0.05

SIGNED_RANK_EXACT_MAX_N = 20
MANN_WHITNEY_EXACT_MAX_MIN_N = 10
MANN_WHITNEY_EXACT_MAX_TOTAL = 20
KRUSKAL_EXACT_MAX_ASSIGNMENTS = 500_000


class TestName(enum.Enum):
    __test__ = False  # keep pytest from collecting this enum

    KRUSKAL_WALLIS = "KruskalWallis"
    WILCOXON_SIGNED_RANK = "WilcoxonSignedRank"
    MANN_WHITNEY_U = "MannWhitneyU"
    PEARSON_R = "PearsonR"
    SPEARMAN_RHO = "SpearmanRho"


@dataclass(frozen=True)
class Bonferroni:
    m: int

    def adjust(self, p: float) -> float:
        return bonferroni_adjust(p, self.m)


@dataclass(frozen=True)
class StatTestResult:
    test_name: TestName
    statistic: float
    p_value: float
    significant: bool
    alpha: float = DEFAULT_ALPHA
    df: Optional[int] = None
    correction: Optional[Bonferroni] = None
    raw_p_value: Optional[float] = None
    method: str = "asymptotic"
    n: Optional[int] = None
    degenerate: bool = False
    label: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "test_name": self.test_name.value,
            "label": self.label,
            "statistic": self.statistic,
            "df": self.df,
            "p_value": self.p_value,
            "raw_p_value": self.raw_p_value,
            "correction": (None if self.correction is None
                           else {"name": "Bonferroni", "m": self.correction.m}),
            "alpha": self.alpha,
            "significant": self.significant,
            "method": self.method,
            "n": self.n,
            "degenerate": self.degenerate,
        }


@dataclass(frozen=True)
class RegressionFit:
    slope: float
    intercept: float
    r: float
    n: int

    def predict(self, x):
        return self.intercept + self.slope * np.asarray(x, dtype=float)


# ---------------------------------------------------------------------------
# ranking helpers

def _doubled_midranks(values) -> np.ndarray:
    """Twice the 1-based mid-ranks, as integers."""
    values = np.asarray(values, dtype=float)
    order = np.argsort(values, kind="mergesort")
    sorted_vals = values[order]
    out = np.empty(values.size, dtype=np.int64)
    i = 0
    n = values.size
    while i < n:
        j = i
        while j + 1 < n and sorted_vals[j + 1] == sorted_vals[i]:
            j += 1
        # positions i..j (0-based) share rank ((i+1) + (j+1)) / 2
        out[order[i:j + 1]] = i + j + 2
        i = j + 1
    return out


def midranks(values) -> np.ndarray:
    """Mid-ranks (average rank for ties), 1-based."""
    return _doubled_midranks(values) / 2.0


def tie_counts(values) -> np.ndarray:
    _, counts = np.unique(np.asarray(values, dtype=float), return_counts=True)
    return counts


def _tie_sum(values) -> float:
    t = tie_counts(values).astype(float)
    return float(np.sum(t ** 3 - t))


def _two_sided(p_low: float, p_high: float) -> float:
    return min(1.0, 2.0 * min(p_low, p_high))


def bonferroni_adjust(p: float, m: int) -> float:
    """``min(1, m * p)``."""
    if m < 1:
        raise ValueError("number of comparisons must be >= 1")
    return min(1.0, m * p)


# ---------------------------------------------------------------------------
# Kruskal-Wallis

def _validate_groups(groups):
    groups = [np.asarray(g, dtype=float).ravel() for g in groups]
    if len(groups) < 2:
        raise TooFewGroups(f"need at least 2 groups, got {len(groups)}")
    for i, g in enumerate(groups):
        if g.size == 0:
            raise EmptyGroup(f"group {i} is empty")
    return groups


def kruskal_h(groups) -> float:
    """Tie-corrected Kruskal-Wallis H; 0 when every pooled value is equal."""
    groups = _validate_groups(groups)
    pooled = np.concatenate(groups)
    n_total = pooled.size
    ranks = midranks(pooled)
    h = 0.0
    start = 0
    for g in groups:
        r = ranks[start:start + g.size].sum()
        h += r * r / g.size
        start += g.size
    h = 12.0 / (n_total * (n_total + 1)) * h - 3.0 * (n_total + 1)
    correction = 1.0 - _tie_sum(pooled) / (n_total ** 3 - n_total)
    if correction <= 0:
        return 0.0
    return float(max(h / correction, 0.0))


def _kruskal_exact_p(groups, h_obs: float) -> float:
    sizes = [g.size for g in groups]
    n_total = sum(sizes)
    n_assign = math.factorial(n_total)
    for s in sizes:
        n_assign //= math.factorial(s)
    if n_assign > KRUSKAL_EXACT_MAX_ASSIGNMENTS:
        raise ValueError(f"exact Kruskal-Wallis needs {n_assign} assignments; "
                         f"limit is {KRUSKAL_EXACT_MAX_ASSIGNMENTS}")
    pooled = np.concatenate(groups)
    doubled = _doubled_midranks(pooled)
    correction = 1.0 - _tie_sum(pooled) / (n_total ** 3 - n_total)
    if correction <= 0:
        return 1.0
    scale = 12.0 / (n_total * (n_total + 1)) / 4.0  # ranks are doubled
    offset = 3.0 * (n_total + 1)
    tol = 1e-9 * max(1.0, h_obs)

    hits = 0
    total = 0

    def walk(remaining, k, acc):
        nonlocal hits, total
        if k == len(sizes) - 1:
            r = int(doubled[list(remaining)].sum())
            h = ((acc + r * r / sizes[k]) * scale - offset) / correction
            total += 1
            if h >= h_obs - tol:
                hits += 1
            return
        for combo in itertools.combinations(remaining, sizes[k]):
            r = int(doubled[list(combo)].sum())
            rest = tuple(i for i in remaining if i not in combo)
            walk(rest, k + 1, acc + r * r / sizes[k])

    walk(tuple(range(n_total)), 0, 0.0)
    return hits / total


def kruskal_wallis(groups: Sequence[Sequence[float]], alpha: float = DEFAULT_ALPHA,
                   exact: bool = False) -> StatTestResult:
    """Kruskal-Wallis H test across ``k >= 2`` groups.

    The p-value is the chi-square approximation with ``k - 1`` degrees of
    freedom. With ``exact=True`` it is instead the permutation probability
    of an H at least as large, enumerated over all distinct assignments of
    the pooled values to groups of the observed sizes (small N only).
    """
    groups = _validate_groups(groups)
    n_total = sum(g.size for g in groups)
    if n_total < 3:
        raise TooFewObservations(f"need at least 3 observations in total, got {n_total}")
    h = kruskal_h(groups)
    df = len(groups) - 1
    if exact:
        p = _kruskal_exact_p(groups, h)
        method = "exact"
    else:
        p = 1.0 if h == 0 else float(_dist.chi2.sf(h, df))
        method = "asymptotic"
    return StatTestResult(TestName.KRUSKAL_WALLIS, h, p, p < alpha, alpha, df=df,
                          raw_p_value=p, method=method, n=n_total)


# ---------------------------------------------------------------------------
# Wilcoxon signed-rank

def _subset_sum_counts(weights) -> np.ndarray:
    """counts[s] = number of subsets of ``weights`` with sum s."""
    total = int(np.sum(weights))
    counts = np.zeros(total + 1, dtype=float)
    counts[0] = 1.0
    for w in weights:
        w = int(w)
        if w:
            counts[w:] = counts[w:] + counts[:-w].copy()
        else:
            counts *= 2.0
    return counts


def signed_rank_exact_p(doubled_ranks, w_plus_doubled: int) -> float:
    """Two-sided exact p of the signed-rank statistic from doubled ranks."""
    counts = _subset_sum_counts(doubled_ranks)
    denom = counts.sum()
    p_low = counts[:w_plus_doubled + 1].sum() / denom
    p_high = counts[w_plus_doubled:].sum() / denom
    return _two_sided(p_low, p_high)


def test_against_unity(ratios: Sequence[float], alpha: float = DEFAULT_ALPHA,
                       reference: float = 1.0) -> StatTestResult:
    """Wilcoxon signed-rank test of ``ratios`` against location ``reference``.

    Zero differences are dropped. For ``n <= 20`` remaining differences the
    exact two-sided p is used, otherwise the tie-corrected normal
    approximation with continuity correction. The reported statistic is
    the sum of ranks of the positive differences (W+).

    When every difference is zero the result is flagged ``degenerate`` with
    p = 1.0.
    """
    x = np.asarray(ratios, dtype=float).ravel()
    if x.size == 0:
        raise TooFewObservations("need at least one ratio")
    d = x - reference
    d = d[d != 0]
    n = d.size
    if n == 0:
        return StatTestResult(TestName.WILCOXON_SIGNED_RANK, 0.0, 1.0, False, alpha,
                              raw_p_value=1.0, method="degenerate", n=0, degenerate=True)
    doubled = _doubled_midranks(np.abs(d))
    w2 = int(doubled[d > 0].sum())
    w_plus = w2 / 2.0
    if n <= SIGNED_RANK_EXACT_MAX_N:
        p = signed_rank_exact_p(doubled, w2)
        method = "exact"
    else:
        mean = n * (n + 1) / 4.0
        var = n * (n + 1) * (2 * n + 1) / 24.0 - _tie_sum(np.abs(d)) / 48.0
        z = max(abs(w_plus - mean) - 0.5, 0.0) / math.sqrt(var)
        p = min(1.0, 2.0 * float(_dist.norm.sf(z)))
        method = "asymptotic"
    return StatTestResult(TestName.WILCOXON_SIGNED_RANK, w_plus, p, p < alpha, alpha,
                          raw_p_value=p, method=method, n=n)


test_against_unity.__test__ = False  # not a pytest test despite the name


# ---------------------------------------------------------------------------
# Mann-Whitney U

def _rank_sum_counts(doubled_ranks, n1: int) -> np.ndarray:
    """counts[s] = number of n1-subsets whose doubled ranks sum to s."""
    total = int(np.sum(doubled_ranks))
    table = np.zeros((n1 + 1, total + 1), dtype=float)
    table[0, 0] = 1.0
    for w in doubled_ranks:
        w = int(w)
        for k in range(n1, 0, -1):
            table[k, w:] += table[k - 1, :total + 1 - w]
    return table[n1]


def mann_whitney_exact_p(x, y) -> float:
    """Two-sided exact (conditional on ties) p of the rank-sum of ``x``."""
    x = np.asarray(x, dtype=float)
    pooled = np.concatenate([x, np.asarray(y, dtype=float)])
    doubled = _doubled_midranks(pooled)
    r_obs = int(doubled[:x.size].sum())
    counts = _rank_sum_counts(doubled, x.size)
    denom = counts.sum()
    p_low = counts[:r_obs + 1].sum() / denom
    p_high = counts[r_obs:].sum() / denom
    return _two_sided(p_low, p_high)


def mann_whitney(x: Sequence[float], y: Sequence[float],
                 alpha: float = DEFAULT_ALPHA) -> StatTestResult:
    """Two-sided Mann-Whitney U test; statistic is U of the first sample.

    Exact when ``min(n1, n2) <= 10`` and ``n1 + n2 <= 20``; otherwise the
    tie-corrected normal approximation with continuity correction.
    """
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.size == 0 or y.size == 0:
        raise EmptyGroup("Mann-Whitney needs two non-empty samples")
    n1, n2 = x.size, y.size
    pooled = np.concatenate([x, y])
    ranks = midranks(pooled)
    u1 = float(ranks[:n1].sum() - n1 * (n1 + 1) / 2.0)
    if min(n1, n2) <= MANN_WHITNEY_EXACT_MAX_MIN_N and n1 + n2 <= MANN_WHITNEY_EXACT_MAX_TOTAL:
        p = mann_whitney_exact_p(x, y)
        method = "exact"
    else:
        n = n1 + n2
        var = n1 * n2 / 12.0 * ((n + 1) - _tie_sum(pooled) / (n * (n - 1)))
        if var <= 0:
            p = 1.0
        else:
            z = max(abs(u1 - n1 * n2 / 2.0) - 0.5, 0.0) / math.sqrt(var)
            p = min(1.0, 2.0 * float(_dist.norm.sf(z)))
        method = "asymptotic"
    return StatTestResult(TestName.MANN_WHITNEY_U, u1, p, p < alpha, alpha,
                          raw_p_value=p, method=method, n=n1 + n2)


def pairwise_posthoc(groups: Sequence[Sequence[float]], alpha: float = DEFAULT_ALPHA,
                     labels: Optional[Sequence[str]] = None) -> list:
    """Mann-Whitney U for every pair of groups with Bonferroni correction.

    Returns a k x k nested list; entry ``[i][j]`` (i != j) holds the result
    for the pair, ``[i][i]`` is ``None``. The correction factor is
    ``m = k (k - 1) / 2``.
    """
    groups = _validate_groups(groups)
    k = len(groups)
    if labels is None:
        labels = [str(i) for i in range(k)]
    m = k * (k - 1) // 2
    correction = Bonferroni(m)
    matrix = [[None] * k for _ in range(k)]
    for i, j in itertools.combinations(range(k), 2):
        raw = mann_whitney(groups[i], groups[j], alpha)
        adjusted = correction.adjust(raw.p_value)
        result = StatTestResult(
            TestName.MANN_WHITNEY_U, raw.statistic, adjusted, adjusted < alpha, alpha,
            correction=correction, raw_p_value=raw.p_value, method=raw.method,
            n=raw.n, label=f"{labels[i]} vs {labels[j]}")
        matrix[i][j] = matrix[j][i] = result
    return matrix


# ---------------------------------------------------------------------------
# correlation and regression

def _paired(x, y, min_n: int):
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.size != y.size:
        raise LengthMismatch(f"lengths differ: {x.size} vs {y.size}")
    if x.size < min_n:
        raise TooFewObservations(f"need at least {min_n} pairs, got {x.size}")
    return x, y


def _correlation(x, y, name: TestName, alpha: float) -> StatTestResult:
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0 or syy == 0:
        raise ConstantInput("correlation is undefined for a constant input")
    r = float(np.clip((dx @ dy) / math.sqrt(sxx * syy), -1.0, 1.0))
    n = x.size
    df = n - 2
    if abs(r) == 1.0:
        p = 0.0
    else:
        t = r * math.sqrt(df / (1.0 - r * r))
        p = min(1.0, 2.0 * float(_dist.t.sf(abs(t), df)))
    return StatTestResult(name, r, p, p < alpha, alpha, df=df, raw_p_value=p, n=n)


def pearson(x: Sequence[float], y: Sequence[float], alpha: float = DEFAULT_ALPHA) -> StatTestResult:
    """Pearson r with a two-sided p from the t transformation (df = n - 2)."""
    x, y = _paired(x, y, 3)
    return _correlation(x, y, TestName.PEARSON_R, alpha)


def spearman(x: Sequence[float], y: Sequence[float], alpha: float = DEFAULT_ALPHA) -> StatTestResult:
    """Spearman rho: Pearson r on mid-ranks, same p-value construction."""
    x, y = _paired(x, y, 3)
    if np.all(x == x[0]) or np.all(y == y[0]):
        raise ConstantInput("correlation is undefined for a constant input")
    return _correlation(midranks(x), midranks(y), TestName.SPEARMAN_RHO, alpha)


def ols_fit(x: Sequence[float], y: Sequence[float]) -> RegressionFit:
    """Least-squares line ``y = intercept + slope * x``.

    ``r`` is the Pearson correlation of the points, taken as 0 when ``y``
    is constant.
    """
    x, y = _paired(x, y, 2)
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    if sxx == 0:
        raise ConstantInput("x is constant; slope is undefined")
    sxy = float(dx @ dy)
    syy = float(dy @ dy)
    slope = sxy / sxx
    intercept = float(y.mean() - slope * x.mean())
    r = 0.0 if syy == 0 else float(np.clip(sxy / math.sqrt(sxx * syy), -1.0, 1.0))
    return RegressionFit(slope, intercept, r, int(x.size))


def percentile_rank(value: float, reference: Sequence[float]) -> float:
    """Mid-distribution percentile: ``100 * (below + 0.5 * equal) / N``."""
    ref = np.asarray(reference, dtype=float).ravel()
    if ref.size == 0:
        raise EmptyReference("reference distribution is empty")
    below = np.count_nonzero(ref < value)
    equal = np.count_nonzero(ref == value)
    return 100.0 * (below + 0.5 * equal) / ref.size
