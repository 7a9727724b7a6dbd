"""Ranking of evaluated units and comparison of two indicators' rankings."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .errors import MissingIndicator, NonPositiveBaseline, TooFewUnits
from .indicators import IndicatorReport
from .stats import DEFAULT_ALPHA, RegressionFit, StatTestResult, ols_fit, pearson, spearman

Selector = Union[str, Callable[[IndicatorReport], Optional[float]]]


@dataclass(frozen=True)
class RankingEntry:
    unit_id: str
    indicator_value: float
    rank: int
    p: int


@dataclass(frozen=True)
class ComparisonEntry:
    unit_id: str
    value_a: float
    value_b: float
    rank_a: int
    rank_b: int
    relative_difference: float


@dataclass(frozen=True)
class RankingComparison:
    indicator_a: str
    indicator_b: str
    entries: tuple
    pearson: StatTestResult
    spearman: StatTestResult
    regression: RegressionFit

    @property
    def pearson_r(self) -> float:
        return self.pearson.statistic

    @property
    def spearman_rho(self) -> float:
        return self.spearman.statistic

    def to_dict(self) -> dict:
        return {
            "indicator_a": self.indicator_a,
            "indicator_b": self.indicator_b,
            "entries": [vars(e).copy() for e in self.entries],
            "pearson": self.pearson.to_dict(),
            "spearman": self.spearman.to_dict(),
            "regression": vars(self.regression).copy(),
        }


def _selector_name(indicator: Selector) -> str:
    return indicator if isinstance(indicator, str) else getattr(indicator, "__name__", "custom")


def _select(report: IndicatorReport, indicator: Selector) -> float:
    try:
        value = indicator(report) if callable(indicator) else report.indicator(indicator)
    except AttributeError:
        raise MissingIndicator(f"unknown indicator {indicator!r}") from None
    if value is None:
        raise MissingIndicator(
            f"indicator {_selector_name(indicator)!r} not available for unit {report.unit_id}")
    return float(value)


def competition_ranks(values: Sequence[float]) -> list:
    """Descending "1224" ranks: tied values share the smallest rank."""
    values = list(values)
    order = sorted(range(len(values)), key=lambda i: -values[i])
    ranks = [0] * len(values)
    for pos, i in enumerate(order):
        if pos > 0 and values[i] == values[order[pos - 1]]:
            ranks[i] = ranks[order[pos - 1]]
        else:
            ranks[i] = pos + 1
    return ranks


def rank_units(reports: Sequence[IndicatorReport], indicator: Selector = "mor") -> list:
    """Rank units by an indicator, best (highest) first.

    ``indicator`` is an :class:`IndicatorReport` field name (``"rom"`` and
    ``"mor"`` are shortcuts for the journal basis) or a callable taking a
    report. Ties share the smallest rank; tied units are listed by unit_id.
    """
    if not reports:
        raise TooFewUnits("nothing to rank")
    values = [_select(r, indicator) for r in reports]
    ranks = competition_ranks(values)
    entries = [RankingEntry(r.unit_id, v, k, r.p) for r, v, k in zip(reports, values, ranks)]
    return sorted(entries, key=lambda e: (e.rank, e.unit_id))


def relative_difference(rom: float, mor: float) -> float:
    """Signed deviation of ``mor`` from the ratio-of-means baseline, as a fraction."""
    if not rom > 0:
        raise NonPositiveBaseline(f"baseline must be > 0, got {rom}")
    return (mor - rom) / rom


def compare_values(unit_ids: Sequence[str], values_a: Sequence[float], values_b: Sequence[float],
                   indicator_a: str = "rom", indicator_b: str = "mor",
                   alpha: float = DEFAULT_ALPHA) -> RankingComparison:
    """Compare two indicator series given directly as numbers.

    Ranks both series, correlates them (Pearson and Spearman) and regresses
    the relative difference ``(b - a) / a`` on ``a``.
    """
    values_a = [float(v) for v in values_a]
    values_b = [float(v) for v in values_b]
    if not (len(unit_ids) == len(values_a) == len(values_b)):
        raise ValueError("unit_ids and value series must have equal length")
    if len(unit_ids) < 3:
        raise TooFewUnits(f"need at least 3 units to correlate rankings, got {len(unit_ids)}")
    ranks_a = competition_ranks(values_a)
    ranks_b = competition_ranks(values_b)
    rel = [relative_difference(a, b) for a, b in zip(values_a, values_b)]
    entries = tuple(sorted(
        (ComparisonEntry(u, a, b, ra, rb, d)
         for u, a, b, ra, rb, d in zip(unit_ids, values_a, values_b, ranks_a, ranks_b, rel)),
        key=lambda e: (e.rank_a, e.unit_id)))
    return RankingComparison(
        indicator_a=indicator_a,
        indicator_b=indicator_b,
        entries=entries,
        pearson=pearson(values_a, values_b, alpha),
        spearman=spearman(values_a, values_b, alpha),
        regression=ols_fit(np.asarray(values_a), np.asarray(rel)),
    )


def compare_rankings(reports: Sequence[IndicatorReport], indicator_a: Selector = "rom",
                     indicator_b: Selector = "mor", alpha: float = DEFAULT_ALPHA) -> RankingComparison:
    if len(reports) < 3:
        raise TooFewUnits(f"need at least 3 units to correlate rankings, got {len(reports)}")
    return compare_values(
        [r.unit_id for r in reports],
        [_select(r, indicator_a) for r in reports],
        [_select(r, indicator_b) for r in reports],
        _selector_name(indicator_a), _selector_name(indicator_b), alpha)
