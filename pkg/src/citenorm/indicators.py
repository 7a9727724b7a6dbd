"""Citation-impact indicators.

Two normalization families are computed side by side:

* ratio of means (the CWTS "crown indicator" style), ``CPP / JCSm`` or
  ``CPP / FCSm``, i.e. total observed over total expected citations;
* mean of ratios, the average of per-paper ``C / JCS`` (or ``C / FCS``)
  values, reported with its standard error.

Everything is computed in double precision; rounding belongs to display code.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .errors import EmptySet, MissingFieldRate
from .model import EvaluationSet, SelfCitationMode, effective_citations

BORDERLINE = 0.80
WORLD_AVERAGE = 1.00


class NormalizationBasis(enum.Enum):
    JOURNAL = "journal"
    FIELD = "field"


class PerformanceFlag(enum.Enum):
    BELOW_BORDERLINE = "BelowBorderline"
    WITHIN_BAND = "WithinBand"
    ABOVE_WORLD_AVERAGE = "AboveWorldAverage"


def _require_records(evaluation_set: EvaluationSet):
    if len(evaluation_set.records) == 0:
        raise EmptySet(f"unit {evaluation_set.unit_id}: no publications")
    return evaluation_set.records


def _observed(evaluation_set, mode) -> np.ndarray:
    records = _require_records(evaluation_set)
    return np.array([effective_citations(r, mode) for r in records], dtype=float)


def expected_rates(evaluation_set: EvaluationSet, basis: NormalizationBasis) -> np.ndarray:
    """Per-paper expected citation rates (JCS or FCS) as an array."""
    records = _require_records(evaluation_set)
    if basis is NormalizationBasis.JOURNAL:
        return np.array([r.jcs for r in records], dtype=float)
    missing = [r.id for r in records if r.fcs is None]
    if missing:
        raise MissingFieldRate(
            f"unit {evaluation_set.unit_id}: no FCS for record(s) {', '.join(missing[:5])}"
            + (" ..." if len(missing) > 5 else ""))
    return np.array([r.fcs for r in records], dtype=float)


def cpp(evaluation_set: EvaluationSet, mode: SelfCitationMode = SelfCitationMode.INCLUDE) -> float:
    """Citations per publication."""
    return float(np.mean(_observed(evaluation_set, mode)))


def jcsm(evaluation_set: EvaluationSet) -> float:
    """Mean journal citation score over the set's publications.

    Each paper carries the JCS of its own journal, so the plain mean equals
    the publication-count-weighted journal average.
    """
    return float(np.mean(expected_rates(evaluation_set, NormalizationBasis.JOURNAL)))


def fcsm(evaluation_set: EvaluationSet) -> float:
    """Mean field citation score; requires ``fcs`` on every record."""
    return float(np.mean(expected_rates(evaluation_set, NormalizationBasis.FIELD)))


def ratio_of_means(evaluation_set: EvaluationSet,
                   basis: NormalizationBasis = NormalizationBasis.JOURNAL,
                   mode: SelfCitationMode = SelfCitationMode.INCLUDE) -> float:
    """``sum(C) / sum(E)``, identical to ``CPP / JCSm`` (or ``CPP / FCSm``)."""
    expected = expected_rates(evaluation_set, basis)
    observed = _observed(evaluation_set, mode)
    return float(observed.sum() / expected.sum())


def per_paper_ratios(evaluation_set: EvaluationSet,
                     basis: NormalizationBasis = NormalizationBasis.JOURNAL,
                     mode: SelfCitationMode = SelfCitationMode.INCLUDE) -> list:
    expected = expected_rates(evaluation_set, basis)
    observed = _observed(evaluation_set, mode)
    return (observed / expected).tolist()


def standard_error(values) -> Optional[float]:
    """Sample standard deviation (ddof=1) over sqrt(n); ``None`` for n == 1."""
    values = np.asarray(values, dtype=float)
    n = values.size
    if n == 0:
        raise EmptySet("standard error of an empty sample")
    if n == 1:
        return None
    return float(np.std(values, ddof=1) / math.sqrt(n))


def mean_of_ratios(evaluation_set: EvaluationSet,
                   basis: NormalizationBasis = NormalizationBasis.JOURNAL,
                   mode: SelfCitationMode = SelfCitationMode.INCLUDE):
    """Mean of the per-paper ratios and its standard error.

    Returns
    -------
    mean : float
    sem : float or None
        ``None`` when the set holds a single publication.
    """
    ratios = np.asarray(per_paper_ratios(evaluation_set, basis, mode))
    return float(ratios.mean()), standard_error(ratios)


def performance_flag(value: float) -> PerformanceFlag:
    # Both thresholds belong to the middle band.
    if value < BORDERLINE:
        return PerformanceFlag.BELOW_BORDERLINE
    if value > WORLD_AVERAGE:
        return PerformanceFlag.ABOVE_WORLD_AVERAGE
    return PerformanceFlag.WITHIN_BAND


@dataclass(frozen=True)
class IndicatorReport:
    unit_id: str
    p: int
    c: int
    cpp: float
    jcsm: float
    rom_journal: float
    mor_journal: float
    sem_journal: Optional[float]
    self_citation_mode: SelfCitationMode
    performance_flag: PerformanceFlag
    fcsm: Optional[float] = None
    rom_field: Optional[float] = None
    mor_field: Optional[float] = None
    sem_field: Optional[float] = None
    per_paper_ratios: dict = field(default_factory=dict)

    def indicator(self, name: str) -> Optional[float]:
        """Look up an indicator by name (``rom``/``mor`` mean the journal basis)."""
        aliases = {"rom": "rom_journal", "mor": "mor_journal"}
        return getattr(self, aliases.get(name, name))

    def to_dict(self) -> dict:
        return {
            "unit_id": self.unit_id,
            "p": self.p,
            "c": self.c,
            "cpp": self.cpp,
            "jcsm": self.jcsm,
            "fcsm": self.fcsm,
            "rom_journal": self.rom_journal,
            "rom_field": self.rom_field,
            "mor_journal": self.mor_journal,
            "mor_field": self.mor_field,
            "sem_journal": self.sem_journal,
            "sem_field": self.sem_field,
            "self_citation_mode": self.self_citation_mode.value,
            "performance_flag": self.performance_flag.value,
            "per_paper_ratios": {
                basis: [{"id": pid, "ratio": ratio} for pid, ratio in rows]
                for basis, rows in self.per_paper_ratios.items()
            },
        }


def build_report(evaluation_set: EvaluationSet,
                 bases: Iterable[NormalizationBasis] = (NormalizationBasis.JOURNAL,),
                 mode: SelfCitationMode = SelfCitationMode.INCLUDE) -> IndicatorReport:
    """Compute every indicator for one unit.

    The journal basis is always computed (JCS is mandatory on records);
    field-basis entries are filled only when ``NormalizationBasis.FIELD`` is
    requested, in which case missing FCS values raise ``MissingFieldRate``.
    The performance flag is taken from the journal ratio of means.
    """
    bases = set(bases) | {NormalizationBasis.JOURNAL}
    records = _require_records(evaluation_set)
    ids = [r.id for r in records]
    observed = _observed(evaluation_set, mode)

    rom_j = ratio_of_means(evaluation_set, NormalizationBasis.JOURNAL, mode)
    ratios_j = per_paper_ratios(evaluation_set, NormalizationBasis.JOURNAL, mode)
    mor_j, sem_j = mean_of_ratios(evaluation_set, NormalizationBasis.JOURNAL, mode)
    ratio_table = {"journal": list(zip(ids, ratios_j))}

    field_values = {}
    if NormalizationBasis.FIELD in bases:
        mor_f, sem_f = mean_of_ratios(evaluation_set, NormalizationBasis.FIELD, mode)
        field_values = dict(
            fcsm=fcsm(evaluation_set),
            rom_field=ratio_of_means(evaluation_set, NormalizationBasis.FIELD, mode),
            mor_field=mor_f,
            sem_field=sem_f,
        )
        ratio_table["field"] = list(
            zip(ids, per_paper_ratios(evaluation_set, NormalizationBasis.FIELD, mode)))

    return IndicatorReport(
        unit_id=evaluation_set.unit_id,
        p=len(records),
        c=int(observed.sum()),
        cpp=float(observed.mean()),
        jcsm=jcsm(evaluation_set),
        rom_journal=rom_j,
        mor_journal=mor_j,
        sem_journal=sem_j,
        self_citation_mode=mode,
        performance_flag=performance_flag(rom_j),
        per_paper_ratios=ratio_table,
        **field_values,
    )
