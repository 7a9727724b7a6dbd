"""Domain types: publication records, evaluation sets, citable-item filtering
and self-citation handling.

All types are frozen dataclasses; nothing here mutates after construction.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import (
    EmptyAfterFilter,
    MissingSelfCitationData,
    NegativeCount,
    NonPositiveExpectedRate,
    SelfCitationsExceedCitations,
)


class DocType(enum.Enum):
    ARTICLE = "Article"
    PROCEEDINGS_PAPER = "ProceedingsPaper"
    REVIEW = "Review"
    LETTER = "Letter"
    NOTE = "Note"
    EDITORIAL = "Editorial"
    OTHER = "Other"

    @classmethod
    def parse(cls, text: str) -> "DocType":
        """Case-insensitive lookup; unknown strings map to OTHER with a warning."""
        key = text.strip().replace(" ", "").replace("_", "").lower()
        for member in cls:
            if member.value.lower() == key:
                return member
        warnings.warn(f"unknown doc_type {text!r}; treating as Other", stacklevel=2)
        return cls.OTHER


class SelfCitationMode(enum.Enum):
    INCLUDE = "include"   # +sc
    EXCLUDE = "exclude"   # -sc


@dataclass(frozen=True)
class PublicationRecord:
    id: str
    citations: int
    jcs: float
    doc_type: DocType = DocType.ARTICLE
    fcs: Optional[float] = None
    self_citations: Optional[int] = None
    year: Optional[int] = None
    journal_id: Optional[str] = None

    def __post_init__(self):
        if self.citations < 0:
            raise NegativeCount(f"record {self.id}: citations must be >= 0, got {self.citations}")
        if not (math.isfinite(self.jcs) and self.jcs > 0):
            raise NonPositiveExpectedRate(f"record {self.id}: jcs must be > 0, got {self.jcs}")
        if self.fcs is not None and not (math.isfinite(self.fcs) and self.fcs > 0):
            raise NonPositiveExpectedRate(f"record {self.id}: fcs must be > 0, got {self.fcs}")
        if self.self_citations is not None:
            if self.self_citations < 0:
                raise NegativeCount(
                    f"record {self.id}: self_citations must be >= 0, got {self.self_citations}")
            if self.self_citations > self.citations:
                raise SelfCitationsExceedCitations(
                    f"record {self.id}: self_citations ({self.self_citations}) "
                    f"> citations ({self.citations})")


def make_record(**fields) -> PublicationRecord:
    """Build a validated :class:`PublicationRecord`.

    ``doc_type`` may be given as a :class:`DocType` or a string; ``id`` is
    coerced to ``str``.
    """
    doc_type = fields.get("doc_type", DocType.ARTICLE)
    if isinstance(doc_type, str):
        fields["doc_type"] = DocType.parse(doc_type)
    fields["id"] = str(fields.get("id", ""))
    return PublicationRecord(**fields)


@dataclass(frozen=True)
class EvaluationSet:
    """The oeuvre of one evaluated unit (author or group)."""

    unit_id: str
    records: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)


CWTS_DOC_TYPES = frozenset({DocType.ARTICLE, DocType.PROCEEDINGS_PAPER})


@dataclass(frozen=True)
class CitableFilter:
    """Which document types count as citable.

    The default reproduces the CWTS run (articles and proceedings papers
    merged). Use :meth:`all_citable` to keep reviews, letters and notes too,
    and :meth:`everything` for the identity filter.
    """

    included_doc_types: frozenset = field(default=CWTS_DOC_TYPES)

    def __post_init__(self):
        object.__setattr__(self, "included_doc_types", frozenset(self.included_doc_types))

    @classmethod
    def all_citable(cls) -> "CitableFilter":
        return cls(frozenset(DocType) - {DocType.EDITORIAL})

    @classmethod
    def everything(cls) -> "CitableFilter":
        return cls(frozenset(DocType))

    @classmethod
    def excluding(cls, doc_types: Iterable[DocType]) -> "CitableFilter":
        return cls(frozenset(DocType) - set(doc_types))

    def accepts(self, record: PublicationRecord) -> bool:
        return record.doc_type in self.included_doc_types


def apply_filter(evaluation_set: EvaluationSet, citable: CitableFilter) -> EvaluationSet:
    kept = tuple(r for r in evaluation_set.records if citable.accepts(r))
    if not kept:
        raise EmptyAfterFilter(f"unit {evaluation_set.unit_id}: no records left after filtering")
    return EvaluationSet(evaluation_set.unit_id, kept)


def effective_citations(record: PublicationRecord,
                        mode: SelfCitationMode = SelfCitationMode.INCLUDE) -> int:
    if mode is SelfCitationMode.INCLUDE:
        return record.citations
    if record.self_citations is None:
        raise MissingSelfCitationData(f"record {record.id} has no self-citation count")
    return record.citations - record.self_citations
