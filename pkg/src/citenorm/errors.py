"""Exception hierarchy.

Every domain error derives from :class:`CitenormError` (itself a
``ValueError``) so callers such as the CLI can map all data problems to a
single exit code.
"""


class CitenormError(ValueError):
    """Base class for all domain errors."""


# -- records / sets ---------------------------------------------------------

class NonPositiveExpectedRate(CitenormError):
    pass


class SelfCitationsExceedCitations(CitenormError):
    pass


class NegativeCount(CitenormError):
    pass


class EmptyAfterFilter(CitenormError):
    pass


class EmptySet(CitenormError):
    pass


class MissingSelfCitationData(CitenormError):
    pass


class MissingFieldRate(CitenormError):
    pass


# -- ingest -----------------------------------------------------------------

class MissingColumn(CitenormError):
    pass


class BadNumber(CitenormError):
    pass


# -- stats ------------------------------------------------------------------

class TooFewGroups(CitenormError):
    pass


class EmptyGroup(CitenormError):
    pass


class LengthMismatch(CitenormError):
    pass


class ConstantInput(CitenormError):
    pass


class EmptyReference(CitenormError):
    pass


class TooFewObservations(CitenormError):
    pass


# -- ranking ----------------------------------------------------------------

class MissingIndicator(CitenormError):
    pass


class NonPositiveBaseline(CitenormError):
    pass


class TooFewUnits(CitenormError):
    pass
