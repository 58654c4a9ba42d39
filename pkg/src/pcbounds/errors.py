"""Exception hierarchy shared by every module."""


class PCBoundsError(Exception):
    """Base class for all errors raised by :mod:`pcbounds`."""


class InvalidProbability(PCBoundsError, ValueError):
    pass


class InvalidInterval(PCBoundsError, ValueError):
    pass


class ConditioningEventImpossible(PCBoundsError):
    """The event the probability of causation conditions on has probability zero."""


class InconsistentEvidence(PCBoundsError):
    """No joint distribution is compatible with all supplied evidence."""


class UnknownStratum(PCBoundsError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class TooManyStrata(PCBoundsError):
    pass


class DegenerateTable(PCBoundsError):
    """A conditional frequency was requested from an empty cell."""


class ParseError(PCBoundsError):
    pass


class SchemaMismatch(PCBoundsError):
    pass
