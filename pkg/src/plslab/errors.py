"""Exception types shared across the toolkit."""


class PlsError(Exception):
    """Base class for all toolkit errors."""


# graph construction / views
class DuplicateId(PlsError):
    pass


class LoopEdge(PlsError):
    pass


class DuplicateEdge(PlsError):
    pass


class DuplicateWeight(PlsError):
    pass


class UnknownNode(PlsError):
    pass


class TooLarge(PlsError):
    pass


class MissingInput(PlsError):
    pass


# proofs
class CoverageMismatch(PlsError):
    pass


class ZeroMixed(PlsError):
    pass


# schemes
class NotInLanguage(PlsError):
    pass


class Disconnected(PlsError):
    pass


class IdOutOfRange(PlsError):
    pass


# harness
class RegimeMismatch(PlsError):
    pass


class BudgetTooLarge(PlsError):
    pass


# lower-bound lab
class RadiusMismatch(PlsError):
    pass


class MissingColoring(PlsError):
    pass


# cc bridge
class TooManyBits(PlsError):
    pass


# file / CLI input handling
class ParseError(PlsError):
    pass
