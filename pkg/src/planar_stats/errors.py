"""Exception hierarchy shared by every module.

Everything raised on bad input derives from ValidationError so the CLI can
map it to exit code 2; NegativeCycle maps to exit code 3.
"""


class PlanarStatsError(Exception):
    pass


class ValidationError(PlanarStatsError, ValueError):
    pass


class EulerViolation(ValidationError):
    pass


class DisconnectedGraph(ValidationError):
    pass


class DuplicateDart(ValidationError):
    pass


class InvalidLength(ValidationError):
    pass


class InvalidWalk(ValidationError):
    pass


class CrossingWalk(ValidationError):
    pass


class NegativeCycle(PlanarStatsError):
    pass


class AlreadyPerturbed(ValidationError):
    pass


class IndexOutOfRange(ValidationError, IndexError):
    pass


class TieDetected(ValidationError):
    pass


class EmptyCell(ValidationError):
    pass


class InvalidSitePair(ValidationError):
    pass


class RootOutsidePiece(ValidationError):
    pass


class XNotOnOuterFace(ValidationError):
    pass


class ConditionViolated(ValidationError):
    pass


class NotTriangulated(ValidationError):
    pass


class BadParams(ValidationError):
    pass
