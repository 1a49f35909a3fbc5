"""Exception hierarchy shared by every module of the package."""


class SMDCError(Exception):
    """Base class for all errors raised by smdc."""


class NoInverse(SMDCError, ZeroDivisionError):
    pass


class DegenerateCode(SMDCError, ValueError):
    pass


class ShapeError(SMDCError, ValueError):
    pass


class InsufficientShares(SMDCError):
    pass


class CorruptShare(SMDCError):
    pass


class DomainError(SMDCError, ValueError):
    pass


class DegenerateProfile(SMDCError, ValueError):
    pass


class Unsupported(SMDCError):
    pass


class BadThreshold(SMDCError, ValueError):
    pass


class PaddingRequired(SMDCError, ValueError):
    """Source lengths do not fit the scheme's partitioning.

    ``minimal`` holds the componentwise smallest conforming length tuple
    (indexed by level 1..L) when one can be computed, else ``None``.
    """

    def __init__(self, message, minimal=None):
        super().__init__(message)
        self.minimal = minimal


class WrongScheme(SMDCError, ValueError):
    pass


class KeyDeficit(SMDCError, ValueError):
    pass


class CornerUnavailable(SMDCError, ValueError):
    pass


class TooLargeUseRankOracle(SMDCError):
    pass


class NotLinear(SMDCError):
    pass


class FormatError(SMDCError, ValueError):
    pass
