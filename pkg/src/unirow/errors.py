"""Exception hierarchy.

Every failure raised by the library derives from :class:`UnirowError`, so
callers can catch the whole family with a single clause.  The subclasses
mirror the error names used throughout the documentation.
"""


class UnirowError(Exception):
    """Base class for all library errors."""


# ring layer
class CharacteristicTwo(UnirowError):
    pass


class DuplicateVariable(UnirowError):
    pass


class ResourceExceeded(UnirowError):
    pass


class ContextMismatch(UnirowError):
    pass


class ArityMismatch(UnirowError):
    pass


class NotAUnit(UnirowError):
    pass


class NotUnimodular(UnirowError):
    pass


class NotInIdeal(UnirowError):
    pass


# linear algebra
class DimensionMismatch(UnirowError):
    pass


class NotSquare(UnirowError):
    pass


class NotSkew(UnirowError):
    pass


class OddSize(UnirowError):
    pass


class NotInverse(UnirowError):
    pass


class NotInvertible(UnirowError):
    pass


class IndexOutOfRange(UnirowError):
    pass


# rows
class QuotientConstructionFailed(UnirowError):
    pass


class NotUnitModulo(UnirowError):
    pass


class NotComaximal(UnirowError):
    pass


class CertificateSearchFailed(UnirowError):
    pass


class MinusOneNotSquare(UnirowError):
    pass


class NotAField(UnirowError):
    pass


class ZeroRow(UnirowError):
    pass


class CertificateMismatch(UnirowError):
    pass


class UnsupportedRank(UnirowError):
    pass


class LiftFailed(UnirowError):
    pass


# symbols
class WitnessInvalid(UnirowError):
    pass


class FirstCoordinateMismatch(UnirowError):
    pass


class ModularInverseInvalid(UnirowError):
    pass


class ComposeNotUnimodular(UnirowError):
    pass


class NotInverseModulo(UnirowError):
    pass


class PfaffianNotOne(UnirowError):
    pass


# oracle
class RowNotUnimodular(UnirowError):
    pass


# session / files
class SessionSyntaxError(UnirowError):
    """Parse failure carrying a 1-based line and column."""

    def __init__(self, message, line=0, column=0):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class UnknownOperation(UnirowError):
    pass


class UnresolvedName(UnirowError):
    pass


class MalformedCertificate(UnirowError):
    pass


class ChecksumMismatch(UnirowError):
    pass
