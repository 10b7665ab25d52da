"""Exception hierarchy shared by all bumpscan modules."""


class BumpScanError(Exception):
    """Base class for every error raised by bumpscan."""


class DataError(BumpScanError):
    """Problem with user-supplied data, tables or configuration."""


class EmptySample(DataError):
    pass


class CdfOutOfRange(DataError):
    pass


class ParseError(DataError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DomainError(BumpScanError, ValueError):
    """An argument lies outside the domain of a function."""


class SampleTooSmall(DataError):
    pass


class InvalidLevel(BumpScanError, ValueError):
    pass


class GridMismatch(DataError):
    pass


class UnsupportedStat(BumpScanError):
    pass


class VersionMismatch(DataError):
    pass


class CorruptTable(DataError):
    pass


class MissingTable(DataError):
    pass
