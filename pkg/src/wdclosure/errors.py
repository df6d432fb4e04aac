class WdcError(Exception):
    """Base class for domain errors raised by this package."""


class UnsupportedDomainError(WdcError):
    """A closed-form result was requested outside the grids where it holds."""


class InvalidSetError(WdcError, ValueError):
    """The weight set is not a legal input (e.g. the full interval for a cover)."""


class OracleCapError(WdcError):
    """A brute-force oracle refused an instance larger than its configured cap."""


class ConstructionError(WdcError):
    """A witness could not be built or failed verification."""
