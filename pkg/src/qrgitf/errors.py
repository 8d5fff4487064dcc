"""Exception and warning types raised across the package."""


class QRGError(Exception):
    """Base class for package errors."""


class ValidationError(QRGError, ValueError):
    """Input matrix or state fails a structural check (Hermiticity, trace, positivity)."""


class DomainError(QRGError, ValueError):
    """Scalar argument outside the domain of a function."""


class ConfigurationError(QRGError, ValueError):
    """Bad numerical settings such as a too-small grid."""


class DataError(QRGError, ValueError):
    """Data handed to a fit cannot be used (e.g. non-positive values under a log)."""


class StructuralError(QRGError, RuntimeError):
    """An internal consistency check failed, e.g. a doublet that should be degenerate is not."""


class BoundaryWarning(UserWarning):
    """The extremum of a sweep sits on the grid boundary."""
