"""Exception hierarchy shared across the package."""


class QrbfError(Exception):
    """Base class for all package errors."""


class DomainError(QrbfError, ValueError):
    """An argument is outside the mathematical domain of an operation."""


class ConfigurationError(QrbfError, ValueError):
    """Shapes, options or config fields are inconsistent."""


class CapabilityError(QrbfError, ValueError):
    """The request is valid but outside the supported problem sizes."""


class NumericError(QrbfError, RuntimeError):
    """A numerical routine failed to converge."""


class IngestionError(QrbfError, ValueError):
    """A data file could not be parsed."""


class UsageError(QrbfError, ValueError):
    """Bad command-line usage (unknown preset, missing flag)."""
