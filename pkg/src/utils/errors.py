"""Exception hierarchy shared by the library, CLI and service."""


class GaussFactorError(Exception):
    """Base class for gaussfactor errors."""


class DomainError(GaussFactorError, ValueError):
    """An operation was called outside its domain."""


class ConfigError(GaussFactorError, ValueError):
    """Configuration file or values are invalid."""


class ScheduleFormatError(DomainError):
    """Schedule export text could not be parsed."""
