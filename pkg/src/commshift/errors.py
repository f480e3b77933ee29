"""Exception types shared across the package."""


class CommshiftError(Exception):
    """Base class for all package-specific errors."""


class GraphBuildError(CommshiftError):
    """Raised when edge records cannot be assembled into a valid graph."""


class DatasetError(CommshiftError):
    """Raised for unreadable, malformed, or checksum-failing dataset files."""


class ConfigError(CommshiftError):
    """Raised for invalid experiment/suite configuration."""


class ExperimentError(CommshiftError):
    """Raised when an experiment cannot be set up or a method fails."""
