"""Exception hierarchy for the toolkit.

Every recoverable failure raises a :class:`ToolkitError` subclass so the CLI
can map them to exit code 1 with a one-line diagnostic.
"""

from __future__ import annotations


class ToolkitError(Exception):
    """Base class for all toolkit errors."""


class DatasetParseError(ToolkitError):
    """Malformed dataset line; carries the 1-based line number."""

    def __init__(self, message: str, *, line: int, column: str | None = None):
        super().__init__(message)
        self.line = line
        self.column = column


class EncodingError(ToolkitError):
    """Input bytes are not valid UTF-8."""


class StoreFormatError(ToolkitError):
    """Malformed embedding-store stream; carries the offending record id if known."""

    def __init__(self, message: str, *, record_id: int | None = None):
        super().__init__(message)
        self.record_id = record_id


class ModelFormatError(ToolkitError):
    """Malformed model container."""


class DimensionError(ToolkitError):
    """Vector or matrix shapes do not agree."""


class DegenerateVectorError(ToolkitError):
    """Zero-norm vector where a direction is required."""

    def __init__(self, message: str, *, index: int | None = None):
        super().__init__(message)
        self.index = index


class InsufficientDataError(ToolkitError):
    """Too few items for the requested computation."""


class HomographNotFoundError(ToolkitError):
    """Homograph missing from a dataset or store index."""


class SplitError(ToolkitError):
    """Train/test split cannot satisfy its contract."""


class FitError(ToolkitError):
    """Classifier training received unusable data."""


class ConfigError(ToolkitError):
    """Invalid configuration or generator spec."""


class NumericError(ToolkitError):
    """Non-finite value encountered during a numeric evaluation."""


class ArgumentError(ToolkitError):
    """Invalid arguments to an experiment runner or metric."""
