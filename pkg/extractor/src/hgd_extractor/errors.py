"""Exception hierarchy for the extractor.

Every recoverable failure raises an :class:`ExtractorError` subclass so the
CLI can map them to exit code 1 with a one-line diagnostic.
"""

from __future__ import annotations


class ExtractorError(Exception):
    """Base class for all extractor errors."""


class DatasetParseError(ExtractorError):
    """Malformed dataset line; carries the 1-based line number."""

    def __init__(self, message: str, *, line: int):
        super().__init__(message)
        self.line = line


class ConfigError(ExtractorError):
    """Invalid extraction configuration or span value."""


class ModelResolutionError(ExtractorError):
    """The model or tokenizer checkpoint cannot be loaded."""


class ExtractionError(ExtractorError):
    """Pooling or alignment failed; carries the record id when known."""

    def __init__(self, message: str, *, record_id: int | None = None):
        super().__init__(message)
        self.record_id = record_id
