"""Contextual embedding extraction for homograph datasets.

Reads tab-separated annotated sentences, locates each homograph's subword
span under a transformer tokenizer, pools hidden states, and writes
``hgd-emb/1`` embedding stores consumable by downstream classifier tooling.
"""

from .align import TokenSpan, locate_homograph
from .errors import (
    ConfigError,
    DatasetParseError,
    ExtractionError,
    ExtractorError,
    ModelResolutionError,
)
from .extract import (
    DEFAULT_MODEL_ID,
    ExtractionConfig,
    ExtractionSummary,
    Scope,
    SkippedRecord,
    extract,
)
from .formats import SentenceRecord, parse_dataset, read_dataset, store_text
from .pooling import PoolingStrategy, pool

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "DEFAULT_MODEL_ID",
    "DatasetParseError",
    "ExtractionConfig",
    "ExtractionError",
    "ExtractionSummary",
    "ExtractorError",
    "ModelResolutionError",
    "PoolingStrategy",
    "Scope",
    "SentenceRecord",
    "SkippedRecord",
    "TokenSpan",
    "__version__",
    "extract",
    "locate_homograph",
    "parse_dataset",
    "pool",
    "read_dataset",
    "store_text",
]
