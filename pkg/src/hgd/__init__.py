"""Toolkit for homograph disambiguation with contextual embeddings.

Pipeline pieces: TSV dataset handling, line-delimited embedding stores,
from-scratch classifiers, evaluation metrics, and three deterministic
comparison analyses, all exposed through the ``hgd`` command.
"""

from .dataset import Dataset, HomographRecord, SplitSpec, load_dataset, parse_dataset, split
from .embeddings import (
    EmbeddingRecord,
    EmbeddingStore,
    PoolingStrategy,
    SynthSpec,
    cosine,
    generate_synthetic_store,
    load_store,
    mean_pairwise_cosine,
    read_store,
    save_store,
    write_store,
)
from .errors import ToolkitError
from .experiments import (
    Metrics,
    compute_metrics,
    run_cosine_analysis,
    run_embedding_comparison,
    run_model_comparison,
)

__version__ = "0.1.0"

__all__ = [
    "Dataset",
    "EmbeddingRecord",
    "EmbeddingStore",
    "HomographRecord",
    "Metrics",
    "PoolingStrategy",
    "SplitSpec",
    "SynthSpec",
    "ToolkitError",
    "__version__",
    "compute_metrics",
    "cosine",
    "generate_synthetic_store",
    "load_dataset",
    "load_store",
    "mean_pairwise_cosine",
    "parse_dataset",
    "read_store",
    "run_cosine_analysis",
    "run_embedding_comparison",
    "run_model_comparison",
    "save_store",
    "split",
    "write_store",
]
