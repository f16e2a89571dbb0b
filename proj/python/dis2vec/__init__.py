"""Word embeddings with vocabulary-driven negative sampling.

Thin wrapper over the compiled extension; see the project README for the
file formats and the command-line interface.
"""

from ._core import (
    DataError,
    NonFiniteUpdateError,
    SyntheticSpec,
    TrainingConfig,
    UsageError,
    WordVectors,
    cosine,
    generate_synthetic,
    load_embeddings,
    save_embeddings,
    taxonomy_report,
    train,
)

__all__ = [
    "DataError",
    "NonFiniteUpdateError",
    "SyntheticSpec",
    "TrainingConfig",
    "UsageError",
    "WordVectors",
    "cosine",
    "generate_synthetic",
    "load_embeddings",
    "save_embeddings",
    "taxonomy_report",
    "train",
]
