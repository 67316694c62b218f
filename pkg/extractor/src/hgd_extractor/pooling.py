"""Pooling of per-layer hidden states over a subword span."""

from __future__ import annotations

import enum
from typing import Sequence

import numpy as np

from .align import TokenSpan
from .errors import ExtractionError


class PoolingStrategy(enum.Enum):
    LAST_LAYER = "last_layer"
    AVG_LAST4 = "avg_last4"

    @classmethod
    def from_tag(cls, tag: str) -> "PoolingStrategy":
        for member in cls:
            if member.value == tag:
                return member
        raise ExtractionError(f"unknown pooling tag: {tag!r}")


def _span_mean(layer: np.ndarray, span: TokenSpan) -> np.ndarray:
    if span.end > layer.shape[0]:
        raise ExtractionError(
            f"span [{span.start}, {span.end}) out of range for sequence length {layer.shape[0]}"
        )
    return np.mean(layer[span.start : span.end], axis=0)


def pool(
    hidden_states: Sequence[np.ndarray], span: TokenSpan, strategy: PoolingStrategy
) -> np.ndarray:
    """Pool one sequence's layer stack down to a single vector.

    ``hidden_states`` is ordered from the embedding layer to the final layer,
    each entry of shape (sequence length, hidden size). LAST_LAYER averages
    the final layer's vectors over the span; AVG_LAST4 averages the per-layer
    span means of the last four layers, which by linearity equals the mean of
    the full span-by-four-layers block. Computed in float64.
    """
    if not hidden_states:
        raise ExtractionError("no hidden-state layers supplied")
    layers = [np.asarray(layer, dtype=np.float64) for layer in hidden_states]
    if strategy is PoolingStrategy.LAST_LAYER:
        return _span_mean(layers[-1], span)
    if len(layers) < 4:
        raise ExtractionError(
            f"avg_last4 needs at least 4 layers, got {len(layers)}"
        )
    return np.mean([_span_mean(layer, span) for layer in layers[-4:]], axis=0)
