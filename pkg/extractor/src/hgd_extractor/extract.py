"""Batched extraction of contextual homograph embeddings into a store file."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .align import TokenSpan, locate_homograph
from .errors import ConfigError, ExtractionError, ModelResolutionError
from .formats import SentenceRecord, atomic_write_text, store_text
from .pooling import PoolingStrategy, pool

DEFAULT_MODEL_ID = "HooshvareLab/bert-base-parsbert-uncased"


class Scope(enum.Enum):
    """Token range fed to pooling: the homograph's subwords or the whole input."""

    HOMOGRAPH_SPAN = "homograph_span"
    WHOLE_SENTENCE = "whole_sentence"

    @classmethod
    def from_tag(cls, tag: str) -> "Scope":
        for member in cls:
            if member.value == tag:
                return member
        raise ConfigError(f"unknown scope: {tag!r}")


@dataclass(frozen=True)
class ExtractionConfig:
    model_id: str = DEFAULT_MODEL_ID
    pooling: PoolingStrategy = PoolingStrategy.LAST_LAYER
    batch_size: int = 8
    scope: Scope = Scope.HOMOGRAPH_SPAN

    def __post_init__(self) -> None:
        if self.batch_size < 1:
            raise ConfigError(f"batch_size must be >= 1, got {self.batch_size}")


@dataclass(frozen=True)
class SkippedRecord:
    record_id: int
    reason: str  # "homograph-absent" | "span-unresolved"


@dataclass(frozen=True)
class ExtractionSummary:
    written: int
    dim: int
    pooling: PoolingStrategy
    skipped: tuple[SkippedRecord, ...] = field(default=())


def load_model(model_id: str):
    """Resolve tokenizer and encoder; wraps resolution failures."""
    import torch
    from transformers import AutoModel, AutoTokenizer
    from transformers.utils import logging as hf_logging

    hf_logging.set_verbosity_error()
    hf_logging.disable_progress_bar()
    try:
        tokenizer = AutoTokenizer.from_pretrained(model_id)
        model = AutoModel.from_pretrained(model_id)
    except (OSError, ValueError) as e:
        raise ModelResolutionError(f"cannot resolve model {model_id!r}: {e}") from e
    if not getattr(tokenizer, "is_fast", False):
        raise ModelResolutionError(
            f"model {model_id!r} has no fast tokenizer; character offsets are required"
        )
    model.eval()
    model.to(torch.device("cpu"))
    return tokenizer, model


def _batches(n: int, size: int):
    for start in range(0, n, size):
        yield range(start, min(start + size, n))


def _token_limit(tokenizer, model) -> int | None:
    """Tightest known sequence cap; tokenizers without a recorded limit would
    otherwise pass over-long inputs straight into the position embeddings."""
    limits = [int(getattr(model.config, "max_position_embeddings", 0))]
    recorded = int(getattr(tokenizer, "model_max_length", 0))
    if 0 < recorded < 100_000:
        limits.append(recorded)
    positive = [x for x in limits if x > 0]
    return min(positive) if positive else None


def extract(
    records: Sequence[SentenceRecord], cfg: ExtractionConfig, out: str | Path
) -> ExtractionSummary:
    """Embed every record with a resolvable token range and write the store.

    Records keep their dataset ids and order; unresolvable records are
    skipped and reported in the summary, so written + skipped equals the
    dataset size. The store header dim is the encoder's hidden size.
    """
    import torch

    tokenizer, model = load_model(cfg.model_id)
    dim = int(model.config.hidden_size)
    max_length = _token_limit(tokenizer, model)

    written: list[tuple[SentenceRecord, np.ndarray]] = []
    skipped: list[SkippedRecord] = []
    with torch.no_grad():
        for batch in _batches(len(records), cfg.batch_size):
            sentences = [records[i].sentence for i in batch]
            enc = tokenizer(
                sentences,
                return_tensors="pt",
                padding=True,
                truncation=True,
                max_length=max_length,
                return_offsets_mapping=True,
            )
            offset_mapping = enc.pop("offset_mapping")
            out_states = model(**enc, output_hidden_states=True)
            hidden = [layer.numpy() for layer in out_states.hidden_states]
            for row, i in enumerate(batch):
                rec = records[i]
                span = _resolve_span(
                    rec, cfg.scope, offset_mapping[row].tolist(), enc["attention_mask"][row]
                )
                if isinstance(span, SkippedRecord):
                    skipped.append(span)
                    continue
                layers = [layer[row] for layer in hidden]
                try:
                    vector = pool(layers, span, cfg.pooling)
                except ExtractionError as e:
                    raise ExtractionError(
                        f"record {rec.record_id}: {e}", record_id=rec.record_id
                    ) from e
                written.append((rec, vector))

    atomic_write_text(out, store_text(dim, cfg.pooling.value, cfg.model_id, written))
    return ExtractionSummary(len(written), dim, cfg.pooling, tuple(skipped))


def _resolve_span(
    rec: SentenceRecord, scope: Scope, offsets: list[tuple[int, int]], attention_mask
) -> TokenSpan | SkippedRecord:
    if scope is Scope.WHOLE_SENTENCE:
        return TokenSpan(0, int(attention_mask.sum()))
    span = locate_homograph(rec.sentence, rec.homograph, offsets)
    if span is None:
        reason = (
            "homograph-absent" if rec.homograph not in rec.sentence else "span-unresolved"
        )
        return SkippedRecord(rec.record_id, reason)
    return span
