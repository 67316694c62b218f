"""Embedding stores (``hgd-emb/1``), cosine-similarity math, synthetic generation.

Store format: line-delimited JSON, UTF-8, LF. Line 1 is the header object
``{"format":"hgd-emb/1","dim":D,"pooling":"last_layer"|"avg_last4","model":M}``;
each following line is ``{"id":I,"homograph":H,"phoneme":P,"vector":[...]}``.
Floats carry their shortest round-trip decimal form, so write -> read -> write
is byte-stable.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    ConfigError,
    DegenerateVectorError,
    DimensionError,
    InsufficientDataError,
    StoreFormatError,
)
from .util import atomic_write_text

FORMAT_TAG = "hgd-emb/1"


class PoolingStrategy(enum.Enum):
    LAST_LAYER = "last_layer"
    AVG_LAST4 = "avg_last4"

    @classmethod
    def from_tag(cls, tag: str) -> "PoolingStrategy":
        for member in cls:
            if member.value == tag:
                return member
        raise StoreFormatError(f"unknown pooling tag: {tag!r}")


@dataclass(frozen=True, eq=False)
class EmbeddingRecord:
    record_id: int
    homograph: str
    phoneme: str
    vector: np.ndarray

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EmbeddingRecord):
            return NotImplemented
        return (
            self.record_id == other.record_id
            and self.homograph == other.homograph
            and self.phoneme == other.phoneme
            and self.vector.shape == other.vector.shape
            and bool(np.all(self.vector == other.vector))
        )


@dataclass(frozen=True, eq=False)
class EmbeddingStore:
    dim: int
    pooling: PoolingStrategy
    model_id: str
    records: tuple[EmbeddingRecord, ...]
    index: dict[str, tuple[int, ...]] = field(repr=False)
    by_id: dict[int, EmbeddingRecord] = field(repr=False)

    @staticmethod
    def from_records(
        dim: int,
        pooling: PoolingStrategy,
        model_id: str,
        records: Iterable[EmbeddingRecord],
    ) -> "EmbeddingStore":
        records = tuple(records)
        index: dict[str, list[int]] = {}
        by_id: dict[int, EmbeddingRecord] = {}
        for rec in records:
            if rec.vector.shape != (dim,):
                raise StoreFormatError(
                    f"record {rec.record_id}: vector length {rec.vector.shape[0] if rec.vector.ndim == 1 else rec.vector.shape}"
                    f" does not match store dim {dim}",
                    record_id=rec.record_id,
                )
            if not np.all(np.isfinite(rec.vector)):
                raise StoreFormatError(
                    f"record {rec.record_id}: non-finite vector component",
                    record_id=rec.record_id,
                )
            if rec.record_id in by_id:
                raise StoreFormatError(
                    f"duplicate record id {rec.record_id}", record_id=rec.record_id
                )
            by_id[rec.record_id] = rec
            index.setdefault(rec.homograph, []).append(rec.record_id)
        return EmbeddingStore(
            dim, pooling, model_id, records, {h: tuple(v) for h, v in index.items()}, by_id
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EmbeddingStore):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.pooling == other.pooling
            and self.model_id == other.model_id
            and self.records == other.records
        )

    def __len__(self) -> int:
        return len(self.records)


def _dump(obj: dict) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def write_store(store: EmbeddingStore) -> str:
    """Serialize a store to its line-delimited text form."""
    lines = [
        _dump(
            {
                "format": FORMAT_TAG,
                "dim": store.dim,
                "pooling": store.pooling.value,
                "model": store.model_id,
            }
        )
    ]
    for rec in store.records:
        lines.append(
            _dump(
                {
                    "id": rec.record_id,
                    "homograph": rec.homograph,
                    "phoneme": rec.phoneme,
                    "vector": [float(x) for x in rec.vector],
                }
            )
        )
    return "\n".join(lines) + "\n"


def _reject_constant(token: str) -> float:
    raise StoreFormatError(f"non-finite literal {token!r} in store")


def read_store(source: str) -> EmbeddingStore:
    """Parse store text; raises StoreFormatError on any malformed content."""
    lines = source.splitlines()
    if not lines:
        raise StoreFormatError("empty stream: missing store header")
    try:
        header = json.loads(lines[0], parse_constant=_reject_constant)
    except json.JSONDecodeError as e:
        raise StoreFormatError(f"invalid header line: {e.msg}") from e
    if not isinstance(header, dict) or header.get("format") != FORMAT_TAG:
        raise StoreFormatError(f"unsupported store format: {header.get('format') if isinstance(header, dict) else header!r}")
    dim = header.get("dim")
    if not isinstance(dim, int) or dim <= 0:
        raise StoreFormatError(f"invalid store dim: {dim!r}")
    pooling = PoolingStrategy.from_tag(str(header.get("pooling")))
    model_id = str(header.get("model", ""))

    records: list[EmbeddingRecord] = []
    for lineno, line in enumerate(lines[1:], start=2):
        try:
            raw = json.loads(line, parse_constant=_reject_constant)
        except json.JSONDecodeError as e:
            raise StoreFormatError(f"line {lineno}: truncated or invalid record: {e.msg}") from e
        if not isinstance(raw, dict) or not {"id", "homograph", "phoneme", "vector"} <= set(raw):
            raise StoreFormatError(f"line {lineno}: record missing required keys")
        rid = raw["id"]
        vector = np.asarray(raw["vector"], dtype=np.float64)
        if vector.ndim != 1 or vector.shape[0] != dim:
            raise StoreFormatError(
                f"record {rid}: vector length {vector.shape[0] if vector.ndim == 1 else '?'}"
                f" does not match header dim {dim}",
                record_id=int(rid),
            )
        records.append(
            EmbeddingRecord(int(rid), str(raw["homograph"]), str(raw["phoneme"]), vector)
        )
    return EmbeddingStore.from_records(dim, pooling, model_id, records)


def save_store(store: EmbeddingStore, path: str | Path) -> None:
    atomic_write_text(path, write_store(store))


def load_store(path: str | Path) -> EmbeddingStore:
    return read_store(Path(path).read_text(encoding="utf-8"))


def cosine(u: Sequence[float] | np.ndarray, v: Sequence[float] | np.ndarray) -> float:
    """(u . v) / (|u| |v|), clamped into [-1, 1]."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.ndim != 1 or v.ndim != 1 or u.shape != v.shape:
        raise DimensionError(f"cosine requires equal-length vectors, got {u.shape} and {v.shape}")
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        raise DegenerateVectorError("cosine undefined for a zero-norm vector")
    value = float(np.dot(u, v) / (nu * nv))
    return max(-1.0, min(1.0, value))


def _unit_rows(vectors: Sequence[np.ndarray]) -> np.ndarray:
    dim = None
    rows = []
    for i, vec in enumerate(vectors):
        v = np.asarray(vec, dtype=np.float64)
        if v.ndim != 1:
            raise DimensionError(f"vector {i} is not 1-dimensional")
        if dim is None:
            dim = v.shape[0]
        elif v.shape[0] != dim:
            raise DimensionError(f"vector {i} has length {v.shape[0]}, expected {dim}")
        norm = float(np.linalg.norm(v))
        if norm == 0.0:
            raise DegenerateVectorError(f"vector {i} has zero norm", index=i)
        rows.append(v / norm)
    return np.asarray(rows)


def mean_pairwise_cosine(vectors: Sequence[np.ndarray]) -> float:
    """Mean cosine over all unordered pairs i < j (n*(n-1)/2 pairs)."""
    if len(vectors) < 2:
        raise InsufficientDataError(f"need >= 2 vectors, got {len(vectors)}")
    unit = _unit_rows(vectors)
    gram = np.clip(unit @ unit.T, -1.0, 1.0)
    iu = np.triu_indices(len(vectors), k=1)
    return float(gram[iu].mean())


def mean_pairwise_cosine_filtered(
    vectors: Sequence[np.ndarray], labels: Sequence[str], pairs: str
) -> float | None:
    """Mean cosine over unordered pairs restricted by label agreement.

    ``pairs`` is "all", "within-phoneme" (equal labels) or "cross-phoneme"
    (different labels). Returns None when no pair survives the filter.
    """
    if pairs not in ("all", "within-phoneme", "cross-phoneme"):
        raise ConfigError(f"unknown pair filter: {pairs!r}")
    if len(vectors) != len(labels):
        raise DimensionError("vectors and labels must have equal length")
    if len(vectors) < 2:
        raise InsufficientDataError(f"need >= 2 vectors, got {len(vectors)}")
    unit = _unit_rows(vectors)
    gram = np.clip(unit @ unit.T, -1.0, 1.0)
    lab = np.asarray(labels, dtype=object)
    same = lab[:, None] == lab[None, :]
    iu = np.triu_indices(len(vectors), k=1)
    values = gram[iu]
    if pairs == "within-phoneme":
        values = values[same[iu]]
    elif pairs == "cross-phoneme":
        values = values[~same[iu]]
    if values.size == 0:
        return None
    return float(values.mean())


@dataclass(frozen=True)
class SynthInventory:
    homograph: str
    counts: dict[str, int]  # phoneme -> record count, insertion order kept


@dataclass(frozen=True)
class SynthSpec:
    """Deterministic synthetic-store parameters for model-free testing."""

    dim: int
    noise_sigma: float
    class_separation: float
    inventories: tuple[SynthInventory, ...]
    seed: int
    pooling: PoolingStrategy = PoolingStrategy.LAST_LAYER
    model_id: str = "synthetic"

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ConfigError(f"dim must be >= 1, got {self.dim}")
        if not math.isfinite(self.noise_sigma) or self.noise_sigma < 0:
            raise ConfigError(f"noise_sigma must be finite and >= 0, got {self.noise_sigma}")
        if not math.isfinite(self.class_separation) or self.class_separation < 0:
            raise ConfigError(
                f"class_separation must be finite and >= 0, got {self.class_separation}"
            )
        for inv in self.inventories:
            for phoneme, count in inv.counts.items():
                if count < 0:
                    raise ConfigError(
                        f"negative count for {inv.homograph!r}/{phoneme!r}: {count}"
                    )


def load_synth_spec(path: str | Path) -> SynthSpec:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    try:
        inventories = tuple(
            SynthInventory(str(entry["homograph"]), {str(k): int(v) for k, v in entry["phonemes"].items()})
            for entry in raw["inventories"]
        )
        return SynthSpec(
            dim=int(raw["dim"]),
            noise_sigma=float(raw["noise_sigma"]),
            class_separation=float(raw["class_separation"]),
            inventories=inventories,
            seed=int(raw["seed"]),
            pooling=PoolingStrategy.from_tag(raw.get("pooling", "last_layer")),
            model_id=str(raw.get("model", "synthetic")),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(f"invalid synth spec {path}: {e}") from e


def _class_means(rng: np.random.Generator, dim: int, n_classes: int, separation: float) -> np.ndarray:
    """Scaled random unit directions with pairwise distance >= separation."""
    if separation == 0.0:
        return np.zeros((n_classes, dim))
    while True:
        raw = rng.standard_normal((n_classes, dim))
        norms = np.linalg.norm(raw, axis=1)
        if np.any(norms == 0):
            continue
        unit = raw / norms[:, None]
        if n_classes == 1:
            return unit * separation
        diffs = unit[:, None, :] - unit[None, :, :]
        dist = np.linalg.norm(diffs, axis=2)
        min_dist = float(dist[np.triu_indices(n_classes, k=1)].min())
        if min_dist < 1e-9:
            continue  # essentially collinear draw; retry on the same stream
        return unit * (separation / min_dist)


def generate_synthetic_store(spec: SynthSpec) -> EmbeddingStore:
    """Gaussian class clusters around separated means; fully seed-determined."""
    rng = np.random.default_rng(spec.seed)
    records: list[EmbeddingRecord] = []
    rid = 0
    for inv in spec.inventories:
        phonemes = list(inv.counts)
        if spec.dim < 2 and len(phonemes) >= 2 and spec.class_separation > 0:
            raise ConfigError(
                f"dim {spec.dim} cannot guarantee separation for {len(phonemes)} classes"
                f" of {inv.homograph!r}"
            )
        means = _class_means(rng, spec.dim, len(phonemes), spec.class_separation)
        for mean, phoneme in zip(means, phonemes):
            for _ in range(inv.counts[phoneme]):
                vector = mean + spec.noise_sigma * rng.standard_normal(spec.dim)
                records.append(EmbeddingRecord(rid, inv.homograph, phoneme, vector))
                rid += 1
    return EmbeddingStore.from_records(spec.dim, spec.pooling, spec.model_id, records)


def synthetic_dataset_tsv(spec: SynthSpec) -> str:
    """Companion TSV whose record ids align with generate_synthetic_store(spec)."""
    lines = ["\t".join(("homograph", "phoneme", "sentence"))]
    rid = 0
    for inv in spec.inventories:
        for phoneme, count in inv.counts.items():
            for _ in range(count):
                lines.append(f"{inv.homograph}\t{phoneme}\t{inv.homograph} sample sentence {rid}")
                rid += 1
    return "\n".join(lines) + "\n"
