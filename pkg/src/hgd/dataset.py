"""Homograph dataset: parsing, validation, statistics, and train/test splits.

On-disk format: UTF-8 text, LF line endings, three tab-separated columns
``homograph``, ``phoneme``, ``sentence``, with an optional single header line
whose first column is literally ``homograph``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, TextIO

import numpy as np

from .errors import (
    DatasetParseError,
    EncodingError,
    HomographNotFoundError,
    SplitError,
)
from .util import derive_seed

COLUMNS = ("homograph", "phoneme", "sentence")

# Arabic-presentation codepoints frequently mixed into Persian text.
_ARABIC_YEH, _FARSI_YEH = "ي", "ی"
_ARABIC_KAF, _FARSI_KAF = "ك", "ک"


def normalize_arabic_yeh_kaf(text: str) -> str:
    """Map Arabic yeh (U+064A) and kaf (U+0643) to their Persian forms."""
    return text.replace(_ARABIC_YEH, _FARSI_YEH).replace(_ARABIC_KAF, _FARSI_KAF)


@dataclass(frozen=True)
class HomographRecord:
    """One annotated sentence: surface form, pronunciation label, sentence text."""

    record_id: int
    homograph: str
    phoneme: str
    sentence: str


@dataclass(frozen=True)
class Dataset:
    records: tuple[HomographRecord, ...]
    # homograph -> record ids in file order
    index: dict[str, tuple[int, ...]] = field(compare=False)

    @staticmethod
    def from_records(records: Iterable[HomographRecord]) -> "Dataset":
        records = tuple(records)
        index: dict[str, list[int]] = {}
        for rec in records:
            index.setdefault(rec.homograph, []).append(rec.record_id)
        return Dataset(records, {h: tuple(ids) for h, ids in index.items()})

    def record(self, record_id: int) -> HomographRecord:
        return self.records[record_id]

    def __len__(self) -> int:
        return len(self.records)


@dataclass(frozen=True)
class PhonemeInventory:
    """Distinct phoneme labels of one homograph with per-label sentence counts."""

    homograph: str
    phonemes: tuple[str, ...]  # first-appearance order
    counts: dict[str, int]


@dataclass(frozen=True)
class DatasetStats:
    sentence_length_hist: dict[int, int]
    homograph_position_hist: dict[int, int]
    phoneme_count_dist: dict[int, int]
    homograph_length_hist: dict[int, int]
    position_unresolved: int
    inventories: tuple[PhonemeInventory, ...]


@dataclass(frozen=True)
class ValidationIssue:
    record_id: int
    kind: str  # "homograph-absent" | "duplicate" | "single-phoneme"
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[ValidationIssue, ...]


@dataclass(frozen=True)
class SplitSpec:
    """Deterministic split parameters. Both paper fractions occur: 0.3 and 0.2."""

    test_fraction: float
    seed: int = 0
    stratified: bool = True

    def __post_init__(self) -> None:
        if not (0.0 <= self.test_fraction < 1.0):
            raise SplitError(f"test_fraction must be in [0, 1), got {self.test_fraction}")


def parse_dataset(source: str | TextIO | Iterable[str], *, normalize: bool = False) -> Dataset:
    """Parse tab-separated records into a Dataset.

    Raises DatasetParseError with the 1-based line number on a malformed
    line (wrong column count, empty field after trimming).
    """
    if isinstance(source, str):
        lines: Iterable[str] = source.splitlines()
    else:
        lines = (ln.rstrip("\n") for ln in source)

    records: list[HomographRecord] = []
    rid = 0
    for lineno, line in enumerate(lines, start=1):
        if lineno == 1 and line.split("\t")[0].strip() == "homograph":
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise DatasetParseError(
                f"line {lineno}: expected 3 tab-separated columns, got {len(parts)}",
                line=lineno,
            )
        fields = [p.strip() for p in parts]
        for name, value in zip(COLUMNS, fields):
            if not value:
                raise DatasetParseError(
                    f"line {lineno}: empty {name} field", line=lineno, column=name
                )
        homograph, phoneme, sentence = fields
        if normalize:
            homograph = normalize_arabic_yeh_kaf(homograph)
            sentence = normalize_arabic_yeh_kaf(sentence)
        records.append(HomographRecord(rid, homograph, phoneme, sentence))
        rid += 1
    return Dataset.from_records(records)


def load_dataset(path: str | Path, *, normalize: bool = False) -> Dataset:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise EncodingError(f"{path}: not valid UTF-8 ({e.reason} at byte {e.start})") from e
    return parse_dataset(text, normalize=normalize)


def dataset_to_tsv(d: Dataset) -> str:
    """Serialize with a header line; parse(dataset_to_tsv(d)) == d."""
    lines = ["\t".join(COLUMNS)]
    lines.extend(f"{r.homograph}\t{r.phoneme}\t{r.sentence}" for r in d.records)
    return "\n".join(lines) + "\n"


def inventories(d: Dataset) -> tuple[PhonemeInventory, ...]:
    """Per-homograph phoneme inventories, homographs in file order."""
    out = []
    for homograph, ids in d.index.items():
        counts: dict[str, int] = {}
        for rid in ids:
            ph = d.records[rid].phoneme
            counts[ph] = counts.get(ph, 0) + 1
        out.append(PhonemeInventory(homograph, tuple(counts), counts))
    return tuple(out)


def validate(d: Dataset) -> ValidationReport:
    """Advisory checks; never fails and never mutates the dataset."""
    issues: list[ValidationIssue] = []
    for rec in d.records:
        if rec.homograph not in rec.sentence:
            issues.append(
                ValidationIssue(rec.record_id, "homograph-absent", rec.homograph)
            )
    seen: dict[tuple[str, str, str], int] = {}
    for rec in d.records:
        key = (rec.homograph, rec.phoneme, rec.sentence)
        if key in seen:
            issues.append(
                ValidationIssue(rec.record_id, "duplicate", f"duplicate of record {seen[key]}")
            )
        else:
            seen[key] = rec.record_id
    for inv in inventories(d):
        if len(inv.phonemes) == 1:
            first_id = d.index[inv.homograph][0]
            issues.append(
                ValidationIssue(first_id, "single-phoneme", inv.homograph)
            )
    return ValidationReport(tuple(issues))


def _homograph_position(sentence: str, homograph: str) -> int | None:
    """0-based index of the first token equal to, else containing, the homograph."""
    tokens = sentence.split()
    for i, tok in enumerate(tokens):
        if tok == homograph:
            return i
    for i, tok in enumerate(tokens):
        if homograph in tok:
            return i
    return None


def compute_stats(d: Dataset) -> DatasetStats:
    """Token counts use plain whitespace splitting; lengths are Unicode scalar counts."""
    sentence_length_hist: dict[int, int] = {}
    homograph_position_hist: dict[int, int] = {}
    position_unresolved = 0
    for rec in d.records:
        n_tokens = len(rec.sentence.split())
        sentence_length_hist[n_tokens] = sentence_length_hist.get(n_tokens, 0) + 1
        pos = _homograph_position(rec.sentence, rec.homograph)
        if pos is None:
            position_unresolved += 1
        else:
            homograph_position_hist[pos] = homograph_position_hist.get(pos, 0) + 1

    invs = inventories(d)
    phoneme_count_dist: dict[int, int] = {}
    homograph_length_hist: dict[int, int] = {}
    for inv in invs:
        k = len(inv.phonemes)
        phoneme_count_dist[k] = phoneme_count_dist.get(k, 0) + 1
        length = len(inv.homograph)
        homograph_length_hist[length] = homograph_length_hist.get(length, 0) + 1

    return DatasetStats(
        sentence_length_hist=sentence_length_hist,
        homograph_position_hist=homograph_position_hist,
        phoneme_count_dist=phoneme_count_dist,
        homograph_length_hist=homograph_length_hist,
        position_unresolved=position_unresolved,
        inventories=invs,
    )


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def split(d: Dataset, homograph: str, spec: SplitSpec) -> tuple[list[int], list[int]]:
    """Deterministic (train_ids, test_ids) partition of one homograph's records.

    Stratified mode keeps every phoneme with >= 2 records on both sides
    (unless test_fraction is 0, which sends everything to train). Output id
    lists are sorted ascending.
    """
    ids = d.index.get(homograph)
    if ids is None:
        raise HomographNotFoundError(f"homograph not in dataset: {homograph!r}")
    rng = np.random.default_rng(derive_seed(spec.seed, "split", homograph))

    test_ids: list[int] = []
    if spec.stratified:
        buckets: dict[str, list[int]] = {}
        for rid in ids:
            buckets.setdefault(d.records[rid].phoneme, []).append(rid)
        for phoneme in sorted(buckets):
            bucket = buckets[phoneme]
            count = len(bucket)
            n_test = _round_half_up(spec.test_fraction * count)
            # lower clamp guarantees both-side presence; it only engages for
            # a nonzero fraction so test_fraction 0 yields an empty test side
            lower = 1 if (count >= 2 and spec.test_fraction > 0.0) else 0
            n_test = min(max(n_test, lower), count - 1)
            perm = rng.permutation(count)
            test_ids.extend(bucket[i] for i in perm[:n_test])
    else:
        count = len(ids)
        n_test = min(_round_half_up(spec.test_fraction * count), count)
        perm = rng.permutation(count)
        test_ids.extend(ids[i] for i in perm[:n_test])

    test_set = set(test_ids)
    train_ids = sorted(rid for rid in ids if rid not in test_set)
    if not train_ids:
        raise SplitError(
            f"test_fraction {spec.test_fraction} leaves no training records for {homograph!r}"
        )
    return train_ids, sorted(test_ids)
