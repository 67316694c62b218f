"""On-disk interchange formats, implemented independently of any consumer.

Input: UTF-8 tab-separated sentences, three columns ``homograph``,
``phoneme``, ``sentence``, with an optional single header line whose first
column is literally ``homograph``. Record ids are 0-based data-row order.

Output: ``hgd-emb/1`` line-delimited JSON, UTF-8, LF. Line 1 is the header
object ``{"format":"hgd-emb/1","dim":D,"pooling":...,"model":M}``; each
following line is ``{"id":I,"homograph":H,"phoneme":P,"vector":[...]}``.
Floats carry their shortest round-trip decimal form.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import DatasetParseError, ExtractionError

FORMAT_TAG = "hgd-emb/1"
COLUMNS = ("homograph", "phoneme", "sentence")


@dataclass(frozen=True)
class SentenceRecord:
    """One annotated sentence: surface form, pronunciation label, sentence text."""

    record_id: int
    homograph: str
    phoneme: str
    sentence: str


def parse_dataset(text: str) -> tuple[SentenceRecord, ...]:
    """Parse tab-separated records; raises DatasetParseError on malformed lines."""
    records: list[SentenceRecord] = []
    rid = 0
    for lineno, line in enumerate(text.splitlines(), start=1):
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
                raise DatasetParseError(f"line {lineno}: empty {name} field", line=lineno)
        records.append(SentenceRecord(rid, *fields))
        rid += 1
    return tuple(records)


def read_dataset(path: str | Path) -> tuple[SentenceRecord, ...]:
    return parse_dataset(Path(path).read_text(encoding="utf-8"))


def _dump(obj: dict) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def store_text(
    dim: int,
    pooling_tag: str,
    model_id: str,
    records: Iterable[tuple[SentenceRecord, Sequence[float]]],
) -> str:
    """Serialize (record, vector) pairs to ``hgd-emb/1`` text."""
    lines = [_dump({"format": FORMAT_TAG, "dim": dim, "pooling": pooling_tag, "model": model_id})]
    for rec, vector in records:
        values = [float(x) for x in vector]
        if len(values) != dim:
            raise ExtractionError(
                f"record {rec.record_id}: vector length {len(values)} does not match dim {dim}",
                record_id=rec.record_id,
            )
        if not all(math.isfinite(v) for v in values):
            raise ExtractionError(
                f"record {rec.record_id}: non-finite vector component",
                record_id=rec.record_id,
            )
        lines.append(
            _dump(
                {
                    "id": rec.record_id,
                    "homograph": rec.homograph,
                    "phoneme": rec.phoneme,
                    "vector": values,
                }
            )
        )
    return "\n".join(lines) + "\n"


def atomic_write_text(path: str | Path, text: str) -> None:
    """Write ``text`` to ``path`` via a temp file + rename in the same directory.

    A failed run never leaves a partial file at ``path``.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=path.name + ".", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise
