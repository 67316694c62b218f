"""Shared plumbing: stable seed derivation, atomic writes, CSV helpers."""

from __future__ import annotations

import csv
import hashlib
import io
import math
import os
import tempfile
from pathlib import Path
from typing import Iterable, Sequence


def derive_seed(*parts: object) -> int:
    """Derive a 64-bit seed from a tuple of ints/strings.

    Stable across processes and platforms (unlike ``hash()``), so parallel
    workers keyed by (seed, homograph, model) reproduce the same streams.
    """
    h = hashlib.sha256()
    for part in parts:
        h.update(repr(part).encode("utf-8"))
        h.update(b"\x1f")
    return int.from_bytes(h.digest()[:8], "little")


def fmt_float(x: float) -> str:
    """Shortest round-trip decimal representation of a finite float."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"non-finite value: {x}")
    return repr(x)


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


def csv_text(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    """Render rows as CSV with LF line endings. Fields must be pre-stringified."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(header))
    for row in rows:
        writer.writerow(list(row))
    return buf.getvalue()


def write_csv(path: str | Path, header: Sequence[str], rows: Iterable[Sequence[str]]) -> None:
    atomic_write_text(path, csv_text(header, rows))
