"""Character-to-subword alignment for locating a homograph inside a sentence."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ConfigError


@dataclass(frozen=True)
class TokenSpan:
    """Half-open subword index range [start, end)."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if not (0 <= self.start < self.end):
            raise ConfigError(f"invalid span: [{self.start}, {self.end})")

    def __len__(self) -> int:
        return self.end - self.start


def locate_homograph(
    sentence: str, homograph: str, offsets: Sequence[tuple[int, int]]
) -> TokenSpan | None:
    """Minimal subword span covering the first occurrence of ``homograph``.

    ``offsets`` maps each token to its character range in ``sentence``;
    zero-width entries (special tokens, padding) never participate. Returns
    None when the homograph does not occur, or when no token overlaps its
    character range (e.g. the occurrence fell beyond tokenizer truncation).
    """
    char_start = sentence.find(homograph)
    if char_start < 0:
        return None
    char_end = char_start + len(homograph)
    covering = [
        i
        for i, (ts, te) in enumerate(offsets)
        if ts < te and ts < char_end and te > char_start
    ]
    if not covering:
        return None
    return TokenSpan(covering[0], covering[-1] + 1)
