"""Span location against real tokenizer offsets and hand-built mappings."""

from __future__ import annotations

import pytest

from hgd_extractor import ConfigError, TokenSpan, locate_homograph


def offsets_for(tokenizer, sentence: str) -> list[tuple[int, int]]:
    enc = tokenizer(sentence, return_offsets_mapping=True)
    return [tuple(pair) for pair in enc["offset_mapping"]]


class TestTokenSpan:
    def test_length(self):
        assert len(TokenSpan(2, 5)) == 3

    @pytest.mark.parametrize("start,end", [(-1, 2), (3, 3), (4, 2)])
    def test_invalid_ranges_rejected(self, start, end):
        with pytest.raises(ConfigError, match="invalid span"):
            TokenSpan(start, end)


class TestLocateHomograph:
    def test_single_subword_word(self, tiny_tokenizer):
        sentence = "کرم در باغ است"
        span = locate_homograph(sentence, "کرم", offsets_for(tiny_tokenizer, sentence))
        assert span == TokenSpan(1, 2)
        tokens = tiny_tokenizer.tokenize(sentence)
        assert tokens[0] == "کرم"

    def test_word_split_into_two_subwords(self, tiny_tokenizer):
        sentence = "او به سیرک رفت"
        assert tiny_tokenizer.tokenize("سیرک") == ["سیر", "##ک"]
        span = locate_homograph(sentence, "سیرک", offsets_for(tiny_tokenizer, sentence))
        assert span is not None and len(span) == 2
        assert span == TokenSpan(3, 5)

    def test_absent_homograph_returns_none(self, tiny_tokenizer):
        sentence = "او به باغ رفت"
        assert locate_homograph(sentence, "کرم", offsets_for(tiny_tokenizer, sentence)) is None

    def test_first_occurrence_wins(self, tiny_tokenizer):
        sentence = "کرم در باغ کرم است"
        span = locate_homograph(sentence, "کرم", offsets_for(tiny_tokenizer, sentence))
        assert span == TokenSpan(1, 2)

    def test_occurrence_inside_longer_word(self, tiny_tokenizer):
        sentence = "کرمها در باغ است"
        assert tiny_tokenizer.tokenize("کرمها") == ["کرم", "##ها"]
        span = locate_homograph(sentence, "کرم", offsets_for(tiny_tokenizer, sentence))
        assert span == TokenSpan(1, 2)

    def test_special_token_offsets_never_selected(self):
        # Hand-built mapping in the shape fast tokenizers produce:
        # zero-width specials at both ends.
        offsets = [(0, 0), (0, 3), (4, 7), (0, 0)]
        span = locate_homograph("abc def", "abc", offsets)
        assert span == TokenSpan(1, 2)

    def test_range_covered_by_no_token_returns_none(self):
        # Occurrence past the last mapped character, as after truncation.
        offsets = [(0, 0), (0, 3), (0, 0)]
        assert locate_homograph("abc def", "def", offsets) is None

    def test_multi_token_cover_is_minimal(self):
        offsets = [(0, 0), (0, 2), (2, 4), (4, 6), (0, 0)]
        span = locate_homograph("abcdef", "cde", offsets)
        assert span == TokenSpan(2, 4)
