"""Shared fixtures: a tiny randomly-initialized encoder with a local vocab.

Tests never touch the network; the checkpoint directory is built once per
session with a fixed torch seed so extraction output is reproducible.
"""

from __future__ import annotations

import json
from pathlib import Path

import pytest

VOCAB = (
    "[PAD]",
    "[UNK]",
    "[CLS]",
    "[SEP]",
    "[MASK]",
    "کرم",
    "سیر",
    "##ک",
    "در",
    "باغ",
    "است",
    "او",
    "به",
    "رفت",
    "امروز",
    "آب",
    "خورد",
    "##ها",
    "من",
    "دیدم",
)

HIDDEN_SIZE = 16
MAX_POSITIONS = 64


@pytest.fixture(scope="session")
def tiny_model_dir(tmp_path_factory) -> Path:
    import torch
    from transformers import BertConfig, BertModel

    target = tmp_path_factory.mktemp("tiny-encoder")
    (target / "vocab.txt").write_text("\n".join(VOCAB) + "\n", encoding="utf-8")
    (target / "tokenizer_config.json").write_text(
        json.dumps(
            {
                "tokenizer_class": "BertTokenizer",
                "do_lower_case": False,
                "strip_accents": False,
            }
        ),
        encoding="utf-8",
    )
    config = BertConfig(
        vocab_size=len(VOCAB),
        hidden_size=HIDDEN_SIZE,
        num_hidden_layers=4,
        num_attention_heads=2,
        intermediate_size=32,
        max_position_embeddings=MAX_POSITIONS,
    )
    torch.manual_seed(0)
    BertModel(config).save_pretrained(target)
    return target


@pytest.fixture(scope="session")
def tiny_tokenizer(tiny_model_dir):
    from transformers import AutoTokenizer

    return AutoTokenizer.from_pretrained(tiny_model_dir)


def write_dataset(path: Path, rows: list[tuple[str, str, str]]) -> Path:
    lines = ["homograph\tphoneme\tsentence"]
    lines.extend("\t".join(row) for row in rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


# One row per locate_homograph example class: a whole-word vocab entry,
# a word the tokenizer splits in two, and a sentence without its homograph.
EXAMPLE_ROWS = [
    ("کرم", "kerm", "کرم در باغ است"),
    ("سیرک", "sirk", "او به سیرک رفت"),
    ("کرم", "kerem", "او به باغ رفت"),
]
