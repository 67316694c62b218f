"""Shared fixture builders for the test suite."""

from __future__ import annotations

import contextlib
import io
from pathlib import Path

import pytest

from hgd.cli import main
from hgd.embeddings import (
    SynthInventory,
    SynthSpec,
    generate_synthetic_store,
    synthetic_dataset_tsv,
    write_store,
)


def make_inventories(shape: dict[int, int], per_phoneme: int) -> tuple[SynthInventory, ...]:
    """Inventories with `shape[k]` homographs of k phonemes, `per_phoneme` records each."""
    out = []
    idx = 0
    for n_phonemes in sorted(shape):
        for _ in range(shape[n_phonemes]):
            counts = {f"p{j}": per_phoneme for j in range(n_phonemes)}
            out.append(SynthInventory(homograph=f"w{idx:03d}", counts=counts))
            idx += 1
    return tuple(out)


def synth_fixture(
    tmp_path: Path,
    *,
    shape: dict[int, int],
    per_phoneme: int,
    dim: int = 8,
    separation: float = 8.0,
    sigma: float = 0.3,
    seed: int = 0,
    pooling: str = "last_layer",
    prefix: str = "fix",
) -> tuple[Path, Path]:
    """Write a synthetic dataset TSV and matching store; return their paths."""
    from hgd.embeddings import PoolingStrategy

    spec = SynthSpec(
        dim=dim,
        noise_sigma=sigma,
        class_separation=separation,
        inventories=make_inventories(shape, per_phoneme),
        seed=seed,
        pooling=PoolingStrategy(pooling),
    )
    dataset_path = tmp_path / f"{prefix}.tsv"
    store_path = tmp_path / f"{prefix}.emb"
    dataset_path.write_text(synthetic_dataset_tsv(spec), encoding="utf-8")
    store_path.write_text(write_store(generate_synthetic_store(spec)), encoding="utf-8")
    return dataset_path, store_path


def run_cli(argv: list[str]) -> tuple[int, str, str]:
    """Invoke the CLI in-process; returns (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            code = main(argv)
        except SystemExit as e:  # argparse usage errors / --help
            code = e.code if isinstance(e.code, int) else 0
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def small_pipeline(tmp_path):
    """Dataset + separable store with 2/3-phoneme homographs, ready for the CLI."""
    return synth_fixture(
        tmp_path, shape={2: 3, 3: 1}, per_phoneme=10, separation=8.0, sigma=0.4
    )
