"""Command-line entry point: embed a dataset into an ``hgd-emb/1`` store."""

from __future__ import annotations

import argparse
import sys

from .errors import ExtractorError
from .extract import DEFAULT_MODEL_ID, ExtractionConfig, Scope, extract
from .formats import read_dataset
from .pooling import PoolingStrategy


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="extract",
        description="Embed homograph sentences with a transformer encoder "
        "and write an hgd-emb/1 store.",
    )
    parser.add_argument("--dataset", required=True, help="tab-separated sentence file")
    parser.add_argument("--out", required=True, help="output store path")
    parser.add_argument(
        "--pooling",
        required=True,
        choices=[p.value for p in PoolingStrategy],
        help="hidden-state pooling strategy",
    )
    parser.add_argument(
        "--model",
        default=DEFAULT_MODEL_ID,
        help=f"encoder checkpoint id or local path (default: {DEFAULT_MODEL_ID})",
    )
    parser.add_argument(
        "--scope",
        choices=[s.value for s in Scope],
        default=Scope.HOMOGRAPH_SPAN.value,
        help="token range to pool (default: homograph_span)",
    )
    parser.add_argument(
        "--batch-size", type=_positive_int, default=8, help="sentences per forward pass"
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = ExtractionConfig(
        model_id=args.model,
        pooling=PoolingStrategy.from_tag(args.pooling),
        batch_size=args.batch_size,
        scope=Scope.from_tag(args.scope),
    )
    try:
        records = read_dataset(args.dataset)
        summary = extract(records, cfg, args.out)
    except (ExtractorError, OSError) as e:
        message = " ".join(str(e).split())
        print(f"error: {message}", file=sys.stderr)
        return 1
    for skip in summary.skipped:
        print(f"skipped: record {skip.record_id} ({skip.reason})", file=sys.stderr)
    print(
        f"written={summary.written} skipped={len(summary.skipped)} "
        f"dim={summary.dim} pooling={summary.pooling.value}"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
