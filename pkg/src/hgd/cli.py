"""Command-line interface: deterministic subcommands wiring files to modules.

Exit codes: 0 success, 1 runtime error (single-line diagnostic on stderr),
2 usage error (argparse). All output files are written atomically, so a failed
run leaves no partial files and identical re-runs are byte-identical.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import dataset as ds
from . import embeddings as emb
from .classifiers import LabeledSet
from .classifiers.model_io import save_model
from .errors import ArgumentError, HomographNotFoundError, ToolkitError
from .experiments import (
    MODEL_NAMES,
    compute_metrics,
    default_model_specs,
    fit_model,
    predict_model,
    run_cosine_analysis,
    run_embedding_comparison,
    run_model_comparison,
)
from .util import atomic_write_text, csv_text, derive_seed, fmt_float

PROG = "hgd"


def _fraction(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0.0 <= value < 1.0:
        raise argparse.ArgumentTypeError(f"test fraction must be in [0, 1): {text}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text}")
    return value


def _model_list(text: str) -> tuple[str, ...]:
    names = tuple(part.strip() for part in text.split(",") if part.strip())
    if not names:
        raise argparse.ArgumentTypeError("empty model list")
    for name in names:
        if name not in MODEL_NAMES:
            raise argparse.ArgumentTypeError(
                f"unknown model {name!r} (choose from {', '.join(MODEL_NAMES)})"
            )
    if len(set(names)) != len(names):
        raise argparse.ArgumentTypeError(f"duplicate model in list: {text}")
    return names


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG, description="Homograph-disambiguation toolkit."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("stats", "Write dataset histograms and inventories as CSV files."),
        ("validate", "Write a dataset consistency report as CSV."),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--dataset", required=True, help="input TSV path")
        p.add_argument("--out-dir", required=True, help="output directory for CSV files")
        p.add_argument(
            "--normalize-arabic-yeh-kaf",
            action="store_true",
            help="map Arabic yeh/kaf codepoints to their Persian forms before parsing",
        )

    p = sub.add_parser("synth", help="Generate a synthetic embedding store.")
    p.add_argument("--spec", required=True, help="JSON generation spec path")
    p.add_argument("--out", required=True, help="output store path")

    p = sub.add_parser(
        "extract-check", help="Check an embedding store against its source dataset."
    )
    p.add_argument("--dataset", required=True, help="input TSV path")
    p.add_argument("--store", required=True, help="embedding store path")

    p = sub.add_parser("train", help="Train one classifier for one homograph.")
    p.add_argument("--dataset", required=True, help="input TSV path")
    p.add_argument("--store", required=True, help="embedding store path")
    p.add_argument("--homograph", required=True, help="homograph to train on")
    p.add_argument("--model", required=True, choices=sorted(MODEL_NAMES))
    p.add_argument("--out", required=True, help="output model path")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--test-fraction", type=_fraction, default=0.2)

    p = sub.add_parser(
        "compare-models", help="Evaluate classifiers per homograph and report means."
    )
    p.add_argument("--dataset", required=True, help="input TSV path")
    p.add_argument("--store", required=True, help="embedding store path")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument(
        "--models",
        type=_model_list,
        default=MODEL_NAMES,
        help="comma-separated subset of: " + ",".join(MODEL_NAMES),
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--test-fraction", type=_fraction, default=0.2)
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.add_argument(
        "--weighted",
        action="store_true",
        help="weight homographs by record count instead of uniformly",
    )

    p = sub.add_parser(
        "compare-embeddings",
        help="Compare two embedding stores with an identical classifier and splits.",
    )
    p.add_argument("--dataset", required=True, help="input TSV path")
    p.add_argument("--store-last", required=True, help="last-layer store path")
    p.add_argument("--store-avg4", required=True, help="averaged-last-four store path")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--test-fraction", type=_fraction, default=0.3)
    p.add_argument("--jobs", type=_positive_int, default=1)

    p = sub.add_parser(
        "cosine", help="Report per-homograph mean pairwise cosine and its histogram."
    )
    p.add_argument("--store", required=True, help="embedding store path")
    p.add_argument("--out", required=True, help="output CSV path (means)")
    p.add_argument(
        "--pairs",
        choices=("all", "within-phoneme", "cross-phoneme"),
        default="all",
        help="which within-homograph pairs enter the mean",
    )

    return parser


def _print_excluded(excluded) -> None:
    for homograph, reason in excluded:
        print(f"excluded: {homograph} ({reason})", file=sys.stderr)


def _cmd_stats(args: argparse.Namespace) -> int:
    d = ds.load_dataset(args.dataset, normalize=args.normalize_arabic_yeh_kaf)
    stats = ds.compute_stats(d)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    def hist_csv(hist: dict[int, int]) -> str:
        return csv_text(["key", "count"], [[str(k), str(hist[k])] for k in sorted(hist)])

    atomic_write_text(out_dir / "sentence_lengths.csv", hist_csv(stats.sentence_length_hist))
    atomic_write_text(
        out_dir / "homograph_positions.csv", hist_csv(stats.homograph_position_hist)
    )
    atomic_write_text(out_dir / "phoneme_counts.csv", hist_csv(stats.phoneme_count_dist))
    atomic_write_text(
        out_dir / "homograph_lengths.csv", hist_csv(stats.homograph_length_hist)
    )
    inventory_rows = [
        [inv.homograph, phoneme, str(inv.counts[phoneme])]
        for inv in stats.inventories
        for phoneme in inv.phonemes
    ]
    atomic_write_text(
        out_dir / "inventories.csv",
        csv_text(["homograph", "phoneme", "count"], inventory_rows),
    )
    summary_rows = [
        ["records", str(len(d.records))],
        ["homographs", str(len(d.index))],
        ["position_unresolved", str(stats.position_unresolved)],
    ]
    atomic_write_text(out_dir / "summary.csv", csv_text(["key", "count"], summary_rows))
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    d = ds.load_dataset(args.dataset, normalize=args.normalize_arabic_yeh_kaf)
    report = ds.validate(d)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = [
        [str(issue.record_id), issue.kind, issue.detail] for issue in report.issues
    ]
    atomic_write_text(
        out_dir / "validation.csv", csv_text(["record_id", "kind", "detail"], rows)
    )
    print(f"records={len(d.records)} issues={len(report.issues)}")
    return 0


def _cmd_synth(args: argparse.Namespace) -> int:
    spec = emb.load_synth_spec(args.spec)
    store = emb.generate_synthetic_store(spec)
    atomic_write_text(args.out, emb.write_store(store))
    return 0


def _cmd_extract_check(args: argparse.Namespace) -> int:
    d = ds.load_dataset(args.dataset)
    store = emb.load_store(args.store)
    for record in store.records:
        if record.record_id >= len(d.records):
            raise ArgumentError(
                f"store record {record.record_id} has no dataset counterpart"
            )
        source = d.records[record.record_id]
        if record.homograph != source.homograph:
            raise ArgumentError(
                f"record {record.record_id}: homograph mismatch "
                f"({record.homograph!r} vs dataset {source.homograph!r})"
            )
        if record.phoneme != source.phoneme:
            raise ArgumentError(
                f"record {record.record_id}: phoneme mismatch "
                f"({record.phoneme!r} vs dataset {source.phoneme!r})"
            )
    missing = len(d.records) - len(store.records)
    print(
        f"ok: covered={len(store.records)}/{len(d.records)} missing={missing} "
        f"dim={store.dim} pooling={store.pooling.value}"
    )
    return 0


def _cmd_train(args: argparse.Namespace) -> int:
    d = ds.load_dataset(args.dataset)
    store = emb.load_store(args.store)
    if args.homograph not in d.index:
        raise HomographNotFoundError(f"homograph not in dataset: {args.homograph!r}")
    missing = [rid for rid in d.index[args.homograph] if rid not in store.by_id]
    if missing:
        raise ArgumentError(
            f"store lacks vectors for records {missing[:20]} of {args.homograph!r}"
        )
    spec = ds.SplitSpec(test_fraction=args.test_fraction, seed=args.seed)
    train_ids, test_ids = ds.split(d, args.homograph, spec)
    train = LabeledSet.from_data(
        [store.by_id[i].vector for i in train_ids],
        [d.records[i].phoneme for i in train_ids],
    )
    # Same stream as compare-models, so a trained file reproduces one of its cells.
    seed = derive_seed(args.seed, args.homograph, args.model)
    model_spec = next(s for s in default_model_specs() if s.name == args.model)
    model = fit_model(model_spec, train, seed)
    save_model(model, args.out)
    line = f"trained {args.model} on {args.homograph}: train={len(train_ids)} test={len(test_ids)}"
    if test_ids:
        y_pred = [predict_model(model, store.by_id[i].vector) for i in test_ids]
        y_true = [d.records[i].phoneme for i in test_ids]
        line += f" accuracy={fmt_float(compute_metrics(y_true, y_pred).accuracy)}"
    print(line)
    return 0


def _cmd_compare_models(args: argparse.Namespace) -> int:
    d = ds.load_dataset(args.dataset)
    store = emb.load_store(args.store)
    report = run_model_comparison(
        d,
        store,
        models=default_model_specs(args.models),
        spec=ds.SplitSpec(test_fraction=args.test_fraction, seed=args.seed),
        jobs=args.jobs,
        weighted=args.weighted,
    )
    atomic_write_text(args.out, report.to_csv())
    _print_excluded(report.excluded)
    return 0


def _cmd_compare_embeddings(args: argparse.Namespace) -> int:
    d = ds.load_dataset(args.dataset)
    store_last = emb.load_store(args.store_last)
    store_avg4 = emb.load_store(args.store_avg4)
    report = run_embedding_comparison(
        d,
        store_last,
        store_avg4,
        spec=ds.SplitSpec(test_fraction=args.test_fraction, seed=args.seed),
        jobs=args.jobs,
    )
    atomic_write_text(args.out, report.to_csv())
    _print_excluded(report.excluded)
    return 0


def cosine_histogram_path(out: str | Path) -> Path:
    """Sibling path for the histogram CSV: report.csv -> report.hist.csv."""
    out = Path(out)
    return out.with_name(out.stem + ".hist" + out.suffix)


def _cmd_cosine(args: argparse.Namespace) -> int:
    store = emb.load_store(args.store)
    report = run_cosine_analysis(store, args.pairs)
    atomic_write_text(args.out, report.means_csv())
    atomic_write_text(cosine_histogram_path(args.out), report.histogram_csv())
    _print_excluded(report.excluded)
    return 0


_COMMANDS = {
    "stats": _cmd_stats,
    "validate": _cmd_validate,
    "synth": _cmd_synth,
    "extract-check": _cmd_extract_check,
    "train": _cmd_train,
    "compare-models": _cmd_compare_models,
    "compare-embeddings": _cmd_compare_embeddings,
    "cosine": _cmd_cosine,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ToolkitError, OSError) as e:
        message = " / ".join(str(e).splitlines()) or type(e).__name__
        print(f"error: {message}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
