"""Evaluation metrics and the three comparison analyses.

All runners are pure functions of their inputs: per-homograph work may run on
a thread pool, but seeds derive from (report seed, homograph, model name) and
reports are assembled in sorted order, so outputs are schedule-independent.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .classifiers import (
    LabeledSet,
    forest_fit,
    forest_predict,
    knn_fit,
    knn_predict,
    logreg_defaults,
    logreg_fit,
    logreg_predict,
    mlp_defaults,
    mlp_fit,
    mlp_predict,
    ridge_fit,
    ridge_predict,
)
from .classifiers.model_io import AnyModel
from .dataset import Dataset, SplitSpec, split
from .embeddings import EmbeddingStore, mean_pairwise_cosine_filtered
from .errors import ArgumentError, DegenerateVectorError, SplitError
from .util import csv_text, derive_seed, fmt_float

MODEL_NAMES = ("forest", "knn", "logreg", "mlp", "ridge")


@dataclass(frozen=True)
class Metrics:
    accuracy: float
    precision_macro: float
    recall_macro: float
    f1_macro: float
    support: int


def compute_metrics(y_true: Sequence[str], y_pred: Sequence[str]) -> Metrics:
    """Accuracy plus macro precision/recall/F1 over labels present in y_true.

    A per-label precision with zero denominator contributes 0; F1 is 0 when
    precision and recall are both 0.
    """
    if len(y_true) == 0:
        raise ArgumentError("empty label arrays")
    if len(y_true) != len(y_pred):
        raise ArgumentError(f"length mismatch: {len(y_true)} vs {len(y_pred)}")
    y_true = [str(v) for v in y_true]
    y_pred = [str(v) for v in y_pred]
    labels = sorted(set(y_true))
    accuracy = sum(t == p for t, p in zip(y_true, y_pred)) / len(y_true)
    precisions, recalls, f1s = [], [], []
    for label in labels:
        tp = sum(1 for t, p in zip(y_true, y_pred) if t == label and p == label)
        fp = sum(1 for t, p in zip(y_true, y_pred) if t != label and p == label)
        fn = sum(1 for t, p in zip(y_true, y_pred) if t == label and p != label)
        precision = tp / (tp + fp) if (tp + fp) > 0 else 0.0
        recall = tp / (tp + fn) if (tp + fn) > 0 else 0.0
        f1 = (2 * precision * recall / (precision + recall)) if (precision + recall) > 0 else 0.0
        precisions.append(precision)
        recalls.append(recall)
        f1s.append(f1)
    k = len(labels)
    return Metrics(
        accuracy=accuracy,
        precision_macro=sum(precisions) / k,
        recall_macro=sum(recalls) / k,
        f1_macro=sum(f1s) / k,
        support=len(y_true),
    )


@dataclass(frozen=True)
class ModelSpec:
    """One classifier configuration; defaults follow the published setup."""

    name: str  # knn | logreg | ridge | mlp | forest
    k: int = 7
    alpha: float = 1.0
    hidden: tuple[int, int] = (100, 100)
    n_trees: int = 100

    def __post_init__(self) -> None:
        if self.name not in MODEL_NAMES:
            raise ArgumentError(f"unknown model name: {self.name!r}")


def default_model_specs(names: Sequence[str] | None = None) -> tuple[ModelSpec, ...]:
    names = tuple(names) if names is not None else MODEL_NAMES
    return tuple(ModelSpec(name) for name in sorted(names))


def fit_model(spec: ModelSpec, train: LabeledSet, seed: int) -> AnyModel:
    if spec.name == "knn":
        return knn_fit(train, spec.k)
    if spec.name == "logreg":
        return logreg_fit(train, logreg_defaults(seed))
    if spec.name == "ridge":
        return ridge_fit(train, spec.alpha)
    if spec.name == "mlp":
        return mlp_fit(train, mlp_defaults(seed), spec.hidden)
    return forest_fit(train, spec.n_trees, seed)


def predict_model(model: AnyModel, x: np.ndarray) -> str:
    predictors: dict[str, Callable] = {
        "KnnModel": knn_predict,
        "LogRegModel": logreg_predict,
        "RidgeModel": ridge_predict,
        "MlpModel": mlp_predict,
        "ForestModel": forest_predict,
    }
    return predictors[type(model).__name__](model, x)


def _sets_for_split(
    d: Dataset, store: EmbeddingStore, train_ids: list[int], test_ids: list[int]
) -> tuple[LabeledSet, np.ndarray, list[str]]:
    X_train = np.asarray([store.by_id[i].vector for i in train_ids])
    y_train = [d.records[i].phoneme for i in train_ids]
    X_test = np.asarray([store.by_id[i].vector for i in test_ids])
    y_test = [d.records[i].phoneme for i in test_ids]
    return LabeledSet.from_data(X_train, y_train), X_test, y_test


def _coverage(d: Dataset, store: EmbeddingStore, homograph: str) -> bool:
    return all(rid in store.by_id for rid in d.index[homograph])


@dataclass(frozen=True)
class ModelComparisonReport:
    rows: tuple[tuple[str, Metrics], ...]  # (model name, mean metrics), name-sorted
    per_homograph: dict[str, dict[str, Metrics]] = field(compare=False)
    excluded: tuple[tuple[str, str], ...] = ()
    test_fraction: float = 0.2
    seed: int = 0
    store_id: str = ""
    n_homographs: int = 0
    weighted: bool = False

    def to_csv(self) -> str:
        rows = [
            [
                name,
                fmt_float(m.accuracy),
                fmt_float(m.recall_macro),
                fmt_float(m.f1_macro),
                fmt_float(m.precision_macro),
                str(self.n_homographs),
            ]
            for name, m in self.rows
        ]
        return csv_text(["model", "accuracy", "recall", "f1", "precision", "homographs"], rows)


def _mean_metrics(per_h: dict[str, Metrics], weights: dict[str, float]) -> Metrics:
    total = sum(weights[h] for h in per_h)
    acc = sum(per_h[h].accuracy * weights[h] for h in per_h) / total
    prec = sum(per_h[h].precision_macro * weights[h] for h in per_h) / total
    rec = sum(per_h[h].recall_macro * weights[h] for h in per_h) / total
    f1 = sum(per_h[h].f1_macro * weights[h] for h in per_h) / total
    support = sum(per_h[h].support for h in per_h)
    return Metrics(acc, prec, rec, f1, support)


def _run_jobs(jobs: int, work: Callable, keys: Sequence[str]) -> dict:
    if jobs <= 1:
        return {key: work(key) for key in keys}
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return dict(zip(keys, pool.map(work, keys)))


def run_model_comparison(
    d: Dataset,
    store: EmbeddingStore,
    models: Sequence[ModelSpec] | None = None,
    spec: SplitSpec | None = None,
    *,
    jobs: int = 1,
    weighted: bool = False,
) -> ModelComparisonReport:
    """Per-homograph 80/20 train/eval of every requested model."""
    spec = spec if spec is not None else SplitSpec(test_fraction=0.2, seed=0)
    models = tuple(models) if models is not None else default_model_specs()
    models = tuple(sorted(models, key=lambda m: m.name))

    excluded: list[tuple[str, str]] = []
    eligible: list[str] = []
    for homograph in sorted(d.index):
        phonemes = {d.records[rid].phoneme for rid in d.index[homograph]}
        if len(phonemes) < 2:
            excluded.append((homograph, "single-phoneme"))
        elif not _coverage(d, store, homograph):
            excluded.append((homograph, "missing-vectors"))
        else:
            eligible.append(homograph)
    if not eligible:
        raise ArgumentError("no homograph is covered by both the dataset and the store")

    def work(homograph: str) -> dict[str, Metrics] | str:
        try:
            train_ids, test_ids = split(d, homograph, spec)
        except SplitError as e:
            return f"split-failed: {e}"
        if not test_ids:
            return "empty-test"
        train, X_test, y_test = _sets_for_split(d, store, train_ids, test_ids)
        out: dict[str, Metrics] = {}
        for model_spec in models:
            seed = derive_seed(spec.seed, homograph, model_spec.name)
            model = fit_model(model_spec, train, seed)
            y_pred = [predict_model(model, x) for x in X_test]
            out[model_spec.name] = compute_metrics(y_test, y_pred)
        return out

    results = _run_jobs(jobs, work, eligible)
    per_homograph: dict[str, dict[str, Metrics]] = {}
    for homograph in eligible:
        outcome = results[homograph]
        if isinstance(outcome, str):
            excluded.append((homograph, outcome))
        else:
            per_homograph[homograph] = outcome
    if not per_homograph:
        raise ArgumentError("every homograph was excluded; nothing to compare")

    weights = {
        h: float(len(d.index[h])) if weighted else 1.0 for h in per_homograph
    }
    rows = tuple(
        (m.name, _mean_metrics({h: per_homograph[h][m.name] for h in per_homograph}, weights))
        for m in models
    )
    return ModelComparisonReport(
        rows=rows,
        per_homograph=per_homograph,
        excluded=tuple(sorted(excluded)),
        test_fraction=spec.test_fraction,
        seed=spec.seed,
        store_id=store.model_id,
        n_homographs=len(per_homograph),
        weighted=weighted,
    )


@dataclass(frozen=True)
class EmbeddingComparisonReport:
    # (phoneme_count, store role) -> (mean accuracy, homograph count)
    cells: tuple[tuple[int, str, float, int], ...]
    excluded: tuple[tuple[str, str], ...] = ()
    test_fraction: float = 0.3
    seed: int = 0

    def to_csv(self) -> str:
        rows = [
            [str(count), role, fmt_float(acc), str(n)]
            for count, role, acc, n in self.cells
        ]
        return csv_text(["phoneme_count", "store", "mean_accuracy", "homographs"], rows)


STORE_ROLE_LAST = "last_layer"
STORE_ROLE_AVG4 = "avg_last4"


def run_embedding_comparison(
    d: Dataset,
    store_last: EmbeddingStore,
    store_avg4: EmbeddingStore,
    spec: SplitSpec | None = None,
    *,
    jobs: int = 1,
) -> EmbeddingComparisonReport:
    """MLP test accuracy per phoneme-count group, same split ids for both stores."""
    spec = spec if spec is not None else SplitSpec(test_fraction=0.3, seed=0)
    ids_last = set(store_last.by_id)
    ids_avg4 = set(store_avg4.by_id)
    if ids_last != ids_avg4:
        missing = sorted(ids_last ^ ids_avg4)
        raise ArgumentError(
            f"stores cover different record ids; mismatched ids: {missing[:20]}"
            + ("..." if len(missing) > 20 else "")
        )

    excluded: list[tuple[str, str]] = []
    eligible: list[str] = []
    group_of: dict[str, int] = {}
    for homograph in sorted(d.index):
        phonemes = {d.records[rid].phoneme for rid in d.index[homograph]}
        if len(phonemes) < 2:
            excluded.append((homograph, "single-phoneme"))
        elif not _coverage(d, store_last, homograph):
            excluded.append((homograph, "missing-vectors"))
        else:
            eligible.append(homograph)
            group_of[homograph] = len(phonemes)
    if not eligible:
        raise ArgumentError("no homograph is covered by the dataset and both stores")

    def work(homograph: str) -> tuple[float, float] | str:
        try:
            train_ids, test_ids = split(d, homograph, spec)
        except SplitError as e:
            return f"split-failed: {e}"
        if not test_ids:
            return "empty-test"
        seed = derive_seed(spec.seed, homograph, "mlp")
        accuracies = []
        for store in (store_last, store_avg4):
            train, X_test, y_test = _sets_for_split(d, store, train_ids, test_ids)
            model = mlp_fit(train, mlp_defaults(seed))
            y_pred = [mlp_predict(model, x) for x in X_test]
            accuracies.append(compute_metrics(y_test, y_pred).accuracy)
        return accuracies[0], accuracies[1]

    results = _run_jobs(jobs, work, eligible)
    by_group: dict[int, list[tuple[float, float]]] = {}
    for homograph in eligible:
        outcome = results[homograph]
        if isinstance(outcome, str):
            excluded.append((homograph, outcome))
        else:
            by_group.setdefault(group_of[homograph], []).append(outcome)

    cells: list[tuple[int, str, float, int]] = []
    for count in sorted(by_group):
        pairs = by_group[count]
        acc_last = sum(p[0] for p in pairs) / len(pairs)
        acc_avg4 = sum(p[1] for p in pairs) / len(pairs)
        for role, acc in sorted(
            ((STORE_ROLE_LAST, acc_last), (STORE_ROLE_AVG4, acc_avg4))
        ):
            cells.append((count, role, acc, len(pairs)))
    return EmbeddingComparisonReport(
        cells=tuple(cells),
        excluded=tuple(sorted(excluded)),
        test_fraction=spec.test_fraction,
        seed=spec.seed,
    )


HISTOGRAM_BINS = 20


def _bin_edges() -> np.ndarray:
    return np.asarray([(k - 10) / 10 for k in range(HISTOGRAM_BINS + 1)])


@dataclass(frozen=True)
class CosineReport:
    means: tuple[tuple[str, float], ...]  # homograph -> mean pairwise cosine, sorted
    histogram: tuple[int, ...]  # 20 bins over [-1, 1]
    pooling: str
    excluded: tuple[tuple[str, str], ...] = ()
    pairs: str = "all"

    def means_csv(self) -> str:
        return csv_text(
            ["homograph", "mean_cosine"],
            [[h, fmt_float(v)] for h, v in self.means],
        )

    def histogram_csv(self) -> str:
        edges = _bin_edges()
        rows = [
            [fmt_float(edges[i]), fmt_float(edges[i + 1]), str(count)]
            for i, count in enumerate(self.histogram)
        ]
        return csv_text(["bin_left", "bin_right", "count"], rows)


def run_cosine_analysis(store: EmbeddingStore, pairs: str = "all") -> CosineReport:
    """Per-homograph mean pairwise cosine plus a 20-bin histogram of the means.

    Bins are left-closed right-open over [-1, 1] with the last bin closed.
    Homographs with fewer than 2 records (or no pair under the filter) are
    excluded and listed.
    """
    means: list[tuple[str, float]] = []
    excluded: list[tuple[str, str]] = []
    for homograph in sorted(store.index):
        ids = store.index[homograph]
        if len(ids) < 2:
            excluded.append((homograph, "fewer-than-2-records"))
            continue
        vectors = [store.by_id[rid].vector for rid in ids]
        labels = [store.by_id[rid].phoneme for rid in ids]
        try:
            value = mean_pairwise_cosine_filtered(vectors, labels, pairs)
        except DegenerateVectorError as e:
            rid = ids[e.index] if e.index is not None else None
            raise DegenerateVectorError(
                f"zero-norm vector in store record {rid}", index=rid
            ) from e
        if value is None:
            excluded.append((homograph, f"no-pairs-under-{pairs}"))
            continue
        means.append((homograph, value))

    edges = _bin_edges()
    histogram = [0] * HISTOGRAM_BINS
    for _, value in means:
        idx = int(np.searchsorted(edges, value, side="right")) - 1
        idx = min(max(idx, 0), HISTOGRAM_BINS - 1)  # 1.0 closes the last bin
        histogram[idx] += 1
    return CosineReport(
        means=tuple(means),
        histogram=tuple(histogram),
        pooling=store.pooling.value,
        excluded=tuple(excluded),
        pairs=pairs,
    )
