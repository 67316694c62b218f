"""K-nearest-neighbors with fully documented, total tie-breaking.

Neighbor order: ascending Euclidean distance, distance ties by lower training
index. Vote ties: smaller mean distance among the tied labels' neighbors,
then lexicographically smaller label.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import ConfigError, FitError
from .base import LabeledSet, check_dim


@dataclass(frozen=True, eq=False)
class KnnModel:
    k: int
    X: np.ndarray
    y: tuple[str, ...]
    labels: tuple[str, ...]

    @property
    def dim(self) -> int:
        return self.X.shape[1]


def knn_fit(data: LabeledSet, k: int = 7) -> KnnModel:
    if k < 1:
        raise ConfigError(f"k must be >= 1, got {k}")
    if data.n < 1:
        raise FitError("empty training set")
    return KnnModel(k=k, X=data.X.copy(), y=data.y, labels=data.labels)


def knn_predict(model: KnnModel, x: np.ndarray | Sequence[float]) -> str:
    x = check_dim(x, model.dim)
    dist = np.sqrt(((model.X - x) ** 2).sum(axis=1))
    k = min(model.k, len(model.y))
    # stable sort: equal distances keep ascending training-index order
    neighbors = np.argsort(dist, kind="stable")[:k]

    votes: dict[str, int] = {}
    dist_sums: dict[str, float] = {}
    for idx in neighbors:
        label = model.y[idx]
        votes[label] = votes.get(label, 0) + 1
        dist_sums[label] = dist_sums.get(label, 0.0) + float(dist[idx])
    top = max(votes.values())
    tied = [label for label, count in votes.items() if count == top]
    if len(tied) == 1:
        return tied[0]
    return min(tied, key=lambda label: (dist_sums[label] / votes[label], label))
