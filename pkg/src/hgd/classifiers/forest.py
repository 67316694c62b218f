"""Random forest: bootstrap bagging, Gini splits, ceil(sqrt(d)) feature draws.

Each tree owns an RNG stream derived from (seed, tree index), so forests are
reproducible and tree construction order cannot leak between trees. All tie
breaks are total: equal split costs prefer the lowest feature index then the
lowest threshold; equal votes prefer the lexicographically smallest label.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from ..errors import ConfigError, FitError
from ..util import derive_seed
from .base import LabeledSet, check_dim


@dataclass(frozen=True)
class TreeLeaf:
    counts: dict[str, int]  # only labels with nonzero count


@dataclass(frozen=True)
class TreeSplit:
    feature: int
    threshold: float
    left: "TreeNode"
    right: "TreeNode"


TreeNode = Union[TreeLeaf, TreeSplit]


@dataclass(frozen=True, eq=False)
class ForestModel:
    n_trees: int
    seed: int
    trees: tuple[TreeNode, ...]
    labels: tuple[str, ...]
    dim: int


def gini_impurity(counts: Sequence[int] | np.ndarray) -> float:
    """1 - sum(p^2). 0 for a pure node, exactly 0.5 for a balanced two-label node."""
    counts = np.asarray(counts, dtype=np.float64)
    total = counts.sum()
    if total <= 0:
        return 0.0
    p = counts / total
    return float(1.0 - (p * p).sum())


def _leaf(codes: np.ndarray, labels: tuple[str, ...]) -> TreeLeaf:
    counts = np.bincount(codes, minlength=len(labels))
    return TreeLeaf({labels[i]: int(c) for i, c in enumerate(counts) if c > 0})


def _best_split_for_feature(
    values: np.ndarray, codes: np.ndarray, n_labels: int
) -> tuple[float, float] | None:
    """Lowest-cost (weighted child Gini, threshold) for one feature, or None."""
    uniq = np.unique(values)
    if uniq.size < 2:
        return None
    thresholds = (uniq[:-1] + uniq[1:]) / 2.0
    group = np.searchsorted(uniq, values)
    group_counts = np.zeros((uniq.size, n_labels))
    np.add.at(group_counts, (group, codes), 1.0)
    prefix = group_counts.cumsum(axis=0)
    total = prefix[-1]
    n = float(len(values))
    # midpoints can round onto a neighboring value; resolve left sizes with
    # the same <= threshold rule used at prediction time
    left_groups = np.searchsorted(uniq, thresholds, side="right")
    left = prefix[left_groups - 1]
    right = total - left
    n_left = left.sum(axis=1)
    n_right = right.sum(axis=1)
    valid = (n_left > 0) & (n_right > 0)
    if not np.any(valid):
        return None
    with np.errstate(divide="ignore", invalid="ignore"):
        gini_left = 1.0 - (left * left).sum(axis=1) / (n_left * n_left)
        gini_right = 1.0 - (right * right).sum(axis=1) / (n_right * n_right)
    cost = (n_left * gini_left + n_right * gini_right) / n
    cost[~valid] = np.inf
    best = int(np.argmin(cost))  # first minimum -> lowest threshold
    return float(cost[best]), float(thresholds[best])


def _grow(
    X: np.ndarray,
    codes: np.ndarray,
    idx: np.ndarray,
    rng: np.random.Generator,
    n_candidates: int,
    labels: tuple[str, ...],
) -> TreeNode:
    sub_codes = codes[idx]
    counts = np.bincount(sub_codes, minlength=len(labels))
    node_gini = gini_impurity(counts)
    if idx.size < 2 or node_gini == 0.0:
        return _leaf(sub_codes, labels)

    candidates = np.sort(rng.choice(X.shape[1], size=n_candidates, replace=False))
    best_cost = np.inf
    best_feature = -1
    best_threshold = 0.0
    for feature in candidates:
        found = _best_split_for_feature(X[idx, feature], sub_codes, len(labels))
        if found is None:
            continue
        cost, threshold = found
        if cost < best_cost:  # strict: earlier (lower) feature index wins ties
            best_cost, best_feature, best_threshold = cost, int(feature), threshold
    if best_feature < 0 or best_cost >= node_gini:
        return _leaf(sub_codes, labels)

    mask = X[idx, best_feature] <= best_threshold
    left = _grow(X, codes, idx[mask], rng, n_candidates, labels)
    right = _grow(X, codes, idx[~mask], rng, n_candidates, labels)
    return TreeSplit(best_feature, best_threshold, left, right)


def forest_fit(data: LabeledSet, n_trees: int = 100, seed: int = 0) -> ForestModel:
    if n_trees < 1:
        raise ConfigError(f"n_trees must be >= 1, got {n_trees}")
    if data.n < 1:
        raise FitError("empty training set")
    n_candidates = max(1, math.ceil(math.sqrt(data.dim)))
    trees = []
    for tree_index in range(n_trees):
        rng = np.random.default_rng(derive_seed(seed, "tree", tree_index))
        bootstrap = rng.integers(0, data.n, size=data.n)
        trees.append(
            _grow(
                data.X[bootstrap],
                data.y_codes[bootstrap],
                np.arange(data.n),
                rng,
                n_candidates,
                data.labels,
            )
        )
    return ForestModel(
        n_trees=n_trees, seed=seed, trees=tuple(trees), labels=data.labels, dim=data.dim
    )


def tree_predict(node: TreeNode, x: np.ndarray) -> str:
    while isinstance(node, TreeSplit):
        node = node.left if x[node.feature] <= node.threshold else node.right
    top = max(node.counts.values())
    return min(label for label, count in node.counts.items() if count == top)


def forest_predict(model: ForestModel, x: np.ndarray | Sequence[float]) -> str:
    x = check_dim(x, model.dim)
    votes: dict[str, int] = {}
    for tree in model.trees:
        label = tree_predict(tree, x)
        votes[label] = votes.get(label, 0) + 1
    top = max(votes.values())
    return min(label for label, count in votes.items() if count == top)
