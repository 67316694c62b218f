"""Shared training-data container and optimizer configuration."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import ConfigError, FitError


@dataclass(frozen=True, eq=False)
class LabeledSet:
    """Feature matrix with string labels; ``labels`` is the sorted distinct set."""

    X: np.ndarray  # (n, d) float64
    y: tuple[str, ...]
    labels: tuple[str, ...]
    y_codes: np.ndarray  # (n,) intp, positions into labels

    @staticmethod
    def from_data(X: np.ndarray | Sequence[Sequence[float]], y: Sequence[str]) -> "LabeledSet":
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2:
            raise FitError(f"feature matrix must be 2-D, got shape {X.shape}")
        if X.shape[0] < 1:
            raise FitError("empty training set")
        if X.shape[0] != len(y):
            raise FitError(f"{X.shape[0]} rows but {len(y)} labels")
        y = tuple(str(v) for v in y)
        labels = tuple(sorted(set(y)))
        positions = {label: i for i, label in enumerate(labels)}
        y_codes = np.asarray([positions[v] for v in y], dtype=np.intp)
        return LabeledSet(X, y, labels, y_codes)

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def dim(self) -> int:
        return self.X.shape[1]

    def one_hot(self) -> np.ndarray:
        out = np.zeros((self.n, len(self.labels)))
        out[np.arange(self.n), self.y_codes] = 1.0
        return out


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float
    max_iters: int
    tol: float  # absolute loss-decrease threshold
    l2: float
    seed: int = 0

    def __post_init__(self) -> None:
        checks = (
            self.learning_rate > 0 and math.isfinite(self.learning_rate),
            self.max_iters >= 1,
            self.tol >= 0 and math.isfinite(self.tol),
            self.l2 >= 0 and math.isfinite(self.l2),
        )
        if not all(checks):
            raise ConfigError(f"invalid training config: {self}")


def logreg_defaults(seed: int = 0) -> TrainConfig:
    return TrainConfig(learning_rate=0.1, max_iters=500, tol=1e-6, l2=1e-4, seed=seed)


def mlp_defaults(seed: int) -> TrainConfig:
    return TrainConfig(learning_rate=0.05, max_iters=300, tol=1e-7, l2=0.0, seed=seed)


def require_multiclass(data: LabeledSet) -> None:
    if len(data.labels) < 2:
        raise FitError("at least two labels required")


def require_finite(data: LabeledSet) -> None:
    if not np.all(np.isfinite(data.X)):
        raise FitError("non-finite feature value in training data")


def check_dim(x: np.ndarray | Sequence[float], dim: int) -> np.ndarray:
    from ..errors import DimensionError

    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != dim:
        raise DimensionError(f"expected a length-{dim} vector, got shape {x.shape}")
    return x
