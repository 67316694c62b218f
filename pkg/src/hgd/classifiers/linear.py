"""Multinomial logistic regression (full-batch GD) and one-vs-rest ridge."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import ConfigError, FitError
from .base import LabeledSet, TrainConfig, check_dim, logreg_defaults, require_finite, require_multiclass


@dataclass(frozen=True, eq=False)
class LogRegModel:
    W: np.ndarray  # (c, d)
    b: np.ndarray  # (c,)
    labels: tuple[str, ...]

    @property
    def dim(self) -> int:
        return self.W.shape[1]


def log_softmax(Z: np.ndarray) -> np.ndarray:
    shifted = Z - Z.max(axis=1, keepdims=True)
    return shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True))


def logreg_loss_and_grad(
    W: np.ndarray, b: np.ndarray, X: np.ndarray, Y: np.ndarray, l2: float
) -> tuple[float, np.ndarray, np.ndarray]:
    """Mean cross-entropy plus (l2/2)*||W||^2, with analytic gradients.

    Y is the one-hot target matrix (n, c). The bias is not regularized.
    """
    n = X.shape[0]
    logP = log_softmax(X @ W.T + b)
    loss = -float((Y * logP).sum()) / n + 0.5 * l2 * float((W * W).sum())
    G = (np.exp(logP) - Y) / n
    grad_W = G.T @ X + l2 * W
    grad_b = G.sum(axis=0)
    return loss, grad_W, grad_b


def logreg_fit(data: LabeledSet, cfg: TrainConfig | None = None) -> LogRegModel:
    """Full-batch gradient descent from zero-initialized parameters.

    Stops at max_iters or when the absolute loss decrease falls below tol.
    """
    cfg = cfg if cfg is not None else logreg_defaults()
    require_multiclass(data)
    require_finite(data)
    c, d = len(data.labels), data.dim
    W = np.zeros((c, d))
    b = np.zeros(c)
    Y = data.one_hot()
    prev_loss = np.inf
    for _ in range(cfg.max_iters):
        loss, grad_W, grad_b = logreg_loss_and_grad(W, b, data.X, Y, cfg.l2)
        if prev_loss - loss < cfg.tol:
            break
        W -= cfg.learning_rate * grad_W
        b -= cfg.learning_rate * grad_b
        prev_loss = loss
    return LogRegModel(W=W, b=b, labels=data.labels)


def logreg_proba(model: LogRegModel, x: np.ndarray | Sequence[float]) -> np.ndarray:
    x = check_dim(x, model.dim)
    return np.exp(log_softmax((model.W @ x + model.b)[None, :]))[0]


def logreg_predict(model: LogRegModel, x: np.ndarray | Sequence[float]) -> str:
    # argmax takes the first maximum; labels are sorted, so ties resolve
    # to the lexicographically smallest label
    return model.labels[int(np.argmax(logreg_proba(model, x)))]


@dataclass(frozen=True, eq=False)
class RidgeModel:
    alpha: float
    W: np.ndarray  # (c, d)
    b: np.ndarray  # (c,)
    labels: tuple[str, ...]
    feature_means: np.ndarray  # (d,)

    @property
    def dim(self) -> int:
        return self.W.shape[1]


def ridge_normal_solve(X: np.ndarray, t: np.ndarray, alpha: float) -> np.ndarray:
    """Solve the regularized normal equations (X'X + alpha*I) w = X't exactly."""
    d = X.shape[1]
    return np.linalg.solve(X.T @ X + alpha * np.eye(d), X.T @ t)


def ridge_fit(data: LabeledSet, alpha: float = 1.0) -> RidgeModel:
    """One-vs-rest +/-1 targets on centered features with an exact SPD solve."""
    if alpha <= 0:
        raise ConfigError(f"alpha must be > 0, got {alpha}")
    require_multiclass(data)
    require_finite(data)
    mu = data.X.mean(axis=0)
    Xc = data.X - mu
    rows = []
    intercepts = []
    for code in range(len(data.labels)):
        t = np.where(data.y_codes == code, 1.0, -1.0)
        t_mean = float(t.mean())
        w = ridge_normal_solve(Xc, t - t_mean, alpha)
        rows.append(w)
        intercepts.append(t_mean - float(w @ mu))
    return RidgeModel(
        alpha=alpha,
        W=np.asarray(rows),
        b=np.asarray(intercepts),
        labels=data.labels,
        feature_means=mu,
    )


def ridge_decision(model: RidgeModel, x: np.ndarray | Sequence[float]) -> np.ndarray:
    x = check_dim(x, model.dim)
    return model.W @ x + model.b


def ridge_predict(model: RidgeModel, x: np.ndarray | Sequence[float]) -> str:
    return model.labels[int(np.argmax(ridge_decision(model, x)))]
