"""Two-hidden-layer perceptron: sigmoid hiddens, softmax output, backprop.

Weight init is Glorot uniform(-a, a) with a = sqrt(6/(fan_in+fan_out)) drawn
layer by layer from a single seeded generator; biases start at zero. Training
is full-batch gradient descent, a pure function of (data, config, hidden).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import ConfigError
from .base import LabeledSet, TrainConfig, check_dim, require_finite, require_multiclass
from .linear import log_softmax


@dataclass(frozen=True, eq=False)
class MlpModel:
    layer_sizes: tuple[int, ...]  # (d, h1, h2, c)
    weights: tuple[np.ndarray, ...]  # per layer, shape (fan_in, fan_out)
    biases: tuple[np.ndarray, ...]
    labels: tuple[str, ...]

    @property
    def dim(self) -> int:
        return self.layer_sizes[0]


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def init_params(
    layer_sizes: Sequence[int], seed: int
) -> tuple[list[np.ndarray], list[np.ndarray]]:
    rng = np.random.default_rng(seed)
    weights, biases = [], []
    for fan_in, fan_out in zip(layer_sizes[:-1], layer_sizes[1:]):
        bound = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-bound, bound, size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out))
    return weights, biases


def _forward(
    weights: Sequence[np.ndarray], biases: Sequence[np.ndarray], X: np.ndarray
) -> tuple[list[np.ndarray], np.ndarray]:
    """Returns hidden activations and the output log-probabilities."""
    activations = [X]
    a = X
    for W, b in zip(weights[:-1], biases[:-1]):
        a = _sigmoid(a @ W + b)
        activations.append(a)
    logP = log_softmax(a @ weights[-1] + biases[-1])
    return activations, logP


def mlp_loss_and_grad(
    weights: Sequence[np.ndarray],
    biases: Sequence[np.ndarray],
    X: np.ndarray,
    Y: np.ndarray,
    l2: float,
) -> tuple[float, list[np.ndarray], list[np.ndarray]]:
    """Mean cross-entropy (+ (l2/2) sum ||W||^2) and backprop gradients."""
    n = X.shape[0]
    activations, logP = _forward(weights, biases, X)
    loss = -float((Y * logP).sum()) / n
    if l2:
        loss += 0.5 * l2 * sum(float((W * W).sum()) for W in weights)

    grads_W: list[np.ndarray] = [None] * len(weights)  # type: ignore[list-item]
    grads_b: list[np.ndarray] = [None] * len(biases)  # type: ignore[list-item]
    delta = (np.exp(logP) - Y) / n
    for layer in range(len(weights) - 1, -1, -1):
        grads_W[layer] = activations[layer].T @ delta + l2 * weights[layer]
        grads_b[layer] = delta.sum(axis=0)
        if layer > 0:
            a = activations[layer]
            delta = (delta @ weights[layer].T) * a * (1.0 - a)
    return loss, grads_W, grads_b


def mlp_fit(
    data: LabeledSet, cfg: TrainConfig, hidden: Sequence[int] = (100, 100)
) -> MlpModel:
    hidden = tuple(int(h) for h in hidden)
    if any(h < 1 for h in hidden):
        raise ConfigError(f"hidden widths must be >= 1, got {hidden}")
    require_multiclass(data)
    require_finite(data)
    layer_sizes = (data.dim, *hidden, len(data.labels))
    weights, biases = init_params(layer_sizes, cfg.seed)
    Y = data.one_hot()
    prev_loss = np.inf
    for _ in range(cfg.max_iters):
        loss, grads_W, grads_b = mlp_loss_and_grad(weights, biases, data.X, Y, cfg.l2)
        if prev_loss - loss < cfg.tol:
            break
        for layer in range(len(weights)):
            weights[layer] -= cfg.learning_rate * grads_W[layer]
            biases[layer] -= cfg.learning_rate * grads_b[layer]
        prev_loss = loss
    return MlpModel(
        layer_sizes=layer_sizes,
        weights=tuple(weights),
        biases=tuple(biases),
        labels=data.labels,
    )


def mlp_proba(model: MlpModel, x: np.ndarray | Sequence[float]) -> np.ndarray:
    x = check_dim(x, model.dim)
    _, logP = _forward(model.weights, model.biases, x[None, :])
    return np.exp(logP)[0]


def mlp_predict(model: MlpModel, x: np.ndarray | Sequence[float]) -> str:
    return model.labels[int(np.argmax(mlp_proba(model, x)))]
