"""Versioned model container ``hgd-model/1``.

Two JSON lines: a header (format, kind, labels, dim, hyperparameters) and a
parameter body. Floats use shortest round-trip decimals, so a deserialized
model predicts identically to the original.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

import numpy as np

from ..errors import ModelFormatError
from ..util import atomic_write_text
from .forest import ForestModel, TreeLeaf, TreeNode, TreeSplit
from .knn import KnnModel
from .linear import LogRegModel, RidgeModel
from .mlp import MlpModel

FORMAT_TAG = "hgd-model/1"

AnyModel = Union[KnnModel, LogRegModel, RidgeModel, MlpModel, ForestModel]


def _dump(obj: object) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def _matrix(a: np.ndarray) -> list:
    return [[float(x) for x in row] for row in a]


def _vector(a: np.ndarray) -> list:
    return [float(x) for x in a]


def _tree_to_obj(node: TreeNode) -> dict:
    if isinstance(node, TreeLeaf):
        return {"counts": dict(node.counts)}
    return {
        "f": node.feature,
        "t": float(node.threshold),
        "l": _tree_to_obj(node.left),
        "r": _tree_to_obj(node.right),
    }


def _tree_from_obj(obj: dict) -> TreeNode:
    if "counts" in obj:
        return TreeLeaf({str(k): int(v) for k, v in obj["counts"].items()})
    return TreeSplit(
        int(obj["f"]), float(obj["t"]), _tree_from_obj(obj["l"]), _tree_from_obj(obj["r"])
    )


def serialize_model(model: AnyModel) -> str:
    if isinstance(model, KnnModel):
        kind, dim = "knn", model.dim
        hyper = {"k": model.k}
        params = {"X": _matrix(model.X), "y": list(model.y)}
    elif isinstance(model, LogRegModel):
        kind, dim = "logreg", model.dim
        hyper = {}
        params = {"W": _matrix(model.W), "b": _vector(model.b)}
    elif isinstance(model, RidgeModel):
        kind, dim = "ridge", model.dim
        hyper = {"alpha": float(model.alpha)}
        params = {
            "W": _matrix(model.W),
            "b": _vector(model.b),
            "feature_means": _vector(model.feature_means),
        }
    elif isinstance(model, MlpModel):
        kind, dim = "mlp", model.dim
        hyper = {"layer_sizes": list(model.layer_sizes)}
        params = {
            "weights": [_matrix(W) for W in model.weights],
            "biases": [_vector(b) for b in model.biases],
        }
    elif isinstance(model, ForestModel):
        kind, dim = "forest", model.dim
        hyper = {"n_trees": model.n_trees, "seed": model.seed}
        params = {"trees": [_tree_to_obj(t) for t in model.trees]}
    else:
        raise ModelFormatError(f"unsupported model type: {type(model).__name__}")

    header = {
        "format": FORMAT_TAG,
        "kind": kind,
        "labels": list(model.labels),
        "dim": dim,
        "hyperparameters": hyper,
    }
    return _dump(header) + "\n" + _dump(params) + "\n"


def deserialize_model(text: str) -> AnyModel:
    lines = text.splitlines()
    if len(lines) < 2:
        raise ModelFormatError("model container must have a header and a body line")
    try:
        header = json.loads(lines[0])
        params = json.loads(lines[1])
    except json.JSONDecodeError as e:
        raise ModelFormatError(f"invalid model container: {e.msg}") from e
    if not isinstance(header, dict) or header.get("format") != FORMAT_TAG:
        raise ModelFormatError(f"unsupported model format: {header.get('format')!r}")
    kind = header.get("kind")
    labels = tuple(str(v) for v in header.get("labels", ()))
    hyper = header.get("hyperparameters", {})

    if kind == "knn":
        return KnnModel(
            k=int(hyper["k"]),
            X=np.asarray(params["X"], dtype=np.float64),
            y=tuple(str(v) for v in params["y"]),
            labels=labels,
        )
    if kind == "logreg":
        return LogRegModel(
            W=np.asarray(params["W"], dtype=np.float64),
            b=np.asarray(params["b"], dtype=np.float64),
            labels=labels,
        )
    if kind == "ridge":
        return RidgeModel(
            alpha=float(hyper["alpha"]),
            W=np.asarray(params["W"], dtype=np.float64),
            b=np.asarray(params["b"], dtype=np.float64),
            labels=labels,
            feature_means=np.asarray(params["feature_means"], dtype=np.float64),
        )
    if kind == "mlp":
        return MlpModel(
            layer_sizes=tuple(int(v) for v in hyper["layer_sizes"]),
            weights=tuple(np.asarray(W, dtype=np.float64) for W in params["weights"]),
            biases=tuple(np.asarray(b, dtype=np.float64) for b in params["biases"]),
            labels=labels,
        )
    if kind == "forest":
        return ForestModel(
            n_trees=int(hyper["n_trees"]),
            seed=int(hyper["seed"]),
            trees=tuple(_tree_from_obj(t) for t in params["trees"]),
            labels=labels,
            dim=int(header["dim"]),
        )
    raise ModelFormatError(f"unknown model kind: {kind!r}")


def save_model(model: AnyModel, path: str | Path) -> None:
    atomic_write_text(path, serialize_model(model))


def load_model(path: str | Path) -> AnyModel:
    return deserialize_model(Path(path).read_text(encoding="utf-8"))
