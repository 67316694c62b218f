"""Serialization round trips: every model kind must predict identically after
a write/read cycle, and a second write must be byte-identical."""

import json

import numpy as np
import pytest

from hgd.classifiers import (
    LabeledSet,
    deserialize_model,
    forest_fit,
    knn_fit,
    load_model,
    logreg_defaults,
    logreg_fit,
    mlp_defaults,
    mlp_fit,
    ridge_fit,
    save_model,
    serialize_model,
)
from hgd.errors import ModelFormatError
from hgd.experiments import predict_model


def training_data(seed=0, n=30, d=4, labels=("pa", "pb", "pc")):
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, d))
    y = [labels[i % len(labels)] for i in range(n)]
    return LabeledSet.from_data(X, y)


def all_models(data):
    return {
        "knn": knn_fit(data, 7),
        "logreg": logreg_fit(data, logreg_defaults()),
        "ridge": ridge_fit(data, 1.0),
        "mlp": mlp_fit(data, mlp_defaults(3), hidden=(8, 6)),
        "forest": forest_fit(data, n_trees=10, seed=3),
    }


@pytest.mark.parametrize("kind", ["knn", "logreg", "ridge", "mlp", "forest"])
def test_predict_equivalence_after_round_trip(kind):
    data = training_data()
    model = all_models(data)[kind]
    clone = deserialize_model(serialize_model(model))
    rng = np.random.default_rng(99)
    for _ in range(100):
        x = rng.standard_normal(data.dim) * 3
        assert predict_model(clone, x) == predict_model(model, x)


@pytest.mark.parametrize("kind", ["knn", "logreg", "ridge", "mlp", "forest"])
def test_second_write_byte_identical(kind):
    model = all_models(training_data())[kind]
    text = serialize_model(model)
    assert serialize_model(deserialize_model(text)) == text


def test_container_header_fields():
    data = training_data()
    text = serialize_model(knn_fit(data, 7))
    header = json.loads(text.splitlines()[0])
    assert header["format"] == "hgd-model/1"
    assert header["kind"] == "knn"
    assert header["labels"] == ["pa", "pb", "pc"]
    assert header["dim"] == 4
    assert header["hyperparameters"] == {"k": 7}


def test_unknown_format_rejected():
    with pytest.raises(ModelFormatError):
        deserialize_model('{"format":"nope/9","kind":"knn"}\n{}\n')


def test_unknown_kind_rejected():
    data = training_data()
    text = serialize_model(knn_fit(data, 7))
    header = json.loads(text.splitlines()[0])
    header["kind"] = "svm"
    bad = json.dumps(header) + "\n" + text.splitlines()[1] + "\n"
    with pytest.raises(ModelFormatError):
        deserialize_model(bad)


def test_truncated_container_rejected():
    data = training_data()
    text = serialize_model(ridge_fit(data, 1.0))
    with pytest.raises(ModelFormatError):
        deserialize_model(text.splitlines()[0] + "\n")


def test_file_round_trip(tmp_path):
    data = training_data()
    model = mlp_fit(data, mlp_defaults(0), hidden=(5, 4))
    path = tmp_path / "m.model"
    save_model(model, path)
    clone = load_model(path)
    x = np.ones(data.dim)
    assert predict_model(clone, x) == predict_model(model, x)
