import numpy as np
import pytest

from hgd.errors import ArgumentError
from hgd.experiments import compute_metrics


def metrics_oracle(y_true, y_pred):
    """Independent confusion-matrix implementation used as the reference."""
    labels = sorted(set(y_true))
    cm = {(a, b): 0 for a in labels for b in set(y_pred) | set(labels)}
    for t, p in zip(y_true, y_pred):
        cm[t, p] = cm.get((t, p), 0) + 1
    accuracy = sum(cm.get((l, l), 0) for l in labels) / len(y_true)
    precisions, recalls, f1s = [], [], []
    for l in labels:
        tp = cm.get((l, l), 0)
        predicted = sum(cm.get((a, l), 0) for a in set(y_true))
        actual = sum(v for (a, _), v in cm.items() if a == l)
        p = tp / predicted if predicted else 0.0
        r = tp / actual if actual else 0.0
        precisions.append(p)
        recalls.append(r)
        f1s.append(2 * p * r / (p + r) if p + r else 0.0)
    n = len(labels)
    return accuracy, sum(precisions) / n, sum(recalls) / n, sum(f1s) / n


def test_perfect_prediction():
    m = compute_metrics(["a", "b", "c"], ["a", "b", "c"])
    assert (m.accuracy, m.precision_macro, m.recall_macro, m.f1_macro) == (1, 1, 1, 1)
    assert m.support == 3


def test_worked_two_label_example():
    m = compute_metrics(["A", "A", "B", "B"], ["A", "B", "B", "B"])
    assert m.accuracy == pytest.approx(0.75, abs=1e-9)
    assert m.recall_macro == pytest.approx(0.75, abs=1e-9)
    assert m.precision_macro == pytest.approx((1.0 + 2 / 3) / 2, abs=1e-9)
    assert m.f1_macro == pytest.approx((2 / 3 + 0.8) / 2, abs=1e-9)
    assert m.f1_macro == pytest.approx(0.7333333333, abs=1e-9)


def test_disjoint_label_sets():
    m = compute_metrics(["a", "a"], ["b", "b"])
    assert m.accuracy == 0.0
    assert m.recall_macro == 0.0
    assert m.precision_macro == 0.0


def test_labels_only_from_y_true_enter_the_macro():
    # "c" appears only in predictions; macro averages over {a, b} alone
    m = compute_metrics(["a", "b"], ["c", "b"])
    assert m.recall_macro == pytest.approx(0.5)
    assert m.precision_macro == pytest.approx(0.5)


def test_randomized_oracle_agreement():
    rng = np.random.default_rng(555)
    for _ in range(500):
        n = int(rng.integers(1, 40))
        k_true = int(rng.integers(1, 5))
        k_pred = int(rng.integers(1, 5))
        y_true = [f"l{rng.integers(k_true)}" for _ in range(n)]
        y_pred = [f"l{rng.integers(k_pred)}" for _ in range(n)]
        m = compute_metrics(y_true, y_pred)
        acc, prec, rec, f1 = metrics_oracle(y_true, y_pred)
        assert m.accuracy == pytest.approx(acc, abs=1e-12)
        assert m.precision_macro == pytest.approx(prec, abs=1e-12)
        assert m.recall_macro == pytest.approx(rec, abs=1e-12)
        assert m.f1_macro == pytest.approx(f1, abs=1e-12)
        assert 0.0 <= m.accuracy <= 1.0
        assert 0.0 <= m.f1_macro <= 1.0


def test_empty_inputs_rejected():
    with pytest.raises(ArgumentError):
        compute_metrics([], [])


def test_length_mismatch_rejected():
    with pytest.raises(ArgumentError):
        compute_metrics(["a"], ["a", "b"])
