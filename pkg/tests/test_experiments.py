import numpy as np
import pytest

from conftest import make_inventories

from hgd.dataset import SplitSpec, parse_dataset, split
from hgd.embeddings import (
    EmbeddingRecord,
    EmbeddingStore,
    PoolingStrategy,
    SynthSpec,
    generate_synthetic_store,
    synthetic_dataset_tsv,
)
from hgd.errors import ArgumentError, DegenerateVectorError
from hgd.experiments import (
    ModelSpec,
    compute_metrics,
    default_model_specs,
    fit_model,
    predict_model,
    run_cosine_analysis,
    run_embedding_comparison,
    run_model_comparison,
)


def build_fixture(shape, per_phoneme, *, dim=8, separation=8.0, sigma=0.3, seed=0):
    spec = SynthSpec(
        dim=dim,
        noise_sigma=sigma,
        class_separation=separation,
        inventories=make_inventories(shape, per_phoneme),
        seed=seed,
    )
    return parse_dataset(synthetic_dataset_tsv(spec)), generate_synthetic_store(spec)


class TestModelComparison:
    def test_single_homograph_row_equals_its_metrics(self):
        d, store = build_fixture({2: 1}, 10)
        spec = SplitSpec(test_fraction=0.2, seed=0)
        report = run_model_comparison(d, store, models=[ModelSpec("knn")], spec=spec)

        homograph = next(iter(d.index))
        train_ids, test_ids = split(d, homograph, spec)
        from hgd.classifiers import LabeledSet
        from hgd.util import derive_seed

        train = LabeledSet.from_data(
            np.stack([store.by_id[i].vector for i in train_ids]),
            [d.records[i].phoneme for i in train_ids],
        )
        model = fit_model(ModelSpec("knn"), train, derive_seed(0, homograph, "knn"))
        y_pred = [predict_model(model, store.by_id[i].vector) for i in test_ids]
        y_true = [d.records[i].phoneme for i in test_ids]
        expected = compute_metrics(y_true, y_pred)

        (row,) = report.rows
        assert row[0] == "knn"
        assert row[1] == expected

    def test_rows_sorted_by_model_name(self):
        d, store = build_fixture({2: 2}, 8)
        report = run_model_comparison(d, store)
        assert [name for name, _ in report.rows] == sorted(
            ["forest", "knn", "logreg", "mlp", "ridge"]
        )

    def test_reruns_are_byte_identical(self):
        d, store = build_fixture({2: 2, 3: 1}, 8)
        a = run_model_comparison(d, store).to_csv()
        b = run_model_comparison(d, store).to_csv()
        assert a == b

    def test_jobs_do_not_change_the_report(self):
        d, store = build_fixture({2: 3, 3: 1}, 8)
        seq = run_model_comparison(d, store, jobs=1)
        par = run_model_comparison(d, store, jobs=4)
        assert seq.to_csv() == par.to_csv()
        assert seq.rows == par.rows

    def test_single_phoneme_homographs_are_excluded_and_listed(self):
        d, store = build_fixture({1: 1, 2: 1}, 6)
        report = run_model_comparison(d, store, models=[ModelSpec("knn")])
        assert report.n_homographs == 1
        assert any(reason == "single-phoneme" for _, reason in report.excluded)

    def test_no_usable_homograph_is_an_error(self):
        d, store = build_fixture({1: 2}, 6)
        with pytest.raises(ArgumentError):
            run_model_comparison(d, store)

    def test_weighted_mean_differs_when_counts_differ(self):
        # "wa" (10 records) is perfectly separable -> accuracy 1.0; "wb"
        # (20 records) has identical vectors for both phonemes -> accuracy 0.5.
        rows = []
        groups = {"wa": [], "wb": []}
        for i in range(5):
            groups["wa"] += [("pa", [10.0, 0.0]), ("pb", [-10.0, 0.0])]
        for i in range(10):
            groups["wb"] += [("pa", [1.0, 0.0]), ("pb", [1.0, 0.0])]
        for homograph, entries in groups.items():
            rows += [f"{homograph}\t{p}\t{homograph} s{i}" for i, (p, _) in enumerate(entries)]
        d = parse_dataset("\n".join(rows) + "\n")
        store = store_from_vectors(groups, 2)

        plain = run_model_comparison(d, store, models=[ModelSpec("knn")])
        weighted = run_model_comparison(
            d, store, models=[ModelSpec("knn")], weighted=True
        )
        accs = {h: m["knn"].accuracy for h, m in plain.per_homograph.items()}
        assert accs == {"wa": 1.0, "wb": 0.5}
        assert plain.rows[0][1].accuracy == pytest.approx(0.75)
        assert weighted.rows[0][1].accuracy == pytest.approx((1.0 * 10 + 0.5 * 20) / 30)

    def test_csv_schema(self):
        d, store = build_fixture({2: 1}, 8)
        text = run_model_comparison(d, store).to_csv()
        header = text.splitlines()[0]
        assert header == "model,accuracy,recall,f1,precision,homographs"


class TestEmbeddingComparison:
    def test_identical_stores_identical_cells(self):
        d, store = build_fixture({2: 2, 3: 1}, 8)
        report = run_embedding_comparison(d, store, store)
        by_group = {}
        for count, role, acc, n in report.cells:
            by_group.setdefault(count, {})[role] = (acc, n)
        for group in by_group.values():
            assert group["last_layer"] == group["avg_last4"]

    def test_separable_beats_noise_in_every_group(self):
        shape = {2: 2, 3: 1, 4: 1}
        d, separable = build_fixture(shape, 10, separation=8.0, sigma=0.3)
        spec = SynthSpec(
            dim=8,
            noise_sigma=0.3,
            class_separation=0.0,
            inventories=make_inventories(shape, 10),
            seed=0,
            pooling=PoolingStrategy.AVG_LAST4,
        )
        noise = generate_synthetic_store(spec)
        report = run_embedding_comparison(d, separable, noise)
        by_group = {}
        for count, role, acc, n in report.cells:
            by_group.setdefault(count, {})[role] = acc
        assert set(by_group) == {2, 3, 4}
        for group, cells in by_group.items():
            assert cells["last_layer"] > cells["avg_last4"]

    def test_group_counts_match_inventory_shape(self):
        d, store = build_fixture({2: 4, 3: 2, 4: 1}, 6)
        report = run_embedding_comparison(d, store, store)
        counts = {}
        for count, role, acc, n in report.cells:
            counts.setdefault(count, set()).add(n)
        assert counts == {2: {4}, 3: {2}, 4: {1}}

    def test_coverage_mismatch_names_missing_ids(self):
        d, store = build_fixture({2: 1}, 6)
        trimmed = EmbeddingStore.from_records(
            store.dim, store.pooling, store.model_id, list(store.records[:-1])
        )
        with pytest.raises(ArgumentError) as exc:
            run_embedding_comparison(d, store, trimmed)
        assert str(len(d.records) - 1) in str(exc.value)

    def test_csv_schema(self):
        d, store = build_fixture({2: 1}, 8)
        text = run_embedding_comparison(d, store, store).to_csv()
        assert text.splitlines()[0] == "phoneme_count,store,mean_accuracy,homographs"


def store_from_vectors(groups, dim):
    """groups: {homograph: [(phoneme, vector), ...]} -> EmbeddingStore."""
    records = []
    rid = 0
    for homograph in groups:
        for phoneme, vector in groups[homograph]:
            records.append(
                EmbeddingRecord(rid, homograph, phoneme, np.asarray(vector, float))
            )
            rid += 1
    return EmbeddingStore.from_records(
        dim, PoolingStrategy.LAST_LAYER, "fixture", records
    )


class TestCosineAnalysis:
    def test_identical_copies_all_mass_in_final_bin(self):
        groups = {
            "a": [("p", [1.0, 2.0])] * 3,
            "b": [("q", [0.5, -0.5])] * 4,
        }
        report = run_cosine_analysis(store_from_vectors(groups, 2))
        assert [v for _, v in report.means] == [pytest.approx(1.0)] * 2
        assert report.histogram[-1] == 2
        assert sum(report.histogram) == 2

    def test_orthogonal_pair_lands_in_bin_covering_zero(self):
        groups = {"a": [("p", [1.0, 0.0]), ("q", [0.0, 1.0])]}
        report = run_cosine_analysis(store_from_vectors(groups, 2))
        assert report.means[0][1] == pytest.approx(0.0, abs=1e-12)
        assert report.histogram[10] == 1  # bin [0.0, 0.1)

    def test_three_vector_mean_value(self):
        groups = {
            "h": [
                ("p", [1.0, 0.0]),
                ("p", [0.0, 1.0]),
                ("q", np.array([1.0, 1.0]) / np.sqrt(2)),
            ]
        }
        report = run_cosine_analysis(store_from_vectors(groups, 2))
        assert report.means[0][1] == pytest.approx(0.4714045, abs=1e-7)

    def test_small_homographs_excluded_and_listed(self):
        groups = {"a": [("p", [1.0, 0.0])], "b": [("p", [1.0, 0.0]), ("p", [2.0, 0.0])]}
        report = run_cosine_analysis(store_from_vectors(groups, 2))
        assert [h for h, _ in report.means] == ["b"]
        assert report.excluded == (("a", "fewer-than-2-records"),)

    def test_mass_conservation_on_random_stores(self):
        rng = np.random.default_rng(777)
        for _ in range(50):
            groups = {}
            n_h = int(rng.integers(1, 6))
            for i in range(n_h):
                n_v = int(rng.integers(2, 6))
                groups[f"h{i}"] = [
                    (f"p{rng.integers(2)}", rng.standard_normal(3)) for _ in range(n_v)
                ]
            report = run_cosine_analysis(store_from_vectors(groups, 3))
            assert sum(report.histogram) == len(report.means) == n_h

    def test_degenerate_vector_error_names_record(self):
        groups = {"a": [("p", [1.0, 0.0]), ("p", [0.0, 0.0])]}
        with pytest.raises(DegenerateVectorError) as exc:
            run_cosine_analysis(store_from_vectors(groups, 2))
        assert exc.value.index == 1  # store record id, not list position

    def test_pair_filters_change_the_mean(self):
        groups = {
            "h": [
                ("p", [1.0, 0.0]),
                ("p", [1.0, 0.0]),
                ("q", [0.0, 1.0]),
            ]
        }
        store = store_from_vectors(groups, 2)
        assert run_cosine_analysis(store, "within-phoneme").means[0][1] == pytest.approx(1.0)
        assert run_cosine_analysis(store, "cross-phoneme").means[0][1] == pytest.approx(0.0)

    def test_csv_schemas(self):
        groups = {"a": [("p", [1.0, 0.0]), ("p", [0.5, 0.5])]}
        report = run_cosine_analysis(store_from_vectors(groups, 2))
        assert report.means_csv().splitlines()[0] == "homograph,mean_cosine"
        hist_lines = report.histogram_csv().splitlines()
        assert hist_lines[0] == "bin_left,bin_right,count"
        assert len(hist_lines) == 21
        assert hist_lines[1].startswith("-1.0,-0.9,")
        assert hist_lines[-1].startswith("0.9,1.0,")


def test_default_model_specs_cover_all_five():
    assert [m.name for m in default_model_specs()] == [
        "forest",
        "knn",
        "logreg",
        "mlp",
        "ridge",
    ]


def test_unknown_model_name_rejected():
    with pytest.raises(ArgumentError):
        ModelSpec("svm")
