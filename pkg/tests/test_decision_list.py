import random

import pytest

from dl_oracle import brute_force_predict
from tagmend.decision_list import (
    load_decision_list,
    predict_decision_list,
    save_decision_list,
    train_decision_list,
)
from tagmend.training import TrainingDataset

# Five items: f1 occurs in all of items 1-4 plus the joint item, f2 in three.
MIXED = TrainingDataset.from_pairs(
    [({"f1"}, "A"), ({"f1"}, "A"), ({"f1"}, "B"), ({"f1"}, "B"),
     ({"f2"}, "B"), ({"f2"}, "B"), ({"f1", "f2"}, "B")],
    categories=["A", "B"],
)


class TestTraining:
    def test_relative_frequencies_by_direct_count(self):
        model = train_decision_list(MIXED)
        assert model.entries["f1"].distribution["A"] == pytest.approx(0.4)
        assert model.entries["f1"].support == 5
        assert model.entries["f2"].distribution["B"] == pytest.approx(1.0)
        # the joint item carries f2 as well as f1
        assert model.entries["f2"].support == 3

    def test_single_item(self):
        model = train_decision_list(TrainingDataset.from_pairs([({"f"}, "A")]))
        assert model.entries["f"].distribution["A"] == 1.0
        assert model.entries["f"].support == 1

    def test_unseen_pairing_has_probability_zero(self):
        model = train_decision_list(
            TrainingDataset.from_pairs([({"f"}, "A")] * 3, categories=["A", "C"])
        )
        assert model.entries["f"].distribution["C"] == 0.0

    def test_prior_is_global_frequency(self):
        model = train_decision_list(MIXED)
        assert model.prior["A"] == pytest.approx(2 / 7)
        assert model.prior["B"] == pytest.approx(5 / 7)

    def test_empty_dataset_rejected(self):
        with pytest.raises(ValueError):
            train_decision_list(TrainingDataset((), ("A",)))


class TestPrediction:
    def test_strongest_feature_wins(self):
        model = train_decision_list(MIXED)
        dist, used, support = predict_decision_list(model, {"f1", "f2"})
        assert used == "f2"
        assert dist["B"] == pytest.approx(1.0)
        assert support == 3

    def test_single_known_feature(self):
        model = train_decision_list(MIXED)
        dist, used, support = predict_decision_list(model, {"f1"})
        assert used == "f1"
        assert dist == {"A": pytest.approx(0.4), "B": pytest.approx(0.6)}
        assert support == 5

    def test_fallback_to_prior(self):
        model = train_decision_list(MIXED)
        dist, used, support = predict_decision_list(model, {"unknown"})
        assert used is None
        assert support == len(MIXED)
        assert dist == model.prior

    def test_strength_tie_breaks_by_support(self):
        data = TrainingDataset.from_pairs(
            [({"big"}, "A")] * 4 + [({"small"}, "B")] * 2,
            categories=["A", "B"],
        )
        model = train_decision_list(data)
        _, used, support = predict_decision_list(model, {"big", "small"})
        assert used == "big" and support == 4  # both strengths are 1.0

    def test_full_tie_breaks_lexicographically(self):
        data = TrainingDataset.from_pairs([({"aa"}, "A"), ({"zz"}, "B")])
        model = train_decision_list(data)
        _, used, _ = predict_decision_list(model, {"zz", "aa"})
        assert used == "aa"

    def test_distribution_sums_to_one(self):
        model = train_decision_list(MIXED)
        for query in ({"f1"}, {"f2"}, {"f1", "f2"}, {"?"}):
            dist, _, _ = predict_decision_list(model, query)
            assert sum(dist.values()) == pytest.approx(1.0, abs=1e-9)

    def test_training_order_invariance(self):
        items = list(MIXED.items)
        random.Random(3).shuffle(items)
        shuffled = train_decision_list(TrainingDataset(tuple(items), MIXED.categories))
        model = train_decision_list(MIXED)
        for query in ({"f1"}, {"f2"}, {"f1", "f2"}):
            assert predict_decision_list(model, query) == predict_decision_list(shuffled, query)


def random_case(rng: random.Random):
    n_feats = rng.randint(1, 10)
    n_cats = rng.randint(1, 5)
    feats = [f"f{i}" for i in range(n_feats)]
    cats = [f"c{i}" for i in range(n_cats)]
    items = [
        (frozenset(rng.sample(feats, rng.randint(0, min(4, n_feats)))), rng.choice(cats))
        for _ in range(rng.randint(1, 50))
    ]
    query = frozenset(rng.sample(feats + ["nope1", "nope2"], rng.randint(0, 4)))
    return TrainingDataset.from_pairs(items, cats), query


class TestOracleEquivalence:
    def test_100_random_pairs_match_brute_force_exactly(self):
        rng = random.Random(20260809)
        for _ in range(100):
            data, query = random_case(rng)
            model = train_decision_list(data)
            dist, used, support = predict_decision_list(model, query)
            ref_dist, ref_used, ref_support = brute_force_predict(
                list(data.items), data.categories, query
            )
            assert used == ref_used
            assert support == ref_support
            assert dist == ref_dist  # exact equality, including 0.0 and 1.0


class TestModelFile:
    def test_round_trip(self, tmp_path):
        model = train_decision_list(MIXED)
        path = tmp_path / "model.dlist"
        save_decision_list(model, path)
        loaded = load_decision_list(path)
        assert loaded.categories == model.categories
        assert loaded.total_items == model.total_items
        assert loaded.prior == model.prior
        assert loaded.entries == model.entries

    def test_layout(self, tmp_path):
        model = train_decision_list(MIXED)
        path = tmp_path / "model.dlist"
        save_decision_list(model, path)
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "tagmend-dlist/1"
        key, support, cells = lines[2].split("\t")
        assert key == "f1" and support == "5"
        assert "A=0.4" in cells
