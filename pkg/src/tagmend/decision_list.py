"""Decision-list classifier: predict from the single strongest feature present.

Each feature's entry holds the relative frequency of categories among the
training items that contain it.  A query is answered by the entry of the
feature whose best category probability is highest; ties go to the feature
with more supporting items, then to the lexicographically first key.  A
query with no known feature falls back to the global category distribution.
Probabilities of exactly 0 and 1 are legitimate (no smoothing).
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Iterable

from .training import TrainingDataset


@dataclass(frozen=True)
class DecisionListEntry:
    distribution: dict[str, float]  # over the full category inventory
    support: int  # training items containing the feature
    strength: float  # max of the distribution

    def __post_init__(self) -> None:
        total = sum(self.distribution.values())
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"entry distribution sums to {total}, not 1")
        if self.support < 1:
            raise ValueError("support must be >= 1")


@dataclass(frozen=True)
class DecisionList:
    entries: dict[str, DecisionListEntry]
    prior: dict[str, float]
    categories: tuple[str, ...]
    total_items: int

    def predict(self, features: Iterable[str]) -> tuple[dict[str, float], str | None, int]:
        return predict_decision_list(self, features)


def train_decision_list(data: TrainingDataset) -> DecisionList:
    """Count-based training: per-feature and global category frequencies."""
    if not data.items:
        raise ValueError("cannot train on an empty dataset")
    feature_counts: dict[str, dict[str, int]] = {}
    feature_totals: dict[str, int] = {}
    prior_counts = {category: 0 for category in data.categories}
    for feats, label in data.items:
        prior_counts[label] += 1
        for key in feats:
            per_cat = feature_counts.setdefault(key, {})
            per_cat[label] = per_cat.get(label, 0) + 1
            feature_totals[key] = feature_totals.get(key, 0) + 1
    total = len(data.items)
    prior = {category: prior_counts[category] / total for category in data.categories}
    entries: dict[str, DecisionListEntry] = {}
    for key, per_cat in feature_counts.items():
        support = feature_totals[key]
        distribution = {
            category: per_cat.get(category, 0) / support for category in data.categories
        }
        entries[key] = DecisionListEntry(distribution, support, max(distribution.values()))
    return DecisionList(entries, prior, data.categories, total)


def predict_decision_list(
    model: DecisionList, features: Iterable[str]
) -> tuple[dict[str, float], str | None, int]:
    """Return ``(distribution, used feature key or None, support)``.

    The used feature is the known query feature with the highest strength;
    ties break by larger support, then by lexicographically smaller key.
    With no known feature the global prior is returned with the total
    training item count as support.
    """
    known = [key for key in set(features) if key in model.entries]
    if not known:
        return dict(model.prior), None, model.total_items
    best = min(
        known,
        key=lambda key: (-model.entries[key].strength, -model.entries[key].support, key),
    )
    entry = model.entries[best]
    return dict(entry.distribution), best, entry.support


_FORMAT_HEADER = "tagmend-dlist/1"


def save_decision_list(model: DecisionList, path: str | os.PathLike[str]) -> None:
    """Versioned model file: JSON header, then one entry per line."""
    header = {
        "categories": list(model.categories),
        "total_items": model.total_items,
        "prior": {category: repr(p) for category, p in model.prior.items()},
    }
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(_FORMAT_HEADER + "\n")
        handle.write(json.dumps(header, ensure_ascii=False) + "\n")
        for key in sorted(model.entries):
            entry = model.entries[key]
            cells = ",".join(
                f"{category}={entry.distribution[category]!r}"
                for category in model.categories
                if entry.distribution[category] > 0.0
            )
            handle.write(f"{key}\t{entry.support}\t{cells}\n")


def load_decision_list(path: str | os.PathLike[str]) -> DecisionList:
    with open(path, encoding="utf-8") as handle:
        version = handle.readline().rstrip("\n")
        if version != _FORMAT_HEADER:
            raise ValueError(f"not a decision-list model file (header {version!r})")
        header = json.loads(handle.readline())
        categories = tuple(header["categories"])
        prior = {category: float(p) for category, p in header["prior"].items()}
        entries: dict[str, DecisionListEntry] = {}
        for line in handle:
            line = line.rstrip("\n")
            if not line:
                continue
            key, support, cells = line.split("\t")
            distribution = {category: 0.0 for category in categories}
            for cell in cells.split(","):
                category, _, prob = cell.partition("=")
                distribution[category] = float(prob)
            entries[key] = DecisionListEntry(
                distribution, int(support), max(distribution.values())
            )
    return DecisionList(entries, prior, categories, int(header["total_items"]))
