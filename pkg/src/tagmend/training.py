"""Training data shared by the probabilistic learners."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus import Example, Taxonomy
from .features import extract_feature_keys


@dataclass(frozen=True)
class TrainingDataset:
    """Labeled feature-set items plus the category inventory they draw from.

    ``categories`` fixes both the inventory and its order; every item's
    label must be in it.  The inventory may impose categories that never
    occur in the items.
    """

    items: tuple[tuple[frozenset[str], str], ...]
    categories: tuple[str, ...]

    def __post_init__(self) -> None:
        known = set(self.categories)
        if len(known) != len(self.categories):
            raise ValueError("duplicate category in inventory")
        for _, label in self.items:
            if label not in known:
                raise ValueError(f"item label {label!r} not in category inventory")

    def __len__(self) -> int:
        return len(self.items)

    @classmethod
    def from_pairs(
        cls,
        pairs: Iterable[tuple[Iterable[str], str]],
        categories: Sequence[str] | None = None,
    ) -> "TrainingDataset":
        items = tuple((frozenset(feats), label) for feats, label in pairs)
        if categories is None:
            seen: list[str] = []
            for _, label in items:
                if label not in seen:
                    seen.append(label)
            categories = seen
        return cls(items, tuple(categories))


def dataset_from_examples(
    examples: Sequence[Example],
    taxonomy: Taxonomy,
    feature_sets: Sequence[frozenset[str]] | None = None,
) -> TrainingDataset:
    """Build a dataset from corpus examples, labels taken from ``<v>`` tags.

    Pass precomputed ``feature_sets`` (aligned with ``examples``) to avoid
    re-extracting features, e.g. across cross-validation folds.
    """
    if feature_sets is None:
        feature_sets = [extract_feature_keys(ex.english) for ex in examples]
    items = tuple(
        (feats, ex.v_category.id) for feats, ex in zip(feature_sets, examples)
    )
    return TrainingDataset(items, taxonomy.category_ids())
