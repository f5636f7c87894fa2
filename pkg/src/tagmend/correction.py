"""Score corpus tags, judge them, and rank proposed corrections.

Closed mode trains one model on the whole corpus and judges every tag
against it.  Open mode judges each tag with a model trained on everything
outside the tag's cross-validation fold, so a tag never contributes to the
model that judges it.

A tag is judged correct when its category reaches the highest predicted
probability (ties involving it count as correct); otherwise the best other
category is proposed.  Two confidence readings are kept per candidate:
method M1 is the probability of the proposed category, method M2 is one
minus the probability of the original tag.
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Protocol, Sequence

from .corpus import CategoryLabel, Example, Taxonomy
from .decision_list import DecisionList, predict_decision_list, train_decision_list
from .features import extract_feature_keys
from .maxent import MaxentConfig, MaxentModel, predict_maxent, train_maxent
from .training import TrainingDataset

MODE_CLOSED = "closed"
MODE_OPEN = "open"
METHOD_M1 = "M1"
METHOD_M2 = "M2"


@dataclass(frozen=True)
class CorrectionCandidate:
    """A tag judged incorrect, with its proposed replacement and evidence."""

    example_id: str
    original_id: str
    proposed_id: str
    p_original: float
    p_proposed: float
    confidence_m1: float
    confidence_m2: float
    support: int
    learner: str
    mode: str

    def __post_init__(self) -> None:
        if self.proposed_id == self.original_id:
            raise ValueError("proposed category must differ from the original")
        if self.p_proposed < self.p_original:
            raise ValueError("proposed category cannot be less probable than the original")
        if not 0.0 < self.confidence_m1 <= 1.0:
            raise ValueError(f"confidence M1 {self.confidence_m1} outside (0, 1]")
        # M2 reaches exactly 1.0 when open-data scoring gives the original
        # tag probability zero, the common case the ranking tie-break exists for.
        if not 0.0 <= self.confidence_m2 <= 1.0 or self.confidence_m2 != 1.0 - self.p_original:
            raise ValueError("confidence M2 must equal 1 - p(original) and lie in [0, 1]")


def judge(
    prediction: Mapping[str, float],
    original_id: str,
    category_order: Sequence[str],
) -> str | None:
    """``None`` when the original tag holds the highest probability, else the
    proposed category.

    Ties involving the original count as correct.  Ties between other
    categories break by position in ``category_order``.  An original
    category missing from the prediction counts as probability zero.
    """
    p_original = prediction.get(original_id, 0.0)
    best_id: str | None = None
    best_p = 0.0
    for category in category_order:
        p = prediction.get(category, 0.0)
        if best_id is None or p > best_p:
            best_id, best_p = category, p
    if p_original >= best_p:
        return None
    return best_id


@dataclass(frozen=True)
class FoldAssignment:
    """A k-way partition of example ids, reproducible from its seed."""

    k: int
    assignment: dict[str, int]
    seed: int

    def __post_init__(self) -> None:
        sizes = [0] * self.k
        for fold in self.assignment.values():
            if not 0 <= fold < self.k:
                raise ValueError(f"fold index {fold} out of range")
            sizes[fold] += 1
        if sizes and max(sizes) - min(sizes) > 1:
            raise ValueError(f"fold sizes differ by more than one: {sizes}")

    def members(self, fold: int) -> set[str]:
        return {ex_id for ex_id, f in self.assignment.items() if f == fold}


def make_folds(corpus: Sequence[Example], k: int, seed: int) -> FoldAssignment:
    """Uniform random fold assignment, deterministic for a given seed."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if k > len(corpus):
        raise ValueError(f"cannot make {k} folds from {len(corpus)} examples")
    ids = [example.id for example in corpus]
    rng = random.Random(seed)
    rng.shuffle(ids)
    return FoldAssignment(k, {ex_id: pos % k for pos, ex_id in enumerate(ids)}, seed)


class Scorer(Protocol):
    def score(self, features: frozenset[str]) -> tuple[dict[str, float], int]:
        """Predicted distribution plus an evidence-support count."""


class Learner(Protocol):
    name: str

    def fit(self, data: TrainingDataset) -> Scorer: ...


class _MaxentScorer:
    def __init__(self, model: MaxentModel, postings: dict[str, set[int]]):
        self.model = model
        self._postings = postings

    def score(self, features: frozenset[str]) -> tuple[dict[str, float], int]:
        prediction = predict_maxent(self.model, features)
        hit: set[int] = set()
        for key in features:
            posting = self._postings.get(key)
            if posting:
                hit |= posting
        return prediction, len(hit)


class MaxentLearner:
    """Maximum-entropy learner; support counts the training items sharing at
    least one active feature with the judged example."""

    name = "maxent"

    def __init__(self, config: MaxentConfig | None = None):
        self.config = config

    def fit(self, data: TrainingDataset) -> _MaxentScorer:
        model = train_maxent(data, self.config)
        postings: dict[str, set[int]] = {}
        for row, (feats, _) in enumerate(data.items):
            for key in feats:
                postings.setdefault(key, set()).add(row)
        return _MaxentScorer(model, postings)


class _DecisionListScorer:
    def __init__(self, model: DecisionList):
        self.model = model

    def score(self, features: frozenset[str]) -> tuple[dict[str, float], int]:
        prediction, _, support = predict_decision_list(self.model, features)
        return prediction, support


class DecisionListLearner:
    """Decision-list learner; support is the chosen feature's item count."""

    name = "decision-list"

    def fit(self, data: TrainingDataset) -> _DecisionListScorer:
        return _DecisionListScorer(train_decision_list(data))


LEARNERS = {"maxent": MaxentLearner, "dlist": DecisionListLearner}


def _judge_examples(
    examples: Sequence[Example],
    feature_sets: Sequence[frozenset[str]],
    scorer: Scorer,
    taxonomy: Taxonomy,
    learner_name: str,
    mode: str,
) -> list[CorrectionCandidate]:
    order = taxonomy.category_ids()
    candidates = []
    for example, feats in zip(examples, feature_sets):
        prediction, support = scorer.score(feats)
        proposed = judge(prediction, example.v_category.id, order)
        if proposed is None:
            continue
        p_original = prediction.get(example.v_category.id, 0.0)
        p_proposed = prediction[proposed]
        candidates.append(
            CorrectionCandidate(
                example_id=example.id,
                original_id=example.v_category.id,
                proposed_id=proposed,
                p_original=p_original,
                p_proposed=p_proposed,
                confidence_m1=p_proposed,
                confidence_m2=1.0 - p_original,
                support=support,
                learner=learner_name,
                mode=mode,
            )
        )
    return candidates


def score_closed(
    corpus: Sequence[Example], learner: Learner, taxonomy: Taxonomy
) -> list[CorrectionCandidate]:
    """Train on the whole corpus (tags being judged included) and judge every tag."""
    if not corpus:
        raise ValueError("cannot score an empty corpus")
    feature_sets = [extract_feature_keys(example.english) for example in corpus]
    data = TrainingDataset(
        tuple((feats, ex.v_category.id) for feats, ex in zip(feature_sets, corpus)),
        taxonomy.category_ids(),
    )
    scorer = learner.fit(data)
    return _judge_examples(corpus, feature_sets, scorer, taxonomy, learner.name, MODE_CLOSED)


def score_open(
    corpus: Sequence[Example],
    learner: Learner,
    folds: FoldAssignment,
    taxonomy: Taxonomy,
) -> list[CorrectionCandidate]:
    """Judge each tag with a model trained on the examples outside its fold.

    Candidates are aggregated fold by fold in fold-index order, so output
    is deterministic for a fixed fold assignment.
    """
    missing = [ex.id for ex in corpus if ex.id not in folds.assignment]
    if missing:
        raise ValueError(f"fold assignment does not cover example {missing[0]!r}")
    feature_sets = [extract_feature_keys(example.english) for example in corpus]
    categories = taxonomy.category_ids()
    candidates: list[CorrectionCandidate] = []
    for fold in range(folds.k):
        train_rows = [
            row for row, ex in enumerate(corpus) if folds.assignment[ex.id] != fold
        ]
        held_rows = [row for row, ex in enumerate(corpus) if folds.assignment[ex.id] == fold]
        if not held_rows:
            continue
        train_ids = {corpus[row].id for row in train_rows}
        for row in held_rows:
            # the judged tag must never be in its own training set
            assert corpus[row].id not in train_ids
        data = TrainingDataset(
            tuple((feature_sets[row], corpus[row].v_category.id) for row in train_rows),
            categories,
        )
        scorer = learner.fit(data)
        candidates.extend(
            _judge_examples(
                [corpus[row] for row in held_rows],
                [feature_sets[row] for row in held_rows],
                scorer,
                taxonomy,
                learner.name,
                MODE_OPEN,
            )
        )
    return candidates


def rank(
    candidates: Iterable[CorrectionCandidate], method: str = METHOD_M1
) -> list[CorrectionCandidate]:
    """Sort candidates by confidence, best first.

    Ties break by larger support (features backed by more tags first),
    then by example id for full determinism.
    """
    if method not in (METHOD_M1, METHOD_M2):
        raise ValueError(f"unknown ranking method {method!r}")
    key = (
        (lambda c: (-c.confidence_m1, -c.support, c.example_id))
        if method == METHOD_M1
        else (lambda c: (-c.confidence_m2, -c.support, c.example_id))
    )
    return sorted(candidates, key=key)


def apply_corrections(
    corpus: Sequence[Example], accepted: Mapping[str, CategoryLabel]
) -> list[Example]:
    """Replace the ``<v>`` category of each accepted example id.

    Everything else is untouched, so records that were not corrected
    serialize back byte-identically.
    """
    by_id = {example.id: example for example in corpus}
    for ex_id in accepted:
        if ex_id not in by_id:
            raise KeyError(f"unknown example id {ex_id!r}")
    return [
        ex.with_v_category(accepted[ex.id]) if ex.id in accepted else ex for ex in corpus
    ]


_CANDIDATE_COLUMNS = (
    "exampleId",
    "originalId",
    "proposedId",
    "pOriginal",
    "pProposed",
    "confidenceM1",
    "confidenceM2",
    "support",
    "learner",
    "mode",
)


def write_candidates(
    candidates: Sequence[CorrectionCandidate], path: str | os.PathLike[str]
) -> None:
    """Tab-separated interchange file, one candidate per line, ranked order."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write("\t".join(_CANDIDATE_COLUMNS) + "\n")
        for c in candidates:
            handle.write(
                "\t".join(
                    (
                        c.example_id,
                        c.original_id,
                        c.proposed_id,
                        repr(c.p_original),
                        repr(c.p_proposed),
                        repr(c.confidence_m1),
                        repr(c.confidence_m2),
                        str(c.support),
                        c.learner,
                        c.mode,
                    )
                )
                + "\n"
            )


def read_candidates(path: str | os.PathLike[str]) -> list[CorrectionCandidate]:
    with open(path, encoding="utf-8") as handle:
        header = handle.readline().rstrip("\n").split("\t")
        if tuple(header) != _CANDIDATE_COLUMNS:
            raise ValueError(f"unexpected candidate file header: {header}")
        out = []
        for line in handle:
            line = line.rstrip("\n")
            if not line:
                continue
            cells = line.split("\t")
            if len(cells) != len(_CANDIDATE_COLUMNS):
                raise ValueError(f"bad candidate line: {line!r}")
            out.append(
                CorrectionCandidate(
                    example_id=cells[0],
                    original_id=cells[1],
                    proposed_id=cells[2],
                    p_original=float(cells[3]),
                    p_proposed=float(cells[4]),
                    confidence_m1=float(cells[5]),
                    confidence_m2=float(cells[6]),
                    support=int(cells[7]),
                    learner=cells[8],
                    mode=cells[9],
                )
            )
    return out
