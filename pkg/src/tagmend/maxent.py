"""Conditional maximum-entropy classifier trained by iterative scaling.

The model is the conditional exponential family

    p(a | b)  ∝  exp( Σ_f  w[f, a] · 1[f ∈ b]  +  bias[a] )

over the categories observed in training, fit so that for every observed
(feature, category) pair the model's expected count over the training
contexts matches the empirical count.  Training uses generalized iterative
scaling with the activation-count constant C = max_i n_i: the update
``w += (1/C) · log(empirical / expected)`` is a valid minorizing step even
when activation counts vary per context, so no correction feature needs to
be trained.  A doubling line search along the scaling direction picks the
best step multiple by actual likelihood; the ascent stays monotone and
escapes the slow crawl the damped 1/C step suffers near boundary optima.

Pairs never observed together (or observed fewer than ``min_feature_count``
times) carry no parameter (weight zero), and categories never observed in
training get probability exactly zero: no smoothing beyond the optional
always-on bias feature.
"""
from __future__ import annotations

import json
import os
import warnings
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
from scipy import sparse

from .training import TrainingDataset

_LOG_FLOOR = 1e-300  # guards log() against transient underflow of expected counts


class NonConvergenceWarning(UserWarning):
    """Training hit the iteration cap before reaching the residual tolerance."""


@dataclass(frozen=True)
class MaxentConfig:
    max_iterations: int = 500
    tolerance: float = 1e-3
    add_bias_feature: bool = True
    min_feature_count: int = 1

    def __post_init__(self) -> None:
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be >= 0")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.min_feature_count < 1:
            raise ValueError("min_feature_count must be >= 1")


@dataclass(frozen=True)
class TrainingMeta:
    iterations: int
    final_residual: float
    converged: bool
    config: MaxentConfig
    log_likelihoods: tuple[float, ...] = field(default=(), repr=False)


@dataclass
class MaxentModel:
    """Trained weights plus everything needed to score new contexts."""

    categories: tuple[str, ...]
    observed: tuple[str, ...]
    feature_index: dict[str, int]
    weights: np.ndarray  # (features, observed categories)
    attested: np.ndarray  # bool, same shape: which pairs carry a constraint
    bias: np.ndarray | None  # (observed categories,) or None
    meta: TrainingMeta

    def predict(self, features: Iterable[str]) -> dict[str, float]:
        return predict_maxent(self, features)


def _assemble(data: TrainingDataset, config: MaxentConfig):
    """Index features/categories and build the sparse design matrix.

    Feature sets are walked in sorted order so the column layout (and with
    it every float summation) is identical across processes regardless of
    hash randomization.
    """
    counts: dict[str, int] = {}
    order: list[str] = []
    for feats, _ in data.items:
        for key in sorted(feats):
            if key not in counts:
                counts[key] = 0
                order.append(key)
            counts[key] += 1
    kept = [key for key in order if counts[key] >= config.min_feature_count]
    feature_index = {key: pos for pos, key in enumerate(kept)}

    label_counts: dict[str, int] = {}
    for _, label in data.items:
        label_counts[label] = label_counts.get(label, 0) + 1
    observed = tuple(c for c in data.categories if c in label_counts)
    cat_index = {c: k for k, c in enumerate(observed)}

    rows, cols = [], []
    for i, (feats, _) in enumerate(data.items):
        for key in sorted(feats):
            col = feature_index.get(key)
            if col is not None:
                rows.append(i)
                cols.append(col)
    n_items, n_feats = len(data.items), len(kept)
    design = sparse.csr_matrix(
        (np.ones(len(rows)), (rows, cols)), shape=(n_items, n_feats)
    )
    labels = np.array([cat_index[label] for _, label in data.items])
    return feature_index, observed, design, labels


def train_maxent(data: TrainingDataset, config: MaxentConfig | None = None) -> MaxentModel:
    """Fit the model by iterative scaling.

    Raises on an empty dataset.  A single-category dataset is legal and
    degenerate (that category always gets probability one).  If the
    residual tolerance is not reached within ``max_iterations`` a
    :class:`NonConvergenceWarning` is raised and the final residual is
    recorded honestly in the returned metadata.
    """
    if config is None:
        config = MaxentConfig()
    if not data.items:
        raise ValueError("cannot train on an empty dataset")

    feature_index, observed, design, labels = _assemble(data, config)
    n_items = len(data.items)
    n_cats = len(observed)
    onehot = np.zeros((n_items, n_cats))
    onehot[np.arange(n_items), labels] = 1.0

    empirical = np.asarray(design.T @ onehot)  # (F, K) observed pair counts
    # The cutoff applies to joint (feature, category) counts: a pair seen
    # fewer times carries no parameter and no constraint.
    attested = empirical >= config.min_feature_count
    bias_empirical = onehot.sum(axis=0)  # > 0 for every observed category

    # C = max features active for any training event (bias included).
    per_item = np.asarray(design.sum(axis=1)).ravel()
    if config.add_bias_feature:
        per_item = per_item + 1.0
    constant = max(1.0, float(per_item.max()) if per_item.size else 1.0)
    step = 1.0 / constant

    weights = np.zeros((len(feature_index), n_cats))
    bias = np.zeros(n_cats) if config.add_bias_feature else None

    log_emp = np.log(np.maximum(empirical, _LOG_FLOOR))
    log_bias_emp = np.log(bias_empirical)
    rows_idx = np.arange(n_items)

    def log_likelihood(scores: np.ndarray) -> float:
        peak = scores.max(axis=1)
        log_z = np.log(np.exp(scores - peak[:, None]).sum(axis=1)) + peak
        return float((scores[rows_idx, labels] - log_z).sum())

    def expectations(w: np.ndarray, b: np.ndarray | None):
        scores = np.asarray(design @ w)
        if b is not None:
            scores = scores + b
        shifted = scores - scores.max(axis=1, keepdims=True)
        expw = np.exp(shifted)
        probs = expw / expw.sum(axis=1)[:, None]
        expected = np.asarray(design.T @ probs)
        bias_expected = probs.sum(axis=0)
        return scores, expected, bias_expected

    def scale_step(w, b, expected, bias_expected):
        """One plain iterative-scaling update of all parameters."""
        new_w = w.copy()
        new_w[attested] += step * (
            log_emp[attested] - np.log(np.maximum(expected[attested], _LOG_FLOOR))
        )
        new_b = None
        if b is not None:
            new_b = b + step * (
                log_bias_emp - np.log(np.maximum(bias_expected, _LOG_FLOOR))
            )
        return new_w, new_b

    def ll_at(w, b) -> float:
        scores = np.asarray(design @ w)
        if b is not None:
            scores = scores + b
        return log_likelihood(scores)

    log_likelihoods: list[float] = []
    iterations = 0
    residual = np.inf
    # Squared extrapolation through two scaling steps, safeguarded so the
    # likelihood never decreases; plain iterative scaling converges on the
    # same fixed point but crawls when features are strongly correlated.
    while True:
        scores0, expected0, bias_expected0 = expectations(weights, bias)
        log_likelihoods.append(log_likelihood(scores0))

        residual = (
            float(np.abs(expected0[attested] - empirical[attested]).max())
            if attested.any()
            else 0.0
        )
        if bias is not None:
            residual = max(residual, float(np.abs(bias_expected0 - bias_empirical).max()))
        if residual <= config.tolerance or iterations >= config.max_iterations:
            break

        w1, b1 = scale_step(weights, bias, expected0, bias_expected0)
        _, expected1, bias_expected1 = expectations(w1, b1)
        w2, b2 = scale_step(w1, b1, expected1, bias_expected1)

        r_w = w1 - weights
        v_w = (w2 - w1) - r_w
        norm_r = float((r_w * r_w).sum())
        norm_v = float((v_w * v_w).sum())
        if bias is not None:
            r_b = b1 - bias
            v_b = (b2 - b1) - r_b
            norm_r += float((r_b * r_b).sum())
            norm_v += float((v_b * v_b).sum())
        next_w, next_b = w2, b2
        if norm_v > 0.0:
            alpha = -max(1.0, np.sqrt(norm_r / norm_v))
            w_x = weights - 2.0 * alpha * r_w + alpha * alpha * v_w
            b_x = None if bias is None else bias - 2.0 * alpha * r_b + alpha * alpha * v_b
            ll_x = ll_at(w_x, b_x)
            if np.isfinite(ll_x) and ll_x >= ll_at(w2, b2):
                next_w, next_b = w_x, b_x

        # Push further along the accepted direction while likelihood rises;
        # near-boundary optima need exponentially growing weights and the
        # unassisted step length approaches them only logarithmically.
        d_w = next_w - weights
        d_b = None if bias is None else next_b - bias
        score_delta = np.asarray(design @ d_w)
        if d_b is not None:
            score_delta += d_b
        best_multiple, best_ll = 1.0, log_likelihood(scores0 + score_delta)
        multiple = 2.0
        while multiple <= 65536.0:
            ll = log_likelihood(scores0 + multiple * score_delta)
            if not np.isfinite(ll) or ll <= best_ll:
                break
            best_multiple, best_ll = multiple, ll
            multiple *= 2.0
        weights = weights + best_multiple * d_w
        if bias is not None:
            bias = bias + best_multiple * d_b
        iterations += 1

    converged = residual <= config.tolerance
    if not converged:
        warnings.warn(
            f"iterative scaling stopped after {iterations} iterations "
            f"with residual {residual:.3g} > tolerance {config.tolerance:g}",
            NonConvergenceWarning,
            stacklevel=2,
        )
    meta = TrainingMeta(
        iterations=iterations,
        final_residual=residual,
        converged=converged,
        config=config,
        log_likelihoods=tuple(log_likelihoods),
    )
    return MaxentModel(
        categories=data.categories,
        observed=observed,
        feature_index=feature_index,
        weights=weights,
        attested=attested,
        bias=bias,
        meta=meta,
    )


def predict_maxent(model: MaxentModel, features: Iterable[str]) -> dict[str, float]:
    """Probability of each category given a feature set.

    Features the model has never seen are ignored.  Categories that never
    occurred in training get probability zero.  The result sums to one.
    """
    rows = sorted(
        model.feature_index[f] for f in set(features) if f in model.feature_index
    )
    scores = np.zeros(len(model.observed))
    if rows:
        scores += model.weights[rows].sum(axis=0)
    if model.bias is not None:
        scores += model.bias
    scores -= scores.max()
    expw = np.exp(scores)
    probs = expw / expw.sum()
    result = {category: 0.0 for category in model.categories}
    for category, p in zip(model.observed, probs):
        result[category] = float(p)
    return result


_FORMAT_HEADER = "tagmend-maxent/1"


def save_maxent(model: MaxentModel, path: str | os.PathLike[str]) -> None:
    """Write the versioned model file: JSON header, then one weight per line.

    Only attested (feature, category) pairs are written; their presence in
    the file is what reconstructs the attestation mask on load.
    """
    header = {
        "categories": list(model.categories),
        "observed": list(model.observed),
        "bias": None if model.bias is None else [repr(float(v)) for v in model.bias],
        "config": {
            "max_iterations": model.meta.config.max_iterations,
            "tolerance": model.meta.config.tolerance,
            "add_bias_feature": model.meta.config.add_bias_feature,
            "min_feature_count": model.meta.config.min_feature_count,
        },
        "meta": {
            "iterations": model.meta.iterations,
            "final_residual": repr(float(model.meta.final_residual)),
            "converged": model.meta.converged,
        },
    }
    features = sorted(model.feature_index, key=model.feature_index.__getitem__)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(_FORMAT_HEADER + "\n")
        handle.write(json.dumps(header, ensure_ascii=False) + "\n")
        for key in features:
            row = model.feature_index[key]
            for col, category in enumerate(model.observed):
                if model.attested[row, col]:
                    handle.write(f"{key}\t{category}\t{float(model.weights[row, col])!r}\n")


def load_maxent(path: str | os.PathLike[str]) -> MaxentModel:
    with open(path, encoding="utf-8") as handle:
        version = handle.readline().rstrip("\n")
        if version != _FORMAT_HEADER:
            raise ValueError(f"not a maxent model file (header {version!r})")
        header = json.loads(handle.readline())
        entries = []
        for line in handle:
            line = line.rstrip("\n")
            if not line:
                continue
            key, category, weight = line.split("\t")
            entries.append((key, category, float(weight)))
    observed = tuple(header["observed"])
    cat_index = {c: k for k, c in enumerate(observed)}
    feature_index: dict[str, int] = {}
    for key, _, _ in entries:
        if key not in feature_index:
            feature_index[key] = len(feature_index)
    weights = np.zeros((len(feature_index), len(observed)))
    attested = np.zeros_like(weights, dtype=bool)
    for key, category, weight in entries:
        row, col = feature_index[key], cat_index[category]
        weights[row, col] = weight
        attested[row, col] = True
    bias = None if header["bias"] is None else np.array([float(v) for v in header["bias"]])
    config = MaxentConfig(**header["config"])
    meta = TrainingMeta(
        iterations=header["meta"]["iterations"],
        final_residual=float(header["meta"]["final_residual"]),
        converged=header["meta"]["converged"],
        config=config,
    )
    return MaxentModel(
        categories=tuple(header["categories"]),
        observed=observed,
        feature_index=feature_index,
        weights=weights,
        attested=attested,
        bias=bias,
        meta=meta,
    )
