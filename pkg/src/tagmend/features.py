"""Positional n-gram context features for a tagged sentence.

Each sentence yields at most 26 features, all anchored to the main
verb-phrase segment over the tag-free token stream:

* 1- to 5-grams ending just left of the segment,
* 1- to 10-grams starting at the segment's first token,
* 1- to 10-grams ending at the segment's last token,
* the sentence-final token.

Windows that would cross a sentence boundary are omitted, so short
sentences produce fewer features.  Split verb phrases are merged first by
deleting the tokens between the two parts.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, TextIO

from .corpus import Example, Span, TaggedSentence
from .tokenizer import tokenize  # noqa: F401  (re-exported: tokenizing lives with features)

KEY_JOINER = "⁞"  # vertical four dots; punctuation, so never inside a multi-char token


class FeatureKind(Enum):
    LEFT_OF_OPEN_V = "L"
    RIGHT_OF_OPEN_V = "R"
    LEFT_OF_CLOSE_V = "C"
    SENTENCE_FINAL = "S"


MAX_ORDER = {
    FeatureKind.LEFT_OF_OPEN_V: 5,
    FeatureKind.RIGHT_OF_OPEN_V: 10,
    FeatureKind.LEFT_OF_CLOSE_V: 10,
    FeatureKind.SENTENCE_FINAL: 1,
}


@dataclass(frozen=True)
class Feature:
    kind: FeatureKind
    order: int
    tokens: tuple[str, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.order <= MAX_ORDER[self.kind]:
            raise ValueError(f"order {self.order} out of range for {self.kind.name}")
        if len(self.tokens) != self.order:
            raise ValueError(f"{self.order}-gram must carry {self.order} tokens")


def feature_key(feature: Feature) -> str:
    """Injective canonical encoding, stable across runs: ``kind:order:tokens``."""
    return f"{feature.kind.value}:{feature.order}:{KEY_JOINER.join(feature.tokens)}"


def normalize_split_verb(sentence: TaggedSentence) -> TaggedSentence:
    """Merge a two-part verb phrase by deleting the tokens between the parts.

    Single-segment sentences pass through unchanged.  A ``<vj>`` segment is
    kept (shifted) when it lies outside the deleted gap and dropped when it
    lies inside; the original raw line no longer matches, so it is cleared.
    """
    if len(sentence.v_segments) == 1:
        return sentence
    first, second = sentence.v_segments
    gap = second.start - first.stop
    tokens = sentence.tokens[: first.stop] + sentence.tokens[second.start :]
    merged = Span(first.start, second.stop - gap)
    vj = sentence.vj_segment
    if vj is not None:
        if vj.stop <= first.stop:
            pass
        elif vj.start >= second.start:
            vj = vj.shifted(-gap)
        else:
            vj = None
    return TaggedSentence(tokens, (merged,), vj, raw=None)


def extract_features(sentence: TaggedSentence) -> frozenset[Feature]:
    """All context features of a sentence (split phrases merged first)."""
    if len(sentence.v_segments) > 1:
        sentence = normalize_split_verb(sentence)
    tokens = sentence.tokens
    segment = sentence.v_segments[0]
    found: set[Feature] = set()
    for order in range(1, MAX_ORDER[FeatureKind.LEFT_OF_OPEN_V] + 1):
        if order <= segment.start:
            found.add(
                Feature(
                    FeatureKind.LEFT_OF_OPEN_V,
                    order,
                    tokens[segment.start - order : segment.start],
                )
            )
    for order in range(1, MAX_ORDER[FeatureKind.RIGHT_OF_OPEN_V] + 1):
        if segment.start + order <= len(tokens):
            found.add(
                Feature(
                    FeatureKind.RIGHT_OF_OPEN_V,
                    order,
                    tokens[segment.start : segment.start + order],
                )
            )
    for order in range(1, MAX_ORDER[FeatureKind.LEFT_OF_CLOSE_V] + 1):
        if order <= segment.stop:
            found.add(
                Feature(
                    FeatureKind.LEFT_OF_CLOSE_V,
                    order,
                    tokens[segment.stop - order : segment.stop],
                )
            )
    if tokens:
        found.add(Feature(FeatureKind.SENTENCE_FINAL, 1, (tokens[-1],)))
    return frozenset(found)


def extract_feature_keys(sentence: TaggedSentence) -> frozenset[str]:
    return frozenset(feature_key(f) for f in extract_features(sentence))


def write_feature_dump(examples: Iterable[Example], stream: TextIO) -> None:
    """Debug listing: one ``exampleId<TAB>featureKey`` line per feature."""
    for example in examples:
        for key in sorted(extract_feature_keys(example.english)):
            stream.write(f"{example.id}\t{key}\n")
