"""Deterministic synthetic corpus whose categories are recoverable from text.

Every category is realized by a surface verb-phrase template whose first
tokens identify it uniquely within the generator's universe, so the
premise of tag correction (category predictable from English context
features) holds by construction.  A slice of the corpus uses rare verbs
drawn from a long tail of pseudo-words; those patterns are hard for a
model to learn, which keeps the benchmark honestly imperfect.

Sentence shapes:

* declaratives:   subject  <v>phrase</v>  tail  "."
* interrogatives: <v>Aux</v>  subject  <v>verb</v>  "?"   (split phrase)
* imperatives:    <v>Verb</v>  tail  "!"
* a minority of declaratives append a clause carrying a ``<vj>`` phrase.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .corpus import Example, Span, TaggedSentence, Taxonomy

SUBJECTS = (
    ("He",),
    ("She",),
    ("The", "boy"),
    ("The", "girl"),
    ("The", "teacher"),
    ("The", "farmer"),
    ("My", "friend"),
    ("Her", "brother"),
)

TAILS = (
    (),
    ("now",),
    ("today",),
    ("there",),
    ("again",),
    ("slowly",),
    ("quietly",),
    ("every", "day"),
    ("in", "the", "garden"),
    ("at", "the", "market"),
    ("after", "lunch"),
    ("with", "great", "care"),
)

VERBS = (
    "walk", "talk", "play", "work", "jump", "call", "open", "visit",
    "clean", "cook", "paint", "pull", "climb", "count", "help", "laugh",
    "learn", "cheer", "shout", "wait",
)

NOUNS = (
    "garden", "river", "market", "letter", "window", "mountain",
    "village", "picture", "story", "ticket",
)

GREETINGS = ("Hello", "Goodbye", "Thanks", "Cheers")

# Pseudo-verbs for the rare tail; regular morphology applies mechanically.
_RARE_ONSETS = ("bl", "br", "cl", "cr", "dr", "fl", "gr", "pl", "sk", "sn", "tr", "tw")
_RARE_RIMES = ("amp", "ick", "ift", "ilt", "int", "irk", "olt", "omp", "ump", "usk", "elm", "arn")
RARE_VERBS = tuple(onset + rime for onset in _RARE_ONSETS for rime in _RARE_RIMES)

RARE_VERB_FRACTION = 0.10
SPLIT_PHRASE_FRACTION = 0.15
VJ_CLAUSE_FRACTION = 0.10

# Hand-skewed category frequencies: plain present dominates (as it does in
# real corpora of this kind) and the tense/aspect long tail is thin.  The
# skew is what keeps the benchmark imperfect: scarce categories with scarce
# verbs drift toward the prior and become low-confidence judgments.
CATEGORY_WEIGHTS = {
    "present": 22,
    "past": 12,
    "present-progressive": 4,
    "past-progressive": 3,
    "present-perfect": 4,
    "past-perfect": 3,
    "present-perfect-progressive": 1,
    "past-perfect-progressive": 1,
    "imperative": 4,
    "be-able-to": 2,
    "be-able-to-past": 1,
    "be-going-to": 2,
    "be-going-to-past": 1,
    "can": 4,
    "could": 3,
    "have-to": 3,
    "have-to-past": 2,
    "had-better": 1,
    "may": 3,
    "might": 2,
    "must": 3,
    "need": 1,
    "ought": 1,
    "shall": 1,
    "should": 3,
    "used-to": 1,
    "will": 4,
    "would": 3,
    "noun-phrase": 2,
    "participial": 2,
    "verb-ellipsis": 1,
    "interjection": 2,
    "no-correspondence": 1,
    "untaggable": 2,
}

# Verbs used only inside <vj> clauses, kept apart from the main inventory.
VJ_VERBS = ("rest", "sleep", "sing", "read")

# Auxiliary-led categories that also appear as split interrogatives.
_INVERTIBLE = ("can", "could", "may", "might", "must", "shall", "should", "will", "would")

# Tense-ambiguous verbs (past form equals the base form).  With a plural
# subject the whole anchor profile of a present and a past sentence
# coincides; only a tense adverb late in the right window separates them.
# These sentences are the benchmark's honest hard cases.
AMBI_VERBS = ("put", "cut", "set", "hit", "let", "cast", "shut", "split")
AMBI_SUBJECTS = (("They",), ("We",), ("You",), ("The", "boys"), ("The", "girls"))
AMBI_OBJECTS = (("it",), ("it", "there"), ("the", "box"), ("the", "box", "down"), ("them",))
PRESENT_ADVERBS = ("daily", "often", "usually")
PAST_ADVERBS = ("yesterday", "recently", "earlier")
AMBI_FRACTION = 0.25  # of plain present/past examples


def _phrase_builders() -> dict[str, Callable[[str], tuple[str, ...]]]:
    """Verb-phrase template per category id, as a function of the base verb."""
    return {
        "present": lambda v: (v + "s",),
        "past": lambda v: (v + "ed",),
        "present-progressive": lambda v: ("is", v + "ing"),
        "past-progressive": lambda v: ("was", v + "ing"),
        "present-perfect": lambda v: ("has", v + "ed"),
        "past-perfect": lambda v: ("had", v + "ed"),
        "present-perfect-progressive": lambda v: ("has", "been", v + "ing"),
        "past-perfect-progressive": lambda v: ("had", "been", v + "ing"),
        "be-able-to": lambda v: ("is", "able", "to", v),
        "be-able-to-past": lambda v: ("was", "able", "to", v),
        "be-going-to": lambda v: ("is", "going", "to", v),
        "be-going-to-past": lambda v: ("was", "going", "to", v),
        "can": lambda v: ("can", v),
        "could": lambda v: ("could", v),
        "have-to": lambda v: ("has", "to", v),
        "have-to-past": lambda v: ("had", "to", v),
        "had-better": lambda v: ("had", "better", v),
        "may": lambda v: ("may", v),
        "might": lambda v: ("might", v),
        "must": lambda v: ("must", v),
        "need": lambda v: ("need", "not", v),
        "ought": lambda v: ("ought", "to", v),
        "shall": lambda v: ("shall", v),
        "should": lambda v: ("should", v),
        "used-to": lambda v: ("used", "to", v),
        "will": lambda v: ("will", v),
        "would": lambda v: ("would", v),
    }


_PHRASES = _phrase_builders()

_ROMAJI = (
    "kawa", "yama", "hana", "tori", "sora", "michi", "mura", "hoshi",
    "kaze", "umi", "niwa", "hon", "inu", "neko", "tsuki",
)


@dataclass(frozen=True)
class GeneratorSpec:
    size: int
    rule_seed: int
    vocabulary: tuple[str, ...] | None = None  # overrides the verb inventory

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("size must be at least 1")


def _pseudo_japanese(rng: random.Random, ordinal: int) -> str:
    words = " ".join(rng.choice(_ROMAJI) for _ in range(rng.randint(3, 5)))
    return f"{words} 例{ordinal}"


def generate_synthetic_corpus(spec: GeneratorSpec, taxonomy: Taxonomy) -> list[Example]:
    """Build ``spec.size`` examples, identical for identical specs."""
    rng = random.Random(spec.rule_seed)
    verbs = spec.vocabulary if spec.vocabulary is not None else VERBS
    category_ids = taxonomy.category_ids()
    weights = [CATEGORY_WEIGHTS.get(category_id, 1) for category_id in category_ids]
    examples: list[Example] = []
    for ordinal in range(1, spec.size + 1):
        category_id = rng.choices(category_ids, weights=weights, k=1)[0]
        example_id = f"e{ordinal}"
        japanese = _pseudo_japanese(rng, ordinal)

        def pick_verb() -> str:
            if rng.random() < RARE_VERB_FRACTION:
                return rng.choice(RARE_VERBS)
            return rng.choice(verbs)

        vj_category = None
        tail = rng.choice(TAILS)
        if category_id in ("present", "past") and rng.random() < AMBI_FRACTION:
            verb = rng.choice(AMBI_VERBS)
            subject = rng.choice(AMBI_SUBJECTS)
            obj = rng.choice(AMBI_OBJECTS)
            adverb = rng.choice(PRESENT_ADVERBS if category_id == "present" else PAST_ADVERBS)
            start = len(subject)
            tokens = subject + (verb,) + obj + (adverb, ".")
            sentence = TaggedSentence(tokens, (Span(start, start + 1),))
        elif category_id == "imperative":
            verb = pick_verb()
            tokens = (verb.capitalize(),) + tail + ("!",)
            sentence = TaggedSentence(tokens, (Span(0, 1),))
        elif category_id == "interjection":
            word = rng.choice(GREETINGS)
            tokens = (word, "!")
            sentence = TaggedSentence(tokens, (Span(0, 1),))
        elif category_id == "noun-phrase":
            noun = rng.choice(NOUNS)
            tokens = ("A", noun, ".")
            sentence = TaggedSentence(tokens, (Span(0, 2),))
        elif category_id == "participial":
            verb = pick_verb()
            tokens = (verb.capitalize() + "ing", ",", "he", "waits", ".")
            sentence = TaggedSentence(tokens, (Span(0, 1),))
        elif category_id == "verb-ellipsis":
            subject = rng.choice(SUBJECTS)
            tokens = subject + ("likewise", ".")
            sentence = TaggedSentence(tokens, (Span(len(subject), len(subject) + 1),))
        elif category_id == "no-correspondence":
            subject = rng.choice(SUBJECTS)
            tokens = subject + ("remains", "so", ".")
            sentence = TaggedSentence(tokens, (Span(len(subject), len(subject) + 1),))
        elif category_id == "untaggable":
            tokens = ("Untranslatable", ".")
            sentence = TaggedSentence(tokens, (Span(0, 1),))
        elif category_id in _INVERTIBLE and rng.random() < SPLIT_PHRASE_FRACTION:
            verb = pick_verb()
            aux = _PHRASES[category_id](verb)[0]
            subject = rng.choice(SUBJECTS)
            # <v>Aux</v> subject <v>verb</v> ?
            tokens = (aux.capitalize(),) + subject + (verb, "?")
            first = Span(0, 1)
            second = Span(1 + len(subject), 2 + len(subject))
            sentence = TaggedSentence(tokens, (first, second))
        else:
            verb = pick_verb()
            phrase = _PHRASES[category_id](verb)
            subject = rng.choice(SUBJECTS)
            start = len(subject)
            body = subject + phrase + tail
            if rng.random() < VJ_CLAUSE_FRACTION:
                vj_verb = rng.choice(VJ_VERBS)
                vj_start = len(body) + 3
                tokens = body + (",", "and", "she", vj_verb + "s", "late", ".")
                sentence = TaggedSentence(
                    tokens,
                    (Span(start, start + len(phrase)),),
                    vj_segment=Span(vj_start, vj_start + 1),
                )
                vj_category = taxonomy.by_id("present")
            else:
                tokens = body + (".",)
                sentence = TaggedSentence(tokens, (Span(start, start + len(phrase)),))
        examples.append(
            Example(example_id, japanese, sentence, taxonomy.by_id(category_id), vj_category)
        )
    return examples
