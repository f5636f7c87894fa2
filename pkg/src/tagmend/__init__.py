"""tagmend: find and fix mislabeled tense/aspect/modality tags in a tagged corpus."""

__version__ = "0.1.0"

from .corpus import (
    CategoryLabel,
    CorpusFormatError,
    Example,
    Span,
    TaggedSentence,
    Taxonomy,
    load_corpus,
    load_corpus_file,
    parse_category_symbol,
    parse_example,
    serialize_corpus,
    serialize_example,
    write_corpus,
)
from .features import (
    Feature,
    FeatureKind,
    extract_feature_keys,
    extract_features,
    feature_key,
    normalize_split_verb,
)
from .tokenizer import tokenize

__all__ = [
    "CategoryLabel",
    "CorpusFormatError",
    "Example",
    "Feature",
    "FeatureKind",
    "Span",
    "TaggedSentence",
    "Taxonomy",
    "extract_feature_keys",
    "extract_features",
    "feature_key",
    "load_corpus",
    "load_corpus_file",
    "normalize_split_verb",
    "parse_category_symbol",
    "parse_example",
    "serialize_corpus",
    "serialize_example",
    "tokenize",
    "write_corpus",
    "__version__",
]
