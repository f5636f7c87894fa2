"""Word tokenizer shared by the corpus parser and the feature extractor."""
from __future__ import annotations

import unicodedata

_punct_cache: dict[str, bool] = {}


def is_punctuation(ch: str) -> bool:
    """True for any Unicode punctuation character (general category P*)."""
    cached = _punct_cache.get(ch)
    if cached is None:
        cached = unicodedata.category(ch).startswith("P")
        _punct_cache[ch] = cached
    return cached


def tokenize(text: str) -> list[str]:
    """Split plain text into word tokens.

    Tokens are maximal runs of non-space, non-punctuation characters;
    every punctuation character becomes a token of its own.  Markup must
    already be stripped: angle-bracket tags are not recognized here.
    """
    tokens: list[str] = []
    buf: list[str] = []
    for ch in text:
        if ch.isspace():
            if buf:
                tokens.append("".join(buf))
                buf.clear()
        elif is_punctuation(ch):
            if buf:
                tokens.append("".join(buf))
                buf.clear()
            tokens.append(ch)
        else:
            buf.append(ch)
    if buf:
        tokens.append("".join(buf))
    return tokens


def is_atomic_token(token: str) -> bool:
    """True when `tokenize` would return the token unchanged."""
    if not token:
        return False
    if len(token) == 1:
        return not token.isspace()
    return not any(ch.isspace() or is_punctuation(ch) for ch in token)
