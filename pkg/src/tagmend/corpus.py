"""Tagged bilingual corpus: category taxonomy, records, parsing, writing.

A corpus file is UTF-8 text made of two-line records, optionally separated
by blank lines:

    line 1: category symbol field, one space, source-language sentence
    line 2: English sentence with ``<v>...</v>`` around the main verb
            phrase (twice when the phrase is split) and optionally
            ``<vj>...</vj>`` around the phrase matching the source main verb

The symbol field holds the category symbol of the ``<v>`` phrase; when a
``<vj>`` tag is present it holds two symbols joined by a comma.  The empty
symbol is a real category (plain present tense), so a field may be empty
or be a lone comma.
"""
from __future__ import annotations

import io
import os
from dataclasses import dataclass, field, replace
from importlib import resources
from typing import Iterable, Iterator, Sequence, TextIO

from .tokenizer import is_atomic_token, tokenize

TAXONOMY_SIZE = 34

GROUPS = frozenset(
    {
        "tense-aspect-combination",
        "imperative",
        "auxiliary",
        "noun-phrase",
        "participial",
        "verb-ellipsis",
        "interjection",
        "no-correspondence",
        "untaggable",
    }
)

UNTAGGABLE_GROUP = "untaggable"


class CorpusFormatError(ValueError):
    """A record, symbol field, or taxonomy file that violates the format."""

    def __init__(self, message: str, *, record_id: str | None = None, line_no: int | None = None):
        self.record_id = record_id
        self.line_no = line_no
        prefix = ""
        if record_id is not None:
            prefix += f"record {record_id}: "
        if line_no is not None:
            prefix += f"line {line_no}: "
        super().__init__(prefix + message)
        self.message = message


@dataclass(frozen=True)
class CategoryLabel:
    """One tense/aspect/modality category and its corpus symbol."""

    id: str
    symbol: str
    group: str
    description: str = ""

    def __post_init__(self) -> None:
        if not self.id:
            raise CorpusFormatError("category id must be non-empty")
        if self.group not in GROUPS:
            raise CorpusFormatError(f"unknown category group {self.group!r}")
        if "," in self.symbol or any(ch.isspace() for ch in self.symbol):
            raise CorpusFormatError(f"symbol {self.symbol!r} may not contain commas or spaces")


class Taxonomy:
    """Ordered, validated inventory of exactly 34 category labels."""

    def __init__(self, labels: Iterable[CategoryLabel]):
        self.labels: tuple[CategoryLabel, ...] = tuple(labels)
        if len(self.labels) != TAXONOMY_SIZE:
            raise CorpusFormatError(
                f"taxonomy must have exactly {TAXONOMY_SIZE} labels, got {len(self.labels)}"
            )
        self._by_id: dict[str, CategoryLabel] = {}
        self._by_symbol: dict[str, CategoryLabel] = {}
        self._index: dict[str, int] = {}
        for pos, label in enumerate(self.labels):
            if label.id in self._by_id:
                raise CorpusFormatError(f"duplicate category id {label.id!r}")
            if label.symbol in self._by_symbol:
                raise CorpusFormatError(f"duplicate category symbol {label.symbol!r}")
            self._by_id[label.id] = label
            self._by_symbol[label.symbol] = label
            self._index[label.id] = pos
        empties = [l for l in self.labels if l.symbol == ""]
        if len(empties) != 1:
            raise CorpusFormatError("exactly one label must carry the empty symbol")
        untaggable = [l for l in self.labels if l.group == UNTAGGABLE_GROUP]
        if len(untaggable) != 1:
            raise CorpusFormatError("exactly one label must belong to the untaggable group")
        self._untaggable = untaggable[0]

    def __iter__(self) -> Iterator[CategoryLabel]:
        return iter(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def by_id(self, label_id: str) -> CategoryLabel:
        try:
            return self._by_id[label_id]
        except KeyError:
            raise CorpusFormatError(f"unknown category id {label_id!r}") from None

    def by_symbol(self, symbol: str) -> CategoryLabel:
        try:
            return self._by_symbol[symbol]
        except KeyError:
            raise CorpusFormatError(f"unknown category symbol {symbol!r}") from None

    def has_symbol(self, symbol: str) -> bool:
        return symbol in self._by_symbol

    def index(self, label_id: str) -> int:
        """Position of a label in taxonomy order (used for tie-breaking)."""
        return self._index[label_id]

    def category_ids(self) -> tuple[str, ...]:
        return tuple(l.id for l in self.labels)

    @property
    def untaggable(self) -> CategoryLabel:
        return self._untaggable

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[str]]) -> "Taxonomy":
        labels = []
        for row in rows:
            if len(row) != 4:
                raise CorpusFormatError(f"taxonomy row needs 4 columns, got {len(row)}: {row!r}")
            label_id, symbol, group, description = row
            labels.append(CategoryLabel(label_id, symbol, group, description))
        return cls(labels)

    @classmethod
    def from_file(cls, path: str | os.PathLike[str]) -> "Taxonomy":
        """Load a tab-separated taxonomy file (id, symbol, group, description).

        Lines starting with ``#`` and blank lines are ignored.
        """
        rows = []
        with open(path, encoding="utf-8") as handle:
            for line in handle:
                line = line.rstrip("\n")
                if not line.strip() or line.startswith("#"):
                    continue
                rows.append(line.split("\t"))
        return cls.from_rows(rows)

    @classmethod
    def default(cls) -> "Taxonomy":
        """The taxonomy shipped with the package."""
        ref = resources.files("tagmend.data").joinpath("default_taxonomy.tsv")
        with resources.as_file(ref) as path:
            return cls.from_file(path)


@dataclass(frozen=True)
class Span:
    """Half-open token range [start, stop)."""

    start: int
    stop: int

    def __post_init__(self) -> None:
        if self.start < 0 or self.stop <= self.start:
            raise CorpusFormatError(f"empty or negative span ({self.start}, {self.stop})")

    def __len__(self) -> int:
        return self.stop - self.start

    def shifted(self, offset: int) -> "Span":
        return Span(self.start + offset, self.stop + offset)


@dataclass(frozen=True)
class TaggedSentence:
    """Tokenized English sentence plus its verb-phrase segment ranges.

    ``raw`` keeps the original markup line so that unchanged records can be
    written back byte-identically; it is ``None`` for sentences built in
    memory.
    """

    tokens: tuple[str, ...]
    v_segments: tuple[Span, ...]
    vj_segment: Span | None = None
    raw: str | None = None

    def __post_init__(self) -> None:
        if not 1 <= len(self.v_segments) <= 2:
            raise CorpusFormatError(
                f"sentence must carry one or two <v> segments, got {len(self.v_segments)}"
            )
        for token in self.tokens:
            if not is_atomic_token(token):
                raise CorpusFormatError(f"token {token!r} is not atomic under the tokenizer")
            if any(marker in token for marker in _MARKERS):
                raise CorpusFormatError(
                    f"token {token!r} contains reserved tag markup and cannot be written back"
                )
        spans = list(self.v_segments)
        if self.vj_segment is not None:
            spans.append(self.vj_segment)
        for span in spans:
            if span.stop > len(self.tokens):
                raise CorpusFormatError(f"span {span} exceeds sentence length {len(self.tokens)}")
        spans.sort(key=lambda s: s.start)
        for left, right in zip(spans, spans[1:]):
            if right.start < left.stop:
                raise CorpusFormatError(f"overlapping spans {left} and {right}")
        if len(self.v_segments) == 2 and self.v_segments[0].start > self.v_segments[1].start:
            raise CorpusFormatError("<v> segments out of sentence order")

    def segment_tokens(self, span: Span) -> tuple[str, ...]:
        return self.tokens[span.start : span.stop]


@dataclass(frozen=True)
class Example:
    """One corpus record: source sentence, tagged English sentence, labels."""

    id: str
    japanese: str
    english: TaggedSentence
    v_category: CategoryLabel
    vj_category: CategoryLabel | None = None

    def __post_init__(self) -> None:
        if (self.vj_category is None) != (self.english.vj_segment is None):
            raise CorpusFormatError(
                "vj category and <vj> segment must be present together", record_id=self.id
            )

    def with_v_category(self, label: CategoryLabel) -> "Example":
        return replace(self, v_category=label)


def parse_category_symbol(
    field_text: str, taxonomy: Taxonomy, *, record_id: str | None = None
) -> tuple[CategoryLabel, CategoryLabel | None]:
    """Resolve a symbol field into the ``<v>`` label and optional ``<vj>`` label.

    A comma splits the field: left side is the ``<v>`` category, right side
    the ``<vj>`` category.  An empty (sub)field resolves to the label that
    owns the empty symbol (plain present tense).
    """

    def resolve(symbol: str) -> CategoryLabel:
        if not taxonomy.has_symbol(symbol):
            raise CorpusFormatError(
                f"unknown category symbol {symbol!r}", record_id=record_id
            )
        return taxonomy.by_symbol(symbol)

    if "," in field_text:
        left, _, right = field_text.partition(",")
        return resolve(left), resolve(right)
    return resolve(field_text), None


_OPEN_V, _CLOSE_V, _OPEN_VJ, _CLOSE_VJ = "<v>", "</v>", "<vj>", "</vj>"
_MARKERS = (_OPEN_VJ, _CLOSE_VJ, _OPEN_V, _CLOSE_V)  # longest first


def _scan_markup(text: str) -> list[tuple[str, str]]:
    """Split a tagged line into ("text", chunk) and ("marker", tag) events."""
    events: list[tuple[str, str]] = []
    pos = 0
    while True:
        hit = None
        hit_at = len(text)
        for marker in _MARKERS:
            found = text.find(marker, pos)
            if found != -1 and found < hit_at:
                hit, hit_at = marker, found
        if hit is None:
            break
        if hit_at > pos:
            events.append(("text", text[pos:hit_at]))
        events.append(("marker", hit))
        pos = hit_at + len(hit)
    if pos < len(text):
        events.append(("text", text[pos:]))
    return events


def parse_tagged_text(
    line: str, *, record_id: str | None = None, line_no: int | None = None
) -> TaggedSentence:
    """Parse one tagged English line into a :class:`TaggedSentence`."""
    tokens: list[str] = []
    v_segments: list[Span] = []
    vj_segment: Span | None = None
    open_tag: str | None = None
    open_at = 0

    def fail(message: str) -> CorpusFormatError:
        return CorpusFormatError(message, record_id=record_id, line_no=line_no)

    for kind, value in _scan_markup(line):
        if kind == "text":
            tokens.extend(tokenize(value))
            continue
        if value in (_OPEN_V, _OPEN_VJ):
            if open_tag is not None:
                raise fail(f"nested tag {value} inside {open_tag}")
            if value == _OPEN_V and len(v_segments) == 2:
                raise fail("more than two <v> segments")
            if value == _OPEN_VJ and vj_segment is not None:
                raise fail("more than one <vj> segment")
            open_tag = value
            open_at = len(tokens)
        else:
            expected = _OPEN_V if value == _CLOSE_V else _OPEN_VJ
            if open_tag != expected:
                raise fail(f"unexpected closing tag {value}")
            if len(tokens) == open_at:
                raise fail(f"empty {expected} segment")
            span = Span(open_at, len(tokens))
            if value == _CLOSE_V:
                v_segments.append(span)
            else:
                vj_segment = span
            open_tag = None
    if open_tag is not None:
        raise fail(f"unclosed tag {open_tag}")
    if not v_segments:
        raise fail("no <v> segment found")
    try:
        return TaggedSentence(tuple(tokens), tuple(v_segments), vj_segment, raw=line)
    except CorpusFormatError as err:
        raise fail(err.message) from None


def strip_markup(line: str) -> tuple[str, list[tuple[int, int]], tuple[int, int] | None]:
    """Remove tags from a raw line, returning text plus character spans.

    Returns ``(text, v_char_spans, vj_char_span)`` where each span is a
    half-open character range into ``text``.  Used to build review payloads.
    """
    parts: list[str] = []
    length = 0
    opened: dict[str, int] = {}
    v_spans: list[tuple[int, int]] = []
    vj_span: tuple[int, int] | None = None
    for kind, value in _scan_markup(line):
        if kind == "text":
            parts.append(value)
            length += len(value)
        elif value in (_OPEN_V, _OPEN_VJ):
            opened[value] = length
        elif value == _CLOSE_V:
            v_spans.append((opened.pop(_OPEN_V, 0), length))
        else:
            vj_span = (opened.pop(_OPEN_VJ, 0), length)
    return "".join(parts), v_spans, vj_span


def render_tagged_text(sentence: TaggedSentence) -> str:
    """Write a sentence back to markup, preferring the original bytes.

    Sentences built in memory are rendered canonically: tokens joined by
    single spaces, tags glued to the first and last token of their span.
    """
    if sentence.raw is not None:
        return sentence.raw
    opens: dict[int, list[str]] = {}
    closes: dict[int, list[str]] = {}
    for span in sentence.v_segments:
        opens.setdefault(span.start, []).append(_OPEN_V)
        closes.setdefault(span.stop, []).append(_CLOSE_V)
    if sentence.vj_segment is not None:
        opens.setdefault(sentence.vj_segment.start, []).append(_OPEN_VJ)
        closes.setdefault(sentence.vj_segment.stop, []).append(_CLOSE_VJ)
    rendered = [
        "".join(opens.get(pos, ())) + token + "".join(closes.get(pos + 1, ()))
        for pos, token in enumerate(sentence.tokens)
    ]
    return " ".join(rendered)


def symbol_field(example: Example) -> str:
    if example.vj_category is not None:
        return f"{example.v_category.symbol},{example.vj_category.symbol}"
    return example.v_category.symbol


def parse_example(
    record_lines: Sequence[str],
    taxonomy: Taxonomy,
    *,
    example_id: str,
    line_no: int | None = None,
) -> Example:
    """Parse one two-line record into an :class:`Example`."""
    if len(record_lines) != 2:
        raise CorpusFormatError(
            f"record needs 2 lines, got {len(record_lines)}",
            record_id=example_id,
            line_no=line_no,
        )
    symbol_line, english_line = record_lines
    if " " not in symbol_line:
        raise CorpusFormatError(
            "symbol line has no space separating the symbol field from the sentence",
            record_id=example_id,
            line_no=line_no,
        )
    field_text, _, japanese = symbol_line.partition(" ")
    v_label, vj_label = parse_category_symbol(field_text, taxonomy, record_id=example_id)
    english = parse_tagged_text(
        english_line, record_id=example_id, line_no=None if line_no is None else line_no + 1
    )
    if (vj_label is None) != (english.vj_segment is None):
        raise CorpusFormatError(
            "symbol field and <vj> tag disagree", record_id=example_id, line_no=line_no
        )
    return Example(example_id, japanese, english, v_label, vj_label)


def serialize_example(example: Example) -> list[str]:
    """The two text lines of a record (no trailing newlines)."""
    return [
        f"{symbol_field(example)} {example.japanese}",
        render_tagged_text(example.english),
    ]


@dataclass(frozen=True)
class Diagnostic:
    """One per-record parse problem collected during a load."""

    record_ordinal: int
    line_no: int
    message: str


@dataclass
class LoadReport:
    """Counts and problems from one corpus load."""

    record_count: int = 0
    dropped_untaggable: int = 0
    errors: list[Diagnostic] = field(default_factory=list)

    @property
    def loaded_count(self) -> int:
        return self.record_count - self.dropped_untaggable - len(self.errors)


def _iter_records(lines: Iterable[str]) -> Iterator[tuple[int, str, str | None]]:
    """Yield (first_line_no, symbol_line, english_line_or_None) per record."""
    pending: tuple[int, str] | None = None
    for line_no, line in enumerate(lines, start=1):
        line = line.rstrip("\n")
        if not line.strip():
            if pending is not None:
                yield pending[0], pending[1], None
                pending = None
            continue
        if pending is None:
            pending = (line_no, line)
        else:
            yield pending[0], pending[1], line
            pending = None
    if pending is not None:
        yield pending[0], pending[1], None


def load_corpus(
    source: TextIO | Iterable[str] | str,
    taxonomy: Taxonomy,
    *,
    exclude_untaggable: bool = False,
) -> tuple[list[Example], LoadReport]:
    """Load every parseable record, collecting per-record errors.

    ``source`` may be an open text stream, an iterable of lines, or a whole
    corpus string.  Records that fail to parse become diagnostics; they
    never abort the load.  When ``exclude_untaggable`` is set, records whose
    ``<v>`` category belongs to the untaggable group are dropped and counted.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    examples: list[Example] = []
    report = LoadReport()
    ordinal = 0
    for line_no, symbol_line, english_line in _iter_records(source):
        ordinal += 1
        report.record_count = ordinal
        example_id = f"e{ordinal}"
        if english_line is None:
            report.errors.append(Diagnostic(ordinal, line_no, "missing English line"))
            continue
        try:
            example = parse_example(
                [symbol_line, english_line], taxonomy, example_id=example_id, line_no=line_no
            )
        except CorpusFormatError as err:
            report.errors.append(
                Diagnostic(ordinal, err.line_no if err.line_no is not None else line_no, err.message)
            )
            continue
        if exclude_untaggable and example.v_category.group == UNTAGGABLE_GROUP:
            report.dropped_untaggable += 1
            continue
        examples.append(example)
    return examples, report


def load_corpus_file(
    path: str | os.PathLike[str],
    taxonomy: Taxonomy,
    *,
    exclude_untaggable: bool = False,
) -> tuple[list[Example], LoadReport]:
    with open(path, encoding="utf-8") as handle:
        return load_corpus(handle, taxonomy, exclude_untaggable=exclude_untaggable)


def serialize_corpus(examples: Iterable[Example]) -> str:
    """Canonical corpus text: records separated by one blank line."""
    chunks = ["\n".join(serialize_example(example)) for example in examples]
    return "\n\n".join(chunks) + "\n" if chunks else ""


def write_corpus(examples: Iterable[Example], path: str | os.PathLike[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(serialize_corpus(examples))
