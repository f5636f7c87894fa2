"""Append-only review sessions: verdicts, replay, and corrected export.

A session file holds one verdict per line::

    candidateRef <TAB> decision <TAB> editLabel <TAB> annotator <TAB> timestamp

``editLabel`` is empty unless the decision is ``edit``; the timestamp is
RFC 3339 in UTC.  The file is replayed on startup; the latest verdict per
candidate is live, the full history is retained.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Iterable, Mapping, Sequence

from .correction import CorrectionCandidate, apply_corrections
from .corpus import Example, Taxonomy

DECISIONS = ("accept", "reject", "edit")


class SessionError(ValueError):
    """A session file that cannot be replayed safely."""


@dataclass(frozen=True)
class ReviewVerdict:
    candidate_ref: str
    decision: str
    edit_label: str | None
    annotator: str
    timestamp: str  # RFC 3339, UTC

    def __post_init__(self) -> None:
        if self.decision not in DECISIONS:
            raise SessionError(f"unknown decision {self.decision!r}")
        if (self.decision == "edit") != (self.edit_label is not None):
            raise SessionError("edit verdicts and only edit verdicts carry a label")


def utc_timestamp() -> str:
    return datetime.now(timezone.utc).isoformat()


def _verdict_line(verdict: ReviewVerdict) -> str:
    return "\t".join(
        (
            verdict.candidate_ref,
            verdict.decision,
            verdict.edit_label or "",
            verdict.annotator,
            verdict.timestamp,
        )
    )


def _parse_verdict_line(line: str, line_no: int) -> ReviewVerdict:
    cells = line.split("\t")
    if len(cells) != 5:
        raise SessionError(f"session line {line_no}: expected 5 fields, got {len(cells)}")
    ref, decision, edit_label, annotator, timestamp = cells
    try:
        datetime.fromisoformat(timestamp)
    except ValueError:
        raise SessionError(f"session line {line_no}: bad timestamp {timestamp!r}") from None
    try:
        return ReviewVerdict(ref, decision, edit_label or None, annotator, timestamp)
    except SessionError as err:
        raise SessionError(f"session line {line_no}: {err}") from None


class SessionLog:
    """Durable verdict log: every append is flushed and fsynced."""

    def __init__(self, path: str | os.PathLike[str]):
        self.path = os.fspath(path)

    def load(self) -> list[ReviewVerdict]:
        if not os.path.exists(self.path):
            return []
        verdicts = []
        with open(self.path, encoding="utf-8") as handle:
            for line_no, line in enumerate(handle, start=1):
                line = line.rstrip("\n")
                if not line:
                    continue
                verdicts.append(_parse_verdict_line(line, line_no))
        return verdicts

    def append(self, verdict: ReviewVerdict) -> None:
        with open(self.path, "a", encoding="utf-8", newline="") as handle:
            handle.write(_verdict_line(verdict) + "\n")
            handle.flush()
            os.fsync(handle.fileno())


def live_verdicts(verdicts: Iterable[ReviewVerdict]) -> dict[str, ReviewVerdict]:
    """Latest verdict per candidate; later entries supersede earlier ones."""
    live: dict[str, ReviewVerdict] = {}
    for verdict in verdicts:
        live[verdict.candidate_ref] = verdict
    return live


class ReviewSession:
    """Ranked candidates plus replayable verdict state."""

    def __init__(
        self,
        candidates: Sequence[CorrectionCandidate],
        corpus: Sequence[Example],
        taxonomy: Taxonomy,
        log: SessionLog,
    ):
        self.candidates = tuple(candidates)
        self.by_ref = {c.example_id: c for c in self.candidates}
        if len(self.by_ref) != len(self.candidates):
            raise SessionError("candidate list references a duplicate example id")
        self.corpus = list(corpus)
        self.corpus_by_id = {ex.id: ex for ex in self.corpus}
        missing = [ref for ref in self.by_ref if ref not in self.corpus_by_id]
        if missing:
            raise SessionError(f"candidate {missing[0]!r} not present in the corpus")
        self.taxonomy = taxonomy
        self.log = log
        self.verdicts: list[ReviewVerdict] = log.load()
        for verdict in self.verdicts:
            self._check(verdict)

    def _check(self, verdict: ReviewVerdict) -> None:
        candidate = self.by_ref.get(verdict.candidate_ref)
        if candidate is None:
            raise SessionError(f"verdict references unknown candidate {verdict.candidate_ref!r}")
        if verdict.decision == "edit":
            assert verdict.edit_label is not None
            self.taxonomy.by_id(verdict.edit_label)
            if verdict.edit_label == candidate.original_id:
                raise SessionError(
                    f"edit label for {verdict.candidate_ref} equals the original category"
                )

    def record(self, verdict: ReviewVerdict) -> None:
        """Validate, persist durably, then apply in memory."""
        self._check(verdict)
        self.log.append(verdict)
        self.verdicts.append(verdict)

    @property
    def live(self) -> dict[str, ReviewVerdict]:
        return live_verdicts(self.verdicts)

    @property
    def cursor(self) -> int:
        """Index of the first candidate without a live verdict."""
        live = self.live
        for pos, candidate in enumerate(self.candidates):
            if candidate.example_id not in live:
                return pos
        return len(self.candidates)

    def progress(self) -> dict[str, int]:
        live = self.live
        counts = {"accept": 0, "reject": 0, "edit": 0}
        for verdict in live.values():
            counts[verdict.decision] += 1
        return {
            "total": len(self.candidates),
            "reviewed": len(live),
            "accepted": counts["accept"],
            "rejected": counts["reject"],
            "edited": counts["edit"],
            "cursor": self.cursor,
        }

    def corrected_corpus(self) -> list[Example]:
        """Apply live accept/edit verdicts; rejected and unreviewed stay put."""
        return corrected_corpus(self.corpus, self.by_ref, self.verdicts, self.taxonomy)


def corrected_corpus(
    corpus: Sequence[Example],
    candidates_by_ref: Mapping[str, CorrectionCandidate],
    verdicts: Iterable[ReviewVerdict],
    taxonomy: Taxonomy,
) -> list[Example]:
    """Pure function of (corpus, candidates, verdict log)."""
    accepted = {}
    for ref, verdict in live_verdicts(verdicts).items():
        candidate = candidates_by_ref.get(ref)
        if candidate is None:
            raise SessionError(f"verdict references unknown candidate {ref!r}")
        if verdict.decision == "accept":
            accepted[ref] = taxonomy.by_id(candidate.proposed_id)
        elif verdict.decision == "edit":
            assert verdict.edit_label is not None
            accepted[ref] = taxonomy.by_id(verdict.edit_label)
    return apply_corrections(corpus, accepted)
