"""Desk-scale evaluation protocol: inject known errors, measure precision.

The original corpus this tooling was designed around is proprietary and
was judged by hand, so the benchmark here substitutes a synthetic gold
standard: corrupt a clean corpus at a known rate, run the correction
pipeline, and score the ranked candidates against the corruption log.

Detection counts a candidate as a hit when its tag was truly corrupted;
correction additionally requires the proposed category to equal the true
one.  Both use the same selection, so their denominators always match and
correction hits can never exceed detection hits.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence, TextIO

from .correction import METHOD_M1, METHOD_M2, CorrectionCandidate, rank
from .corpus import Example, Taxonomy


@dataclass(frozen=True)
class ErrorLog:
    """Which example ids were corrupted, and from/to which categories."""

    entries: dict[str, tuple[str, str]]  # exampleId -> (true id, injected id)
    rate: float
    seed: int

    def __post_init__(self) -> None:
        for ex_id, (true_id, injected_id) in self.entries.items():
            if true_id == injected_id:
                raise ValueError(f"{ex_id}: injected category equals the true one")

    def __len__(self) -> int:
        return len(self.entries)


def inject_errors(
    corpus: Sequence[Example], rate: float, seed: int, taxonomy: Taxonomy
) -> tuple[list[Example], ErrorLog]:
    """Replace the ``<v>`` category of ``round(rate * N)`` distinct examples.

    Each victim gets a uniformly random different label.  Deterministic for
    a given seed.
    """
    if not 0.0 <= rate <= 1.0:
        raise ValueError(f"rate {rate} outside [0, 1]")
    count = round(rate * len(corpus))
    if count > 0 and not corpus:
        raise ValueError("cannot inject errors into an empty corpus")
    rng = random.Random(seed)
    victims = rng.sample(range(len(corpus)), count)
    noisy = list(corpus)
    entries: dict[str, tuple[str, str]] = {}
    for row in victims:
        example = corpus[row]
        others = [label for label in taxonomy if label.id != example.v_category.id]
        injected = rng.choice(others)
        noisy[row] = example.with_v_category(injected)
        entries[example.id] = (example.v_category.id, injected.id)
    return noisy, ErrorLog(entries, rate, seed)


@dataclass(frozen=True)
class TopX:
    n: int


@dataclass(frozen=True)
class RandomN:
    n: int
    seed: int


@dataclass(frozen=True)
class SelectAll:
    pass


Selector = TopX | RandomN | SelectAll


def select(candidates: Sequence[CorrectionCandidate], selector: Selector) -> list[CorrectionCandidate]:
    """Apply a selector; candidates must already be ranked for ``TopX``.

    Both selector kinds fall back to the whole list when fewer candidates
    exist than requested.
    """
    if isinstance(selector, TopX):
        return list(candidates[: selector.n])
    if isinstance(selector, RandomN):
        if selector.n >= len(candidates):
            return list(candidates)
        rng = random.Random(selector.seed)
        return rng.sample(list(candidates), selector.n)
    return list(candidates)


def precision_detection(
    candidates: Sequence[CorrectionCandidate], gold: ErrorLog, selector: Selector
) -> tuple[int, int]:
    """(hits, total): hits are selected candidates whose tag was truly wrong."""
    chosen = select(candidates, selector)
    hits = sum(1 for c in chosen if c.example_id in gold.entries)
    return hits, len(chosen)


def precision_correction(
    candidates: Sequence[CorrectionCandidate], gold: ErrorLog, selector: Selector
) -> tuple[int, int]:
    """(hits, total): hits additionally require the proposed category to be true."""
    chosen = select(candidates, selector)
    hits = sum(
        1
        for c in chosen
        if c.example_id in gold.entries and gold.entries[c.example_id][0] == c.proposed_id
    )
    return hits, len(chosen)


@dataclass(frozen=True)
class ReportRow:
    """One table row; ``absent`` rows render as ``---`` placeholders."""

    selector: str
    method: str  # "M1", "M2", or "none" for the random row
    detection_hits: int | None
    detection_total: int | None
    correction_hits: int | None
    correction_total: int | None
    truncated: bool = False
    absent: bool = False

    def __post_init__(self) -> None:
        if self.absent:
            return
        assert self.detection_hits is not None and self.correction_hits is not None
        if self.detection_total != self.correction_total:
            raise ValueError("detection and correction must share one denominator")
        if self.correction_hits > self.detection_hits:
            raise ValueError("correction hits cannot exceed detection hits")


@dataclass(frozen=True)
class PrecisionReport:
    rows: tuple[ReportRow, ...]
    config: dict = field(default_factory=dict)
    # Extension beyond the historical protocol: recall of the full candidate
    # set against the injected-error log (the original evaluation could not
    # measure recall because it had no gold standard).
    detection_recall: float | None = None


def build_report(
    candidates: Sequence[CorrectionCandidate],
    gold: ErrorLog,
    methods: Sequence[str] = (METHOD_M1, METHOD_M2),
    cutoffs: Sequence[int] = (50, 100, 150, 200, 250, 300),
    random_n: int = 300,
    seed: int = 0,
) -> PrecisionReport:
    """One random-sample row plus one row per (method, cutoff).

    The first cutoff at or beyond the candidate count is truncated to the
    full set and flagged; cutoffs after it would repeat the same selection
    and are marked absent.
    """
    rows: list[ReportRow] = []
    rand = RandomN(random_n, seed)
    det = precision_detection(candidates, gold, rand)
    cor = precision_correction(candidates, gold, rand)
    rows.append(ReportRow(f"random {random_n}", "none", det[0], det[1], cor[0], cor[1]))
    for method in methods:
        ranked = rank(candidates, method)
        exhausted = False
        for cutoff in cutoffs:
            if exhausted:
                rows.append(
                    ReportRow(f"top {cutoff}", method, None, None, None, None, absent=True)
                )
                continue
            selector = TopX(cutoff)
            det = precision_detection(ranked, gold, selector)
            cor = precision_correction(ranked, gold, selector)
            truncated = cutoff > len(candidates)
            rows.append(
                ReportRow(
                    f"top {cutoff}", method, det[0], det[1], cor[0], cor[1], truncated=truncated
                )
            )
            if cutoff >= len(candidates):
                exhausted = True
    hits_all, _ = precision_detection(candidates, gold, SelectAll())
    recall = hits_all / len(gold) if len(gold) else None
    return PrecisionReport(
        tuple(rows),
        config={
            "methods": list(methods),
            "cutoffs": list(cutoffs),
            "random_n": random_n,
            "seed": seed,
            "candidates": len(candidates),
            "gold_errors": len(gold),
        },
        detection_recall=recall,
    )


def _cell(hits: int | None, total: int | None) -> str:
    if hits is None or total is None:
        return "---  ---"
    pct = f"{round(100.0 * hits / total)}%" if total else "n/a"
    return f"{pct} ({hits}/{total})"


def render_report(report: PrecisionReport) -> str:
    """Human-readable table: selector, method, detection, correction."""
    lines = [
        f"{'selector':<12} {'method':<7} {'detection':>16} {'correction':>16}",
        "-" * 55,
    ]
    for row in report.rows:
        lines.append(
            f"{row.selector:<12} {row.method:<7} "
            f"{_cell(row.detection_hits, row.detection_total):>16} "
            f"{_cell(row.correction_hits, row.correction_total):>16}"
        )
    if report.detection_recall is not None:
        lines.append("")
        lines.append(
            f"detection recall over all {report.config.get('candidates', '?')} candidates: "
            f"{report.detection_recall:.3f} (extension; not part of the historical protocol)"
        )
    return "\n".join(lines) + "\n"


def write_report_tsv(report: PrecisionReport, stream: TextIO) -> None:
    """Machine-readable variant: header plus one row per line."""
    stream.write(
        "selector\tmethod\tdetectionHits\tdetectionTotal\tcorrectionHits\tcorrectionTotal"
        "\ttruncated\tabsent\n"
    )
    for row in report.rows:
        cells = [
            row.selector,
            row.method,
            "" if row.detection_hits is None else str(row.detection_hits),
            "" if row.detection_total is None else str(row.detection_total),
            "" if row.correction_hits is None else str(row.correction_hits),
            "" if row.correction_total is None else str(row.correction_total),
            "1" if row.truncated else "0",
            "1" if row.absent else "0",
        ]
        stream.write("\t".join(cells) + "\n")
