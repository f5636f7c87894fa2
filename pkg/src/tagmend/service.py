"""HTTP review service: ranked candidates in, durable verdicts out.

All endpoints live under ``/v1`` and speak JSON.  Candidate payloads carry
the full sentence text with character span offsets and category glosses,
so a client needs no corpus access.  Verdict writes are serialized through
one lock and fsynced before the response is acknowledged; restarting the
service replays the session file.
"""
from __future__ import annotations

import os
import threading

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .correction import CorrectionCandidate, read_candidates
from .corpus import Taxonomy, load_corpus_file, render_tagged_text, strip_markup
from .session import ReviewSession, ReviewVerdict, SessionError, SessionLog, utc_timestamp


class VerdictRequest(BaseModel):
    decision: str
    editLabel: str | None = None
    annotator: str = "anonymous"


def _candidate_view(
    session: ReviewSession, candidate: CorrectionCandidate, position: int
) -> dict:
    example = session.corpus_by_id[candidate.example_id]
    raw = example.english.raw
    if raw is None:
        raw = render_tagged_text(example.english)
    text, v_spans, vj_span = strip_markup(raw)
    verdict = session.live.get(candidate.example_id)
    original = session.taxonomy.by_id(candidate.original_id)
    proposed = session.taxonomy.by_id(candidate.proposed_id)
    return {
        "exampleId": candidate.example_id,
        "rank": position,
        "sentence": text,
        "japanese": example.japanese,
        "vSpans": [{"start": s, "end": e} for s, e in v_spans],
        "vjSpan": None if vj_span is None else {"start": vj_span[0], "end": vj_span[1]},
        "originalId": candidate.original_id,
        "originalGloss": original.description,
        "proposedId": candidate.proposed_id,
        "proposedGloss": proposed.description,
        "pOriginal": candidate.p_original,
        "pProposed": candidate.p_proposed,
        "confidenceM1": candidate.confidence_m1,
        "confidenceM2": candidate.confidence_m2,
        "support": candidate.support,
        "learner": candidate.learner,
        "mode": candidate.mode,
        "verdict": None
        if verdict is None
        else {
            "decision": verdict.decision,
            "editLabel": verdict.edit_label,
            "annotator": verdict.annotator,
            "timestamp": verdict.timestamp,
        },
    }


def make_app(session: ReviewSession, ui_dir: str | os.PathLike[str] | None = None) -> FastAPI:
    app = FastAPI(title="tagmend review service")
    write_lock = threading.Lock()
    positions = {c.example_id: pos for pos, c in enumerate(session.candidates)}

    @app.get("/v1/candidates")
    def list_candidates(offset: int = 0, limit: int = 50) -> dict:
        if offset < 0 or limit < 1:
            raise HTTPException(status_code=422, detail="offset must be >= 0 and limit >= 1")
        page = session.candidates[offset : offset + limit]
        return {
            "total": len(session.candidates),
            "offset": offset,
            "limit": limit,
            "items": [_candidate_view(session, c, positions[c.example_id]) for c in page],
        }

    @app.get("/v1/candidates/{example_id}")
    def get_candidate(example_id: str) -> dict:
        candidate = session.by_ref.get(example_id)
        if candidate is None:
            raise HTTPException(status_code=404, detail=f"no candidate {example_id!r}")
        return _candidate_view(session, candidate, positions[example_id])

    @app.post("/v1/candidates/{example_id}/verdict")
    def post_verdict(example_id: str, request: VerdictRequest) -> dict:
        if session.by_ref.get(example_id) is None:
            raise HTTPException(status_code=404, detail=f"no candidate {example_id!r}")
        try:
            verdict = ReviewVerdict(
                candidate_ref=example_id,
                decision=request.decision,
                edit_label=request.editLabel,
                annotator=request.annotator,
                timestamp=utc_timestamp(),
            )
            with write_lock:
                session.record(verdict)
        except SessionError as err:
            raise HTTPException(status_code=422, detail=str(err)) from None
        return {"ok": True, "progress": session.progress()}

    @app.get("/v1/progress")
    def progress() -> dict:
        return session.progress()

    @app.get("/v1/taxonomy")
    def taxonomy() -> dict:
        return {
            "labels": [
                {
                    "id": label.id,
                    "symbol": label.symbol,
                    "group": label.group,
                    "description": label.description,
                }
                for label in session.taxonomy
            ]
        }

    if ui_dir is not None and os.path.isdir(ui_dir):
        app.mount("/", StaticFiles(directory=os.fspath(ui_dir), html=True), name="ui")
    return app


def build_session(
    candidate_path: str | os.PathLike[str],
    corpus_path: str | os.PathLike[str],
    taxonomy: Taxonomy,
    session_path: str | os.PathLike[str],
) -> ReviewSession:
    """Load candidate file + corpus and replay the session log.

    A corpus that fails to parse cleanly or a corrupted session file
    refuses to start.
    """
    candidates = read_candidates(candidate_path)
    corpus, report = load_corpus_file(corpus_path, taxonomy)
    if report.errors:
        first = report.errors[0]
        raise SessionError(
            f"corpus has {len(report.errors)} parse error(s); "
            f"first at line {first.line_no}: {first.message}"
        )
    return ReviewSession(candidates, corpus, taxonomy, SessionLog(session_path))


def serve_review(
    candidate_path: str | os.PathLike[str],
    corpus_path: str | os.PathLike[str],
    taxonomy: Taxonomy,
    session_path: str | os.PathLike[str],
    bind: str = "127.0.0.1:8760",
    ui_dir: str | os.PathLike[str] | None = None,
) -> None:
    """Run the review service until interrupted."""
    import uvicorn

    session = build_session(candidate_path, corpus_path, taxonomy, session_path)
    host, _, port = bind.partition(":")
    app = make_app(session, ui_dir=ui_dir)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8760), log_level="warning")
