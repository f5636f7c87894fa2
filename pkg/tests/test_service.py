import pytest
from fastapi.testclient import TestClient

from tagmend.cli import main
from tagmend.corpus import Taxonomy, write_corpus
from tagmend.correction import read_candidates
from tagmend.evaluation import inject_errors
from tagmend.service import build_session, make_app
from tagmend.session import SessionError, corrected_corpus
from tagmend.synthesis import GeneratorSpec, generate_synthetic_corpus


@pytest.fixture(scope="module")
def review_paths(tmp_path_factory):
    """A corpus with injected errors plus its ranked candidate file."""
    taxonomy = Taxonomy.default()
    corpus = generate_synthetic_corpus(GeneratorSpec(size=400, rule_seed=31), taxonomy)
    noisy, _ = inject_errors(corpus, 0.06, seed=32, taxonomy=taxonomy)
    root = tmp_path_factory.mktemp("service")
    corpus_path = root / "review.corpus"
    write_corpus(noisy, corpus_path)
    cand_path = root / "cands.tsv"
    code = main(
        ["correct", str(corpus_path), "--learner", "maxent", "--cutoff", "2",
         "--iterations", "60", "--out", str(cand_path)]
    )
    assert code == 0
    assert len(read_candidates(cand_path)) >= 20
    return corpus_path, cand_path


def client_for(session):
    return TestClient(make_app(session))


def fresh_session(review_paths, tmp_path, name="session.log"):
    corpus_path, cand_path = review_paths
    return build_session(cand_path, corpus_path, Taxonomy.default(), tmp_path / name)


class TestCandidateEndpoints:
    def test_paging_covers_all_candidates(self, review_paths, tmp_path):
        session = fresh_session(review_paths, tmp_path)
        with client_for(session) as client:
            total = client.get("/v1/candidates", params={"limit": 7}).json()["total"]
            seen = []
            offset = 0
            while offset < total:
                page = client.get(
                    "/v1/candidates", params={"offset": offset, "limit": 7}
                ).json()
                seen.extend(item["exampleId"] for item in page["items"])
                offset += 7
        assert len(seen) == total == len(session.candidates)
        assert seen == [c.example_id for c in session.candidates]  # ranked order

    def test_highlight_offsets_cover_the_tagged_phrase(self, review_paths, tmp_path):
        session = fresh_session(review_paths, tmp_path)
        with client_for(session) as client:
            item = client.get("/v1/candidates", params={"limit": 1}).json()["items"][0]
        example = session.corpus_by_id[item["exampleId"]]
        for span, segment in zip(item["vSpans"], example.english.v_segments):
            phrase = " ".join(example.english.segment_tokens(segment))
            assert item["sentence"][span["start"] : span["end"]] == phrase

    def test_single_candidate_and_404(self, review_paths, tmp_path):
        session = fresh_session(review_paths, tmp_path)
        with client_for(session) as client:
            ref = session.candidates[3].example_id
            hit = client.get(f"/v1/candidates/{ref}")
            assert hit.status_code == 200
            assert hit.json()["rank"] == 3
            assert client.get("/v1/candidates/ghost").status_code == 404

    def test_taxonomy_endpoint_serves_34_labels(self, review_paths, tmp_path):
        session = fresh_session(review_paths, tmp_path)
        with client_for(session) as client:
            labels = client.get("/v1/taxonomy").json()["labels"]
        assert len(labels) == 34
        assert {"id", "symbol", "group", "description"} <= set(labels[0])


class TestVerdicts:
    def test_accept_advances_progress(self, review_paths, tmp_path):
        session = fresh_session(review_paths, tmp_path)
        with client_for(session) as client:
            ref = session.candidates[0].example_id
            response = client.post(
                f"/v1/candidates/{ref}/verdict",
                json={"decision": "accept", "annotator": "a1"},
            )
            assert response.status_code == 200
            assert response.json()["progress"]["reviewed"] == 1
            progress = client.get("/v1/progress").json()
        assert progress["accepted"] == 1 and progress["cursor"] == 1

    def test_edit_equal_to_original_rejected(self, review_paths, tmp_path):
        session = fresh_session(review_paths, tmp_path)
        candidate = session.candidates[0]
        with client_for(session) as client:
            response = client.post(
                f"/v1/candidates/{candidate.example_id}/verdict",
                json={"decision": "edit", "editLabel": candidate.original_id},
            )
        assert response.status_code == 422

    def test_bad_decision_rejected(self, review_paths, tmp_path):
        session = fresh_session(review_paths, tmp_path)
        with client_for(session) as client:
            ref = session.candidates[0].example_id
            assert (
                client.post(
                    f"/v1/candidates/{ref}/verdict", json={"decision": "maybe"}
                ).status_code
                == 422
            )

    def test_later_verdict_supersedes_but_history_remains(self, review_paths, tmp_path):
        session = fresh_session(review_paths, tmp_path)
        ref = session.candidates[0].example_id
        with client_for(session) as client:
            client.post(f"/v1/candidates/{ref}/verdict", json={"decision": "accept"})
            client.post(f"/v1/candidates/{ref}/verdict", json={"decision": "reject"})
            progress = client.get("/v1/progress").json()
        assert progress["reviewed"] == 1 and progress["rejected"] == 1
        assert len(session.verdicts) == 2  # full history retained


class TestDurabilityAndReplay:
    def test_restart_preserves_acknowledged_verdicts(self, review_paths, tmp_path):
        session = fresh_session(review_paths, tmp_path)
        refs = [c.example_id for c in session.candidates[:3]]
        with client_for(session) as client:
            for ref in refs:
                assert (
                    client.post(
                        f"/v1/candidates/{ref}/verdict", json={"decision": "accept"}
                    ).status_code
                    == 200
                )
        reborn = fresh_session(review_paths, tmp_path)  # same log path
        with client_for(reborn) as client:
            progress = client.get("/v1/progress").json()
        assert progress["reviewed"] == 3 and progress["accepted"] == 3

    def test_corrupted_session_refuses_to_start(self, review_paths, tmp_path):
        log = tmp_path / "broken.log"
        log.write_text("e1\taccept\n", encoding="utf-8")  # wrong field count
        corpus_path, cand_path = review_paths
        with pytest.raises(SessionError):
            build_session(cand_path, corpus_path, Taxonomy.default(), log)

    def test_service_never_mutates_the_corpus_file(self, review_paths, tmp_path):
        corpus_path, _ = review_paths
        before = corpus_path.read_bytes()
        session = fresh_session(review_paths, tmp_path)
        with client_for(session) as client:
            ref = session.candidates[0].example_id
            client.post(f"/v1/candidates/{ref}/verdict", json={"decision": "accept"})
        assert corpus_path.read_bytes() == before


class TestExportFromSession:
    def test_accept_reject_edit_mix_changes_expected_records(
        self, review_paths, tmp_path
    ):
        session = fresh_session(review_paths, tmp_path)
        taxonomy = session.taxonomy
        c_accept, c_reject, c_edit = session.candidates[:3]
        edit_label = next(
            l.id
            for l in taxonomy
            if l.id not in (c_edit.original_id, c_edit.proposed_id)
        )
        with client_for(session) as client:
            client.post(
                f"/v1/candidates/{c_accept.example_id}/verdict", json={"decision": "accept"}
            )
            client.post(
                f"/v1/candidates/{c_reject.example_id}/verdict", json={"decision": "reject"}
            )
            client.post(
                f"/v1/candidates/{c_edit.example_id}/verdict",
                json={"decision": "edit", "editLabel": edit_label},
            )
        corrected = session.corrected_corpus()
        by_id = {ex.id: ex for ex in corrected}
        assert by_id[c_accept.example_id].v_category.id == c_accept.proposed_id
        assert by_id[c_reject.example_id].v_category.id == c_reject.original_id
        assert by_id[c_edit.example_id].v_category.id == edit_label
        untouched = [
            ex
            for ex in corrected
            if ex.id not in (c_accept.example_id, c_edit.example_id)
        ]
        originals = {ex.id: ex for ex in session.corpus}
        assert all(originals[ex.id] == ex for ex in untouched)

    def test_export_is_a_pure_function_of_corpus_and_session(self, review_paths, tmp_path):
        session = fresh_session(review_paths, tmp_path)
        ref = session.candidates[0].example_id
        with client_for(session) as client:
            client.post(f"/v1/candidates/{ref}/verdict", json={"decision": "accept"})
        a = corrected_corpus(session.corpus, session.by_ref, session.verdicts, session.taxonomy)
        b = corrected_corpus(session.corpus, session.by_ref, session.verdicts, session.taxonomy)
        assert a == b


class TestStaticUi:
    def test_built_assets_served_at_root(self, review_paths, tmp_path):
        ui_dir = tmp_path / "dist"
        ui_dir.mkdir()
        (ui_dir / "index.html").write_text("<!doctype html><title>review</title>", encoding="utf-8")
        session = fresh_session(review_paths, tmp_path)
        with TestClient(make_app(session, ui_dir=ui_dir)) as client:
            page = client.get("/")
            assert page.status_code == 200
            assert "review" in page.text
            # the API stays reachable alongside the static mount
            assert client.get("/v1/progress").status_code == 200
