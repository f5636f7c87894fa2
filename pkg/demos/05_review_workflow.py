"""The annotator review loop: serve candidates, record verdicts, export.

This demo drives the HTTP service in-process.  For the real thing:

    tagmend correct corpus.txt --stage 1 --out stage1.tsv
    tagmend serve stage1.tsv corpus.txt --session s1.log --ui frontend/dist
    # ... annotators accept/reject/edit in the browser ...
    tagmend export corpus.txt stage1.tsv --session s1.log --out corrected.txt

Run:  python demos/05_review_workflow.py
"""
import tempfile
import warnings
from pathlib import Path

from fastapi.testclient import TestClient

from tagmend.cli import main
from tagmend.corpus import Taxonomy, load_corpus_file, write_corpus
from tagmend.evaluation import inject_errors
from tagmend.service import build_session, make_app
from tagmend.synthesis import GeneratorSpec, generate_synthetic_corpus

warnings.filterwarnings("ignore")
taxonomy = Taxonomy.default()
work = Path(tempfile.mkdtemp(prefix="tagmend-demo-"))

corpus = generate_synthetic_corpus(GeneratorSpec(size=600, rule_seed=5), taxonomy)
noisy, _ = inject_errors(corpus, 0.05, seed=6, taxonomy=taxonomy)
corpus_path = work / "demo.corpus"
write_corpus(noisy, corpus_path)

candidate_path = work / "candidates.tsv"
main(["correct", str(corpus_path), "--stage", "1", "--cutoff", "2",
      "--iterations", "80", "--out", str(candidate_path)])

session = build_session(candidate_path, corpus_path, taxonomy, work / "session.log")
client = TestClient(make_app(session))

page = client.get("/v1/candidates", params={"limit": 3}).json()
print(f"{page['total']} candidates queued; the first one:")
first = page["items"][0]
span = first["vSpans"][0]
print(f"  {first['sentence']}")
print(f"  phrase: {first['sentence'][span['start']:span['end']]!r}")
print(f"  tagged {first['originalId']!r}, model suggests {first['proposedId']!r} "
      f"(M1 {first['confidenceM1']:.3f})")

# Accept the first candidate, reject the second.  Every verdict is fsynced
# to the session log before the response comes back, so a crash never
# loses acknowledged work.
client.post(f"/v1/candidates/{page['items'][0]['exampleId']}/verdict",
            json={"decision": "accept", "annotator": "demo"})
client.post(f"/v1/candidates/{page['items'][1]['exampleId']}/verdict",
            json={"decision": "reject", "annotator": "demo"})
print("\nprogress:", client.get("/v1/progress").json())

out_path = work / "corrected.corpus"
main(["export", str(corpus_path), str(candidate_path),
      "--session", str(work / "session.log"), "--out", str(out_path)])
before = corpus_path.read_text(encoding="utf-8").splitlines()
after = out_path.read_text(encoding="utf-8").splitlines()
changed = sum(1 for a, b in zip(before, after) if a != b)
print(f"exported corpus differs in {changed} line(s) (the accepted correction)")

original = load_corpus_file(corpus_path, taxonomy)[0]
corrected = load_corpus_file(out_path, taxonomy)[0]
flipped = [(a.id, a.v_category.id, b.v_category.id)
           for a, b in zip(original, corrected) if a.v_category is not b.v_category]
print("category changes:", flipped)
