"""End-to-end tag correction on a synthetic corpus with known errors.

Run:  python demos/04_correction_pipeline.py   (about half a minute)
"""
import warnings

from tagmend.corpus import Taxonomy
from tagmend.correction import MaxentLearner, make_folds, rank, score_closed, score_open
from tagmend.evaluation import build_report, inject_errors, render_report
from tagmend.maxent import MaxentConfig
from tagmend.synthesis import GeneratorSpec, generate_synthetic_corpus

warnings.filterwarnings("ignore")  # iteration-capped training warns; fine here

taxonomy = Taxonomy.default()

# A corpus whose true categories are recoverable from the English surface,
# the working assumption of tag correction.  Then corrupt 5% of the tags.
corpus = generate_synthetic_corpus(GeneratorSpec(size=2000, rule_seed=1), taxonomy)
corpus = [ex for ex in corpus if ex.v_category.group != "untaggable"]
noisy, gold = inject_errors(corpus, rate=0.05, seed=2, taxonomy=taxonomy)
print(f"{len(noisy)} tags, {len(gold)} of them corrupted")

config = MaxentConfig(max_iterations=150, tolerance=1e-3, min_feature_count=2)
learner = MaxentLearner(config)

# Closed data: the model trains on every tag, including the one it is
# judging.  Few candidates, high precision.
closed = rank(score_closed(noisy, learner, taxonomy), "M1")
hits = sum(1 for c in closed if c.example_id in gold.entries)
print(f"\nclosed data: {len(closed)} candidates, {hits} truly wrong")
print("top five, most confident first:")
for c in closed[:5]:
    marker = "hit " if c.example_id in gold.entries else "miss"
    print(f"  [{marker}] {c.example_id}: {c.original_id} -> {c.proposed_id} (M1 {c.confidence_m1:.3f})")

# Open data: ten-fold cross-validation keeps the judged tag out of its own
# training set.  Many more candidates, lower precision.
folds = make_folds(noisy, 10, seed=3)
opened = rank(score_open(noisy, learner, folds, taxonomy), "M1")
hits = sum(1 for c in opened if c.example_id in gold.entries)
print(f"\nopen data: {len(opened)} candidates, {hits} truly wrong")

# The evaluation table: detection asks "was the tag wrong", correction asks
# "and was the proposed replacement the true category".
print("\nclosed-data report:")
print(render_report(build_report(closed, gold, seed=4)))
