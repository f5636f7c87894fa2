"""Train both probability models on a toy dataset and compare them.

Run:  python demos/03_learners.py
"""
from tagmend.decision_list import predict_decision_list, train_decision_list
from tagmend.maxent import MaxentConfig, predict_maxent, train_maxent
from tagmend.training import TrainingDataset

# Feature sets with labels: f1 leans toward A, f2 is a perfect B signal.
data = TrainingDataset.from_pairs(
    [({"f1"}, "A")] * 3
    + [({"f1"}, "B")] * 1
    + [({"f2"}, "B")] * 2
    + [({"f1", "f2"}, "B")] * 1,
    categories=["A", "B"],
)

# The maximum-entropy model balances every (feature, category) count
# constraint at once; iterative scaling reports its convergence honestly.
model = train_maxent(data, MaxentConfig(max_iterations=5000, tolerance=1e-4))
print(f"maxent: {model.meta.iterations} iterations, residual {model.meta.final_residual:.1e}")
for query in ({"f1"}, {"f2"}, {"f1", "f2"}, set()):
    p = predict_maxent(model, query)
    print(f"  p(A|{sorted(query) or 'nothing'}) = {p['A']:.3f}")

# The decision list answers from the single strongest feature instead.
dlist = train_decision_list(data)
print("\ndecision list:")
for query in ({"f1"}, {"f2"}, {"f1", "f2"}, {"unknown"}):
    dist, used, support = predict_decision_list(dlist, query)
    print(
        f"  query {sorted(query)}: uses {used or 'the prior'} "
        f"(support {support}), p(B) = {dist['B']:.3f}"
    )

# Where they differ: given both features, maxent blends the evidence,
# while the decision list trusts f2 alone because its best category
# probability (1.0) beats f1's (0.6).
