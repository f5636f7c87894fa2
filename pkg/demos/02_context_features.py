"""The 26 positional n-gram features behind both classifiers.

Run:  python demos/02_context_features.py
"""
from tagmend.corpus import Taxonomy, parse_example
from tagmend.features import FeatureKind, extract_features, feature_key, normalize_split_verb

taxonomy = Taxonomy.default()

example = parse_example(
    ["d kanojo wa samui to iwanakatta", "She <v>did not say</v> it was so cold ."],
    taxonomy,
    example_id="demo",
)

# Up to 26 features per sentence: 5 n-grams ending left of the phrase,
# 10 starting at its first token, 10 ending at its last token, and the
# sentence-final token.  Windows that would cross the sentence edge are
# simply skipped, which is why this short sentence has fewer.
features = extract_features(example.english)
print(f"{len(features)} features for: {' '.join(example.english.tokens)}")
for kind in FeatureKind:
    keys = sorted(feature_key(f) for f in features if f.kind is kind)
    print(f"  {kind.name:<16} {keys}")

# Interrogatives split the verb phrase in two; feature extraction first
# deletes the words between the parts and merges them.
split = parse_example(
    ["c kare wa oyogeru ka", "<v>Can</v> he <v>swim</v> well ?"],
    taxonomy,
    example_id="demo-split",
)
merged = normalize_split_verb(split.english)
print(f"\nsplit phrase {split.english.v_segments} merges to {merged.v_segments[0]}")
print(f"tokens after gap removal: {merged.tokens}")
print("no feature ever contains the deleted word:",
      all("he" not in f.tokens for f in extract_features(split.english)))
