"""Walk through the corpus file format: parsing, taxonomy, round-tripping.

Run from the repository root:  python demos/01_corpus_format.py
"""
from tagmend.corpus import Taxonomy, load_corpus, serialize_corpus

# The taxonomy shipped with the package: 34 tense/aspect/modality
# categories, each with a corpus symbol.  Plain present tense owns the
# empty symbol because it is by far the most frequent category.
taxonomy = Taxonomy.default()
print(f"{len(taxonomy)} categories; a few of them:")
for label in list(taxonomy)[:4]:
    print(f"  {label.id:<22} symbol={label.symbol!r:<6} group={label.group}")
print(f"  ... and symbol 'c' means {taxonomy.by_symbol('c').id!r}")

# A corpus is a sequence of two-line records: symbol field + source
# sentence, then the tagged English sentence.  <v> wraps the main verb
# phrase; <vj> marks the phrase matching the source-language main verb
# when the two differ, in which case the symbol field holds two
# comma-separated symbols.
corpus_text = """\
, kono inu wa itsumo hoeru kara komaru
That <v>is</v> why she <vj>avoids</vj> him.

d kare ga okureru to wa omowanakatta
She <v>did not say</v> he was so late.

c kare wa umaku oyogeru ka
<v>Can</v> he <v>swim</v> well ?
"""

examples, report = load_corpus(corpus_text, taxonomy)
print(f"\nloaded {len(examples)} records, {len(report.errors)} errors")
for example in examples:
    segs = [" ".join(example.english.segment_tokens(s)) for s in example.english.v_segments]
    print(f"  {example.id}: category={example.v_category.id:<9} verb phrase={segs}")

# Serialization is byte-exact for records that were parsed unchanged, so
# a correction pipeline can rewrite one symbol field without disturbing
# anything else in the file.
assert serialize_corpus(examples) == corpus_text
print("\nround-trip: byte-identical")

corrected = [examples[1].with_v_category(taxonomy.by_id("present-perfect"))]
print("after correcting e2 to present-perfect, only the symbol changes:")
print("  " + serialize_corpus(corrected).splitlines()[0])
