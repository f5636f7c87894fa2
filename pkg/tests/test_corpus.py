import io

import pytest
from hypothesis import given, strategies as st

from tagmend.corpus import (
    CategoryLabel,
    CorpusFormatError,
    Example,
    Span,
    TaggedSentence,
    Taxonomy,
    load_corpus,
    load_corpus_file,
    parse_category_symbol,
    parse_example,
    parse_tagged_text,
    render_tagged_text,
    serialize_corpus,
    serialize_example,
    strip_markup,
)


class TestTaxonomy:
    def test_default_has_34_labels(self, taxonomy):
        assert len(taxonomy) == 34

    def test_symbol_resolution_is_a_bijection(self, taxonomy):
        symbols = {label.symbol for label in taxonomy}
        assert len(symbols) == 34
        for label in taxonomy:
            assert taxonomy.by_symbol(label.symbol) is label

    def test_exactly_one_empty_symbol_and_it_is_present_tense(self, taxonomy):
        empties = [label for label in taxonomy if label.symbol == ""]
        assert len(empties) == 1
        assert empties[0].id == "present"

    def test_exactly_one_untaggable_label(self, taxonomy):
        untaggable = [label for label in taxonomy if label.group == "untaggable"]
        assert len(untaggable) == 1
        assert taxonomy.untaggable is untaggable[0]

    def test_wrong_size_rejected(self, taxonomy):
        with pytest.raises(CorpusFormatError, match="34"):
            Taxonomy(taxonomy.labels[:33])

    def test_duplicate_symbol_rejected(self, taxonomy):
        labels = list(taxonomy.labels[:33])
        labels.append(CategoryLabel("extra", "d", "auxiliary", "dup"))
        with pytest.raises(CorpusFormatError, match="duplicate"):
            Taxonomy(labels)

    def test_index_follows_file_order(self, taxonomy):
        assert taxonomy.index("present") == 0
        assert taxonomy.index(taxonomy.labels[-1].id) == 33


class TestParseCategorySymbol:
    def test_past_symbol(self, taxonomy):
        v, vj = parse_category_symbol("d", taxonomy)
        assert v.id == "past" and vj is None

    def test_can_symbol(self, taxonomy):
        v, vj = parse_category_symbol("c", taxonomy)
        assert v.id == "can" and vj is None

    def test_lone_comma_is_present_present(self, taxonomy):
        v, vj = parse_category_symbol(",", taxonomy)
        assert v.id == "present" and vj is not None and vj.id == "present"

    def test_two_symbols(self, taxonomy):
        v, vj = parse_category_symbol("d,c", taxonomy)
        assert v.id == "past" and vj.id == "can"

    def test_unknown_symbol_names_substring_and_record(self, taxonomy):
        with pytest.raises(CorpusFormatError) as err:
            parse_category_symbol("zz", taxonomy, record_id="e9")
        assert "zz" in str(err.value) and "e9" in str(err.value)


class TestParseExample:
    def test_past_record(self, taxonomy):
        example = parse_example(
            ["d kare wa hashitta", "I <v>did not run</v> so fast."],
            taxonomy,
            example_id="e1",
        )
        assert example.v_category.id == "past"
        assert example.vj_category is None
        assert example.english.tokens[1:4] == ("did", "not", "run")
        assert example.english.v_segments == (Span(1, 4),)

    def test_vj_record(self, taxonomy):
        example = parse_example(
            [", aisatsu no rei", "That <v>is</v> why I <vj>avoid</vj> him."],
            taxonomy,
            example_id="e2",
        )
        assert example.v_category.id == "present"
        assert example.vj_category.id == "present"
        # tokens: That is why I avoid him .
        assert example.english.vj_segment == Span(4, 5)

    def test_split_verb_phrase(self, taxonomy):
        example = parse_example(
            ["c oyogeru ka", "<v>Can</v> he <v>swim</v> well ?"], taxonomy, example_id="e3"
        )
        assert len(example.english.v_segments) == 2
        assert example.english.segment_tokens(example.english.v_segments[0]) == ("Can",)
        assert example.english.segment_tokens(example.english.v_segments[1]) == ("swim",)

    @pytest.mark.parametrize(
        "line",
        [
            "He <v>walks home .",  # unclosed
            "He walks</v> home .",  # close before open
            "He <v>can <v>swim</v></v> .",  # nested
            "<v>a</v> <v>b</v> <v>c</v> .",  # three segments
            "He <v></v> walks .",  # empty segment
            "He <vj>waits</vj> .",  # no <v> at all
        ],
    )
    def test_bad_markup_rejected(self, line, taxonomy):
        with pytest.raises(CorpusFormatError):
            parse_tagged_text(line, record_id="eX")

    def test_symbol_field_and_vj_tag_must_agree(self, taxonomy):
        with pytest.raises(CorpusFormatError, match="disagree"):
            parse_example(
                ["d,c nai", "He <v>walked</v> home ."], taxonomy, example_id="e4"
            )


class TestSerialization:
    def test_file_round_trip_is_byte_identical(self, sample_corpus_path, taxonomy):
        original = sample_corpus_path.read_text(encoding="utf-8")
        examples, report = load_corpus(original, taxonomy)
        assert not report.errors
        assert serialize_corpus(examples) == original

    def test_correcting_a_category_changes_only_the_symbol(self, taxonomy):
        lines = ["d kare wa hashitta", "He <v>did not run</v> fast ."]
        example = parse_example(lines, taxonomy, example_id="e1")
        corrected = example.with_v_category(taxonomy.by_id("can"))
        assert serialize_example(corrected) == ["c kare wa hashitta", lines[1]]

    def test_removing_vj_drops_comma_and_right_field(self, taxonomy):
        example = parse_example(
            [", rei bun", "That <v>is</v> why I <vj>avoid</vj> him."],
            taxonomy,
            example_id="e1",
        )
        english = TaggedSentence(
            example.english.tokens, example.english.v_segments, None, raw=None
        )
        stripped = Example(example.id, example.japanese, english, example.v_category, None)
        symbol_line, english_line = serialize_example(stripped)
        assert symbol_line == " rei bun"
        assert "<vj>" not in english_line and "," not in symbol_line

    def test_constructed_sentence_renders_canonically(self):
        sentence = TaggedSentence(
            ("He", "can", "swim", "."), (Span(1, 3),), None, raw=None
        )
        assert (
            serialize_example(
                Example("e1", "rei", sentence, CategoryLabel("can", "c", "auxiliary"))
            )[1]
            == "He <v>can swim</v> ."
        )

    def test_structural_round_trip_of_constructed_example(self, taxonomy):
        sentence = TaggedSentence(
            ("Can", "he", "swim", "?"), (Span(0, 1), Span(2, 3)), None, raw=None
        )
        example = Example("e1", "rei", sentence, taxonomy.by_id("can"))
        reparsed = parse_example(serialize_example(example), taxonomy, example_id="e1")
        assert reparsed.english.tokens == sentence.tokens
        assert reparsed.english.v_segments == sentence.v_segments
        assert reparsed.v_category is example.v_category


class TestLoadCorpus:
    def test_empty_stream(self, taxonomy):
        examples, report = load_corpus(io.StringIO(""), taxonomy)
        assert examples == [] and report.record_count == 0 and not report.errors

    def test_counts_add_up(self, malformed_corpus_path, taxonomy):
        examples, report = load_corpus_file(malformed_corpus_path, taxonomy)
        assert report.record_count == 3
        assert len(examples) == 2
        assert len(report.errors) == 1
        assert len(examples) + report.dropped_untaggable + len(report.errors) == 3

    def test_diagnostic_carries_line_number(self, malformed_corpus_path, taxonomy):
        _, report = load_corpus_file(malformed_corpus_path, taxonomy)
        assert report.errors[0].line_no == 5  # the bad English line

    def test_exclude_untaggable(self, sample_corpus_path, taxonomy):
        kept, report = load_corpus_file(sample_corpus_path, taxonomy, exclude_untaggable=True)
        assert report.dropped_untaggable == 1
        assert all(ex.v_category.group != "untaggable" for ex in kept)
        assert len(kept) + report.dropped_untaggable == report.record_count

    def test_missing_english_line_is_a_diagnostic(self, taxonomy):
        examples, report = load_corpus("d tanbun\n", taxonomy)
        assert examples == []
        assert len(report.errors) == 1
        assert "missing English" in report.errors[0].message

    def test_ids_follow_record_order(self, sample_corpus_path, taxonomy):
        examples, _ = load_corpus_file(sample_corpus_path, taxonomy)
        assert [ex.id for ex in examples] == [f"e{i}" for i in range(1, 7)]


class TestStripMarkup:
    def test_offsets_cover_the_phrase(self):
        raw = "That <v>is</v> why she <vj>avoids</vj> him."
        text, v_spans, vj_span = strip_markup(raw)
        assert text == "That is why she avoids him."
        (start, stop), = v_spans
        assert text[start:stop] == "is"
        assert text[vj_span[0] : vj_span[1]] == "avoids"


@st.composite
def tagged_sentences(draw):
    words = st.text(
        alphabet=st.characters(whitelist_categories=("Ll", "Lu"), max_codepoint=0x2FF),
        min_size=1,
        max_size=6,
    )
    tokens = tuple(draw(st.lists(words, min_size=2, max_size=12)))
    start = draw(st.integers(0, len(tokens) - 1))
    stop = draw(st.integers(start + 1, len(tokens)))
    return TaggedSentence(tokens, (Span(start, stop),), None, raw=None)


class TestRoundTripProperty:
    @given(tagged_sentences())
    def test_render_then_parse_recovers_structure(self, sentence):
        reparsed = parse_tagged_text(render_tagged_text(sentence))
        assert reparsed.tokens == sentence.tokens
        assert reparsed.v_segments == sentence.v_segments


class TestReservedMarkup:
    def test_tokens_containing_tag_markers_are_rejected(self):
        with pytest.raises(CorpusFormatError, match="reserved"):
            TaggedSentence(("He", "<v>", "."), (Span(0, 1),), None, raw=None)
        with pytest.raises(CorpusFormatError, match="reserved"):
            TaggedSentence(("a<vj>b", "z"), (Span(1, 2),), None, raw=None)
        # closing markers carry "/", a punctuation character, so plain
        # tokenizer atomicity already rules them out
        with pytest.raises(CorpusFormatError, match="atomic"):
            TaggedSentence(("x</v>y", "z"), (Span(1, 2),), None, raw=None)

    def test_near_marker_tokens_still_round_trip(self):
        sentence = TaggedSentence(("<v", "v>", "ok"), (Span(2, 3),), None, raw=None)
        reparsed = parse_tagged_text(render_tagged_text(sentence))
        assert reparsed.tokens == sentence.tokens
        assert reparsed.v_segments == sentence.v_segments
