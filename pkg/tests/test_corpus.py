import io
import json
import math
import statistics

import pytest
from hypothesis import given, settings, strategies as st

from dreamcontrast.corpus import (Corpus, CorpusError, cap_per_author, corpus_stats, dedup_exact,
                                  downsample_to_tokens, filter_english, greedy_fill, ingest_jsonl,
                                  make_document, split_sentences, tokenize, write_jsonl)

from conftest import corpus_of, doc


def rec(**kw):
    base = {"id": "d1", "author": "a", "label": "dream", "source": "s", "text": "I ran .\nI hid ."}
    base.update(kw)
    return json.dumps({k: v for k, v in base.items() if v is not None})


# ------------------------------------------------------------------ tokenize

@pytest.mark.parametrize("text,expected", [
    ("I was late :)", ["i", "was", "late", ":)"]),
    ("", []),
    ("room,", ["room", ","]),
    ("Wait... what?", ["wait", "...", "what", "?"]),
    ("it cost 3.50 dollars.", ["it", "cost", "3.50", "dollars", "."]),
    ('"Hello," she said', ['"', "hello", ",", '"', "she", "said"]),
    ("so sad :(", ["so", "sad", ":("]),
    ("LOUD Noise", ["loud", "noise"]),
    ("great:)", ["great", ":)"]),
])
def test_tokenize_cases(text, expected):
    assert tokenize(text) == expected


@given(st.text(max_size=80))
def test_tokens_nonempty_and_lowercase(text):
    toks = tokenize(text)
    assert all(t and t == t.lower() and not any(c.isspace() for c in t) for t in toks)


def test_split_sentences_prefers_newlines():
    assert split_sentences("a b.\nc d") == ["a b.", "c d"]
    assert split_sentences("One. Two? Three!") == ["One.", "Two?", "Three!"]


# ------------------------------------------------------------------- ingest

def test_ingest_one_record():
    res = ingest_jsonl([rec()])
    assert not res.errors
    (d,) = res.corpus.documents
    assert d.sentences == (("i", "ran", "."), ("i", "hid", "."))
    assert d.token_count == 6
    assert res.corpus.total_tokens == 6


def test_ingest_spec_example_counts_word_tokens():
    # "I ran .\nI hid ." has two sentences; the words alone are 4 tokens
    (d,) = ingest_jsonl([rec()]).corpus.documents
    assert len(d.sentences) == 2
    assert sum(t.isalpha() for t in d.tokens) == 4


def test_ingest_empty_stream():
    res = ingest_jsonl(io.StringIO(""))
    assert len(res.corpus) == 0 and res.corpus.total_tokens == 0 and not res.errors


def test_ingest_missing_field_reported_with_line():
    res = ingest_jsonl([rec(), rec(id="d2", author=None)])
    assert len(res.corpus) == 1
    (err,) = res.errors
    assert err.line == 2 and "author" in err.message


def test_ingest_strict_raises():
    with pytest.raises(CorpusError, match="line 1"):
        ingest_jsonl(["{not json"], strict=True)


def test_ingest_duplicate_id_rejects_later():
    res = ingest_jsonl([rec(text="first"), rec(text="second")])
    assert [d.raw_text for d in res.corpus] == ["first"]
    assert res.errors[0].kind == "duplicate" and res.errors[0].line == 2


def test_jsonl_round_trip():
    c = corpus_of(doc("a", "One two.\nThree :)"), doc("b", "x y z", label="story"))
    buf = io.StringIO()
    write_jsonl(c, buf)
    back = ingest_jsonl(io.StringIO(buf.getvalue())).corpus
    assert back == c


def test_document_invariants():
    d = make_document("x", "a", "dream", "s", "A b.\n\nC d e .\n")
    assert d.token_count == sum(len(s) for s in d.sentences)
    assert all(d.sentences) and all(t for s in d.sentences for t in s)


def test_corpus_rejects_duplicate_ids():
    with pytest.raises(ValueError):
        corpus_of(doc("a", "x"), doc("a", "y"))


def test_corpus_labels_are_present_labels():
    c = corpus_of(doc("a", "x"), doc("b", "y", label="story"))
    assert c.labels == {"dream", "story"}
    assert c.total_tokens == 2


# ------------------------------------------------------------------ cleaning

def test_filter_english():
    c = corpus_of(doc("en", "the and of was it"), doc("es", "el sueño era raro"))
    kept, removed = filter_english(c, 0.2)
    assert [d.id for d in kept] == ["en"] and removed == 1
    kept, removed = filter_english(c, 0.0)
    assert len(kept) == 2 and removed == 0


def test_dedup():
    c = corpus_of(doc("a", "Same text"), doc("b", "same TEXT"), doc("c", "other"))
    kept, removed = dedup_exact(c)
    assert [d.id for d in kept] == ["a", "c"] and removed == 1
    assert dedup_exact(kept) == (kept, 0)


# ------------------------------------------------------------------ sampling

def _author_corpus(counts):
    docs = []
    for a, n in counts.items():
        docs += [doc(f"{a}-{i}", f"w{i} x", author=a) for i in range(n)]
    return Corpus(tuple(docs))


def test_cap_per_author_examples():
    c = _author_corpus({"big": 150, "small": 3})
    out = cap_per_author(c, 100, seed=1)
    by = [d.author_id for d in out]
    assert by.count("big") == 100 and by.count("small") == 3
    assert cap_per_author(c, 100, seed=1) == out
    with pytest.raises(ValueError):
        cap_per_author(c, 0, seed=1)


def test_greedy_rule_example():
    assert greedy_fill([50, 60, 70], 115) == [0, 1]


def test_downsample_examples():
    c = corpus_of(*(doc(f"d{i}", " ".join(["w"] * n)) for i, n in enumerate((50, 60, 70))))
    assert downsample_to_tokens(c, 1000, seed=0) == c
    out = downsample_to_tokens(c, 115, seed=0)
    assert out.total_tokens <= 115
    with pytest.raises(ValueError):
        downsample_to_tokens(c, 0, seed=0)
    assert len(downsample_to_tokens(c, 10, seed=0)) == 0


def test_downsample_is_greedy_over_seeded_order():
    from dreamcontrast import _rng
    sizes = [5, 9, 3, 12, 7, 1, 8]
    c = corpus_of(*(doc(f"d{i}", " ".join(["w"] * n)) for i, n in enumerate(sizes)))
    order = _rng.permutation(len(sizes), _rng.make_rng(4))
    expect, total = set(), 0
    for i in order:
        if total + sizes[i] > 20:
            break
        total += sizes[i]
        expect.add(f"d{i}")
    assert {d.id for d in downsample_to_tokens(c, 20, seed=4)} == expect


# --------------------------------------------------------------------- stats

def test_stats_examples():
    c = corpus_of(*(doc(f"d{n}", " ".join(["w"] * n)) for n in (2, 4, 6)))
    s = corpus_stats(c)
    assert s.doc_count == 3 and s.total_tokens == 12 and s.mean_doc_len == 4.0
    assert s.pop_stddev_doc_len == pytest.approx(math.sqrt(8 / 3), abs=1e-12)
    assert round(s.pop_stddev_doc_len, 5) == 1.63299
    one = corpus_stats(corpus_of(doc("x", " ".join(["w"] * 7))))
    assert (one.mean_doc_len, one.pop_stddev_doc_len) == (7.0, 0.0)
    empty = corpus_stats(Corpus())
    assert (empty.doc_count, empty.total_tokens, empty.mean_doc_len, empty.pop_stddev_doc_len) == (0, 0, 0.0, 0.0)


@settings(max_examples=60)
@given(st.lists(st.integers(1, 40), min_size=1, max_size=30))
def test_stats_match_statistics_module(lengths):
    c = corpus_of(*(doc(f"d{i}", " ".join(["w"] * n)) for i, n in enumerate(lengths)))
    s = corpus_stats(c)
    assert s.mean_doc_len == pytest.approx(statistics.fmean(lengths), abs=1e-9)
    assert s.pop_stddev_doc_len == pytest.approx(statistics.pstdev(lengths), abs=1e-9)


@settings(max_examples=60)
@given(st.lists(st.integers(1, 30), min_size=0, max_size=25), st.integers(1, 300), st.integers(0, 2**32))
def test_downsample_never_exceeds_budget(sizes, budget, seed):
    c = corpus_of(*(doc(f"d{i}", " ".join(["w"] * n)) for i, n in enumerate(sizes)))
    out = downsample_to_tokens(c, budget, seed)
    assert out.total_tokens <= budget
    ids = [d.id for d in c]
    assert [d.id for d in out] == [i for i in ids if i in {d.id for d in out}]
