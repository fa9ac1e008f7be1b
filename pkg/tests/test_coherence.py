import itertools
import math
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from dreamcontrast.coherence import (ROLES, EgridModel, Outcome, build_entity_grid, count_markers,
                                     discrimination_report, discrimination_test, load_lexicon,
                                     make_lexicon, match_connectives, permutation_scores,
                                     score_grid, sentence_roles, train_egrid)
from dreamcontrast.coherence.egrid import grid_from_sentence_roles
from dreamcontrast.corpus import Corpus, tokenize
from dreamcontrast.synthetic import coherent_corpus

from conftest import corpus_of, doc
from marker_cases import MARKER_CASES
from oracles import egrid_product, exhaustive_outcome

LEX = load_lexicon()


def test_lexicon_shape():
    assert len(LEX) == 60 and len(LEX.top) == 28
    assert ("and",) not in LEX.connectives
    with pytest.raises(ValueError):
        type(LEX)((("and",),))
    assert make_lexicon(["and", "but"]).connectives == (("but",),)


@pytest.mark.parametrize("text,expected", MARKER_CASES)
def test_marker_fixture(text, expected):
    got = Counter(" ".join(c) for c in match_connectives(tokenize(text), LEX))
    assert got == Counter(expected)


def test_markers_stay_inside_sentences():
    prof = count_markers(corpus_of(doc("a", "we ran even\nthough it rained")), LEX)
    assert prof.counts[("even", "though")] == 0 and prof.counts[("though",)] == 1


def test_markers_empty_corpus():
    prof = count_markers(Corpus(), LEX)
    assert prof.total == 0 and all(v == 0 for v in prof.counts.values())
    assert prof.rate_per_10k(("but",)) == 0.0


@settings(max_examples=40)
@given(st.lists(st.lists(st.sampled_from(["but", "then", "even", "though", "so", "that", "as",
                                          "soon", "and", "we", "in", "the", "end", "x"]),
                         max_size=12), min_size=0, max_size=8))
def test_corpus_total_is_sum_of_documents(texts):
    c = corpus_of(*(doc(f"d{i}", " ".join(t) or "x") for i, t in enumerate(texts)))
    prof = count_markers(c, LEX)
    assert prof.total == sum(sum(v.values()) for v in prof.per_document.values())
    assert all(v >= 0 for v in prof.counts.values())
    assert all(prof.rate_per_10k(k) >= 0 for k in prof.counts)


# ---------------------------------------------------------------------- grids

def test_grid_examples():
    g = build_entity_grid(doc("a", "john sleeps .\njohn eats ."))
    assert g.column(0)["john"] == "S" and g.roles[g.entities.index("john")] == ("S", "S")
    g = build_entity_grid(doc("a", "john saw mary .\nmary slept ."))
    rows = dict(zip(g.entities, g.roles))
    assert rows == {"john": ("S", "-"), "mary": ("O", "S")}
    g = build_entity_grid(doc("a", "the dog barked ."))
    assert dict(zip(g.entities, g.roles)) == {"dog": ("S",)} and g.n_sentences == 1


def test_grid_invariants_on_corpus():
    for d in coherent_corpus(20, seed=1):
        g = build_entity_grid(d)
        assert all(len(r) == g.n_sentences == len(d.sentences) for r in g.roles)
        assert all(any(c != "-" for c in r) for r in g.roles)


def test_repeated_noun_keeps_best_role():
    assert sentence_roles(["john", "saw", "the", "dog", "and", "john"])["john"] == "S"


def test_empty_grid_scores_zero_with_flag():
    g = build_entity_grid(doc("a", "it was so ."))
    model = train_egrid([build_entity_grid(doc("b", "john ran ."))])
    assert len(g) == 0 and score_grid(model, g) == (0.0, True)


def test_train_examples():
    g = grid_from_sentence_roles("g", [{"e": "S"}, {"e": "S"}])
    m = train_egrid([g], h=1, smoothing=0)
    assert m.prob(("S",), "S") == 1.0 and m.prob(("-",), "S") == 1.0
    m1 = train_egrid([g], h=2, smoothing=1)
    assert m1.distribution(("O", "O")) == {r: 0.25 for r in ROLES}
    m2 = train_egrid([g, g], h=2, smoothing=0)
    m3 = train_egrid([g], h=2, smoothing=0)
    assert all(m2.prob(k, r) == m3.prob(k, r) for k in m3.counts for r in ROLES)
    with pytest.raises(ValueError):
        train_egrid([g], h=0)


def test_distributions_normalised():
    m = train_egrid(build_entity_grid(d) for d in coherent_corpus(30, seed=2))
    for hist in list(m.counts) + [("O", "X")]:
        assert math.fsum(m.distribution(hist).values()) == pytest.approx(1.0, abs=1e-9)


def test_score_constant_and_monotone():
    half = EgridModel(1, 0.0, {("-",): Counter({"S": 1, "O": 1}), ("S",): Counter({"S": 1, "O": 1})})
    g = grid_from_sentence_roles("g", [{"e": "S"}, {"e": "S"}])
    assert score_grid(half, g)[0] == pytest.approx(math.log(0.5))
    sharper = EgridModel(1, 0.0, {("-",): Counter({"S": 3, "O": 1}), ("S",): Counter({"S": 3, "O": 1})})
    assert score_grid(sharper, g)[0] > score_grid(half, g)[0]


# ------------------------------------------------------------- discrimination

MODEL = train_egrid(build_entity_grid(d) for d in coherent_corpus(200, seed=11))


def test_single_sentence_all_ties():
    assert discrimination_test(MODEL, doc("a", "the dog barked ."), 20, seed=5) == Outcome(0, 20, 0)


def test_identical_sentences_tie():
    d = doc("a", "\n".join(["john saw mary ."] * 4))
    assert discrimination_test(MODEL, d, 20, seed=1) == Outcome(0, 20, 0)


def test_discrimination_deterministic():
    d = coherent_corpus(1, seed=3).documents[0]
    assert discrimination_test(MODEL, d, seed=8) == discrimination_test(MODEL, d, seed=8)


def test_engineered_document_wins_every_pair():
    # a long S chain is the only ordering with no gaps; any other order breaks it
    d = doc("a", "\n".join(["john saw the lamp .", "john took the key .", "john fixed mary .",
                            "mary held the cup .", "mary moved the box ."]))
    model = train_egrid(build_entity_grid(x) for x in coherent_corpus(300, seed=4))
    orig, scored = permutation_scores(model, d, 20, seed=0)
    ident = [s for o, s in scored if o == sorted(o)]
    out = discrimination_test(model, d, 20, seed=0)
    assert out.wins == 20 - len(ident) and out.ties == len(ident)


def test_sampled_outcomes_match_exhaustive_orders():
    docs = [d for d in coherent_corpus(60, n_sentences=4, seed=21)]
    docs += [d for d in coherent_corpus(30, n_sentences=3, seed=22, scrambled=True)]
    totals = Counter()
    for i, d in enumerate(docs):
        out = discrimination_test(MODEL, d, 20, seed=13, stream=i)
        assert out == exhaustive_outcome(MODEL, d, 13, i)
        totals.update({"w": out.wins, "t": out.ties, "l": out.losses})
    assert totals["w"] and totals["t"] and totals["l"]


# --------------------------------------------------------------------- report

def test_report_examples():
    r = discrimination_report([Outcome(3, 1, 0)])
    assert r.accuracy == 0.75 and r.f_score == pytest.approx(6 / 7)
    r = discrimination_report([Outcome(0, 20, 0)])
    assert r.accuracy == 0.0 and r.f_score == 0.0 and r.flagged
    r = discrimination_report([Outcome(20, 0, 0)])
    assert (r.accuracy, r.f_score) == (1.0, 1.0)
    with pytest.raises(ValueError):
        discrimination_report([])
