"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py`` (the lines are printed even
under output capture) or directly as ``python tests/test_acceptance.py``.
"""

import itertools
import math
import shutil
import statistics
import sys
import time
from collections import Counter
from contextlib import contextmanager
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dreamcontrast import _rng
from dreamcontrast._data import data_path
from dreamcontrast.classify import (auc, cross_validate_many, make_author_folds, predict,
                                    primal_objective, top_features, train_nb, train_svm,
                                    train_winnow)
from dreamcontrast.cli import main
from dreamcontrast.coherence import (build_entity_grid, count_markers, discrimination_test,
                                     evaluate_corpus, load_lexicon, match_connectives, train_egrid)
from dreamcontrast.corpus import (Corpus, cap_per_author, corpus_stats, downsample_to_tokens,
                                  make_document, tokenize)
from dreamcontrast.features import FeatureVector, load_blocklist, select_top_k, vectorize
from dreamcontrast.pipeline import REPORTS
from dreamcontrast.reports import read_body
from dreamcontrast.synthetic import (DATES, UNCERTAINTY, coherent_corpus, planted_genre_corpus,
                                     planted_topic_corpus)
from dreamcontrast.topics import fit_lda, g_test, top_words

from marker_cases import MARKER_CASES
from oracles import (auc_pairs, exhaustive_outcome, g_mpmath, greedy_alignment_overlap,
                     nb_posterior, svm_grid_min, winnow_trace)


@contextmanager
def criterion(n, title, limit=None, request=None):
    """Times the block and prints ``PASS``/``FAIL`` for it, uncaptured."""
    capman = request.config.pluginmanager.getplugin("capturemanager") if request else None
    t0 = time.perf_counter()
    ok, note = False, ""
    try:
        yield
        elapsed = time.perf_counter() - t0
        ok = limit is None or elapsed < limit
        note = f"{elapsed:.1f}s" + ("" if ok else f", over the {limit}s limit")
    except AssertionError as exc:
        note = f"{time.perf_counter() - t0:.1f}s: {str(exc).splitlines()[0] if str(exc) else 'assertion failed'}"
        raise
    finally:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {title} ({note})"
        if capman is not None:
            with capman.global_and_fixture_disabled():
                print("\n" + line)
        else:
            print(line)
    assert ok, line


def fv(active, id="x"):
    return FeatureVector(id, tuple(sorted(active)))


def random_small_sets(rng, n_cases, max_docs, max_feats):
    out = []
    while len(out) < n_cases:
        V = int(rng.integers(1, max_feats + 1))
        rows = [([f for f in range(V) if rng.random() < 0.5], "ab"[int(rng.integers(0, 2))])
                for _ in range(int(rng.integers(2, max_docs + 1)))]
        if len({lab for _, lab in rows}) == 2:
            out.append((V, rows))
    return out


def test_1_classifier_oracles(request):
    with criterion(1, "classifier oracles (NB exact, Winnow trace, SVM grid)", 10, request):
        rng = _rng.make_rng(2024)
        n_cases = 0
        for V, rows in random_small_sets(rng, 60, 5, 5):
            model = train_nb([(fv(a, f"d{i}"), lab) for i, (a, lab) in enumerate(rows)], n_features=V)
            for r in range(V + 1):
                for test in itertools.combinations(range(V), r):
                    labels, post = nb_posterior(rows, test, V)
                    expect = labels[0] if post[0] >= post[1] else labels[1]
                    assert predict(model, fv(test))[0] == expect, (rows, test)
            n_cases += 1
        assert n_cases >= 50

        rows = [((0, 1), "a"), ((1, 2), "b"), ((0,), "a"), ((2,), "b"), ((0, 2), "b")]
        a, b = 1.05, 0.95
        expect_pos = np.array([[2 * a * a * b, 2 * a * b, 2 * b ** 3], [2 * b * b * a, 2 * b * a, 2 * a ** 3]])
        expect_neg = np.array([[b * b * a, b * a, a ** 3], [a * a * b, a * b, b ** 3]])
        m = train_winnow([(fv(x, f"d{i}"), lab) for i, (x, lab) in enumerate(rows)], n_features=3)
        assert m.n_updates == 10 == winnow_trace(rows, 3)[2]
        assert np.abs(m.w_pos - expect_pos).max() <= 1e-12
        assert np.abs(m.w_neg - expect_neg).max() <= 1e-12

        for V, rows in random_small_sets(rng, 15, 7, 3):
            C = 1.0
            m = train_svm([(fv(x, f"d{i}"), lab) for i, (x, lab) in enumerate(rows)], C=C, n_features=V)
            X = np.array([[1.0 if f in x else 0.0 for f in range(V)] for x, _ in rows])
            y = np.array([1.0 if lab == m.positive else -1.0 for _, lab in rows])
            oracle, _ = svm_grid_min(X, y, C)
            assert abs(primal_objective(m.w, m.b, X, y, C) - oracle) <= 1e-2


def test_2_planted_signal_classification(request):
    with criterion(2, "planted-signal classification F1 >= 0.95, Winnow top-30 markers", 60, request):
        corpus = planted_genre_corpus(400, 20, seed=0)
        plan = make_author_folds(corpus, 10, seed=0)
        reports = cross_validate_many(corpus, ("winnow", "nb", "svm"), plan, k_features=500,
                                      positive="dream")
        for alg, rep in reports.items():
            assert rep.f1 >= 0.95, f"{alg} F1 {rep.f1:.3f}"
        vocab = select_top_k(corpus, 500, 3, load_blocklist())
        model = train_winnow([(vectorize(d, vocab), d.label) for d in corpus], n_features=len(vocab),
                             positive="dream")
        top = top_features(model, 30, vocab)
        for label, markers in (("dream", UNCERTAINTY), ("story", DATES)):
            hits = sum(1 for _, g, _ in top[label] if g in markers)
            assert hits >= 5, f"{label}: {hits} planted markers in top 30"


def test_3_auc_rank_sum(request):
    with criterion(3, "AUC equals brute-force pair counting on 1000 score sets", None, request):
        rng = _rng.make_rng(3)
        done = 0
        while done < 1000:
            n = int(rng.integers(2, 40))
            levels = int(rng.integers(1, 4)) if done % 2 else 1000  # every other set is tie-heavy
            scores = [(float(rng.integers(0, levels)), bool(rng.random() < 0.5)) for _ in range(n)]
            if len({p for _, p in scores}) < 2:
                continue
            done += 1
            assert auc(scores) == float(auc_pairs(scores)), scores


def test_4_lda(request):
    with criterion(4, "LDA count consistency, normalisation, planted recovery", 120, request):
        docs, _ = planted_topic_corpus(n_docs=50, n_tokens=20, seed=7)
        flags = []
        m = fit_lda(docs, T=5, iters=30, seed=1, on_sweep=lambda i, mm: flags.append(mm.check_counts()))
        assert flags and all(flags)
        assert np.abs(m.theta().sum(axis=1) - 1).max() <= 1e-9
        assert np.abs(m.phi().sum(axis=1) - 1).max() <= 1e-9
        good = 0
        for seed in range(5):
            docs, truth = planted_topic_corpus(n_docs=300, n_tokens=50, n_topics=3, seed=seed)
            m = fit_lda(docs, T=3, iters=500, seed=seed)
            found = [top_words(m, k, 10) for k in range(3)]
            good += greedy_alignment_overlap(found, [t[:10] for t in truth]) >= 0.8
        assert good >= 4, f"recovery >= 0.8 on {good}/5 seeds"


def test_5_g_test(request):
    with criterion(5, "g-test vs arbitrary precision, null, worked example, threshold", None, request):
        rng = _rng.make_rng(5)
        for _ in range(1000):
            n_a, n_b = (int(v) for v in rng.integers(1, 5000, 2))
            a, b = int(rng.integers(0, n_a + 1)), int(rng.integers(0, n_b + 1))
            G, sig = g_test(a, b, n_a, n_b)
            ref = float(g_mpmath(a, b, n_a, n_b))
            assert abs(G - ref) <= 1e-6 * abs(ref) + 1e-12, (a, b, n_a, n_b)
            assert sig == (G > 3.841)
        for k in range(1, 20):
            assert g_test(k, 2 * k, 50, 100) == (0.0, False)
        G, sig = g_test(30, 10, 100, 100)
        assert round(G, 4) == 10.4650 and sig
        below = g_test(19, 10, 100, 100)
        assert below[0] < 3.841 and not below[1]


def test_6_marker_counting(request):
    with criterion(6, "marker counting fixture and corpus totals", None, request):
        lex = load_lexicon()
        assert len(MARKER_CASES) == 30
        for text, expected in MARKER_CASES:
            got = Counter(" ".join(c) for c in match_connectives(tokenize(text), lex))
            assert got == Counter(expected), text
        rng = _rng.make_rng(6)
        words = ["but", "then", "even", "though", "so", "that", "and", "as", "soon", "in", "the",
                 "end", "we", "ran", "if", "for", "example"]
        for trial in range(50):
            docs = []
            for i in range(int(rng.integers(0, 10))):
                sents = [" ".join(words[int(k)] for k in rng.integers(0, len(words), int(rng.integers(1, 12))))
                         for _ in range(int(rng.integers(1, 4)))]
                docs.append(make_document(f"d{i}", "a", "x", "t", "\n".join(sents)))
            prof = count_markers(Corpus(tuple(docs)), lex)
            assert prof.total == sum(sum(c.values()) for c in prof.per_document.values())


def test_7_entity_grid(request):
    with criterion(7, "entity-grid exhaustive agreement and separation", 30, request):
        model = train_egrid(build_entity_grid(d) for d in coherent_corpus(200, seed=101))
        small = list(coherent_corpus(60, n_sentences=4, seed=102))
        small += list(coherent_corpus(40, n_sentences=3, seed=103, scrambled=True))
        for i, d in enumerate(small):
            assert discrimination_test(model, d, 20, seed=5, stream=i) == exhaustive_outcome(model, d, 5, i)
        coherent, _ = evaluate_corpus(model, list(coherent_corpus(100, seed=104)), 20, seed=5)
        assert coherent.accuracy >= 0.8, f"coherent accuracy {coherent.accuracy:.3f}"
        scrambled, _ = evaluate_corpus(model, list(coherent_corpus(100, seed=105, scrambled=True)), 20, seed=5)
        assert 0.35 <= scrambled.accuracy <= 0.65, f"scrambled accuracy {scrambled.accuracy:.3f}"
        one = make_document("one", "a", "x", "t", "the dog barked .")
        out = discrimination_test(model, one, 20, seed=5)
        assert (out.wins, out.ties, out.losses) == (0, 20, 0)


def test_8_determinism(request, tmp_path):
    with criterion(8, "run-all twice gives byte-identical report bodies", None, request):
        src = Path(data_path("synthetic"))
        for name in ("dreams.jsonl", "stories.jsonl", "demo.toml"):
            shutil.copy(src / name, tmp_path / name)
        cfg = str(tmp_path / "demo.toml")
        assert main(["run-all", "--config", cfg, "--out", str(tmp_path / "r1")]) == 0
        assert main(["run-all", "--config", cfg, "--out", str(tmp_path / "r2")]) == 0
        for name in REPORTS.values():
            assert read_body(tmp_path / "r1" / name) == read_body(tmp_path / "r2" / name), name


def test_9_corpus_sampling(request):
    with criterion(9, "downsample budget, per-author cap, population stddev", None, request):
        rng = _rng.make_rng(9)
        for trial in range(1000):
            n_docs = int(rng.integers(0, 25))
            sizes = rng.integers(1, 40, n_docs).tolist()
            authors = rng.integers(0, 5, n_docs).tolist()
            docs = tuple(make_document(f"d{i}", f"a{authors[i]}", "x", "t", " ".join(["w"] * s))
                         for i, s in enumerate(sizes))
            corpus = Corpus(docs)
            budget = int(rng.integers(1, 400))
            assert downsample_to_tokens(corpus, budget, trial).total_tokens <= budget
            cap = int(rng.integers(1, 6))
            kept = Counter(d.author_id for d in cap_per_author(corpus, cap, trial))
            assert all(v <= cap for v in kept.values())
            assert all(kept[a] == min(cap, c) for a, c in Counter(d.author_id for d in docs).items())
            if sizes:
                st = corpus_stats(corpus)
                mean = sum(sizes) / len(sizes)
                direct = math.sqrt(sum((x - mean) ** 2 for x in sizes) / len(sizes))
                assert abs(st.pop_stddev_doc_len - direct) <= 1e-9
                assert abs(st.pop_stddev_doc_len - statistics.pstdev(sizes)) <= 1e-9


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
