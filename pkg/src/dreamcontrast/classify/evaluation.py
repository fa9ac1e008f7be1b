"""Author-grouped cross-validation and pooled binary metrics."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.stats import rankdata

from .. import _rng
from ..corpus import Corpus
from ..features import (Blocklist, Vocabulary, apply_blocklist, extract_ngrams, load_blocklist,
                        rank_top_k, vectorize_ngrams)
from ._common import ModelError
from .naive_bayes import train_nb
from .svm import train_svm
from .winnow import train_winnow

log = logging.getLogger(__name__)

ALGORITHMS = ("winnow", "nb", "svm")


@dataclass(frozen=True)
class CvPlan:
    k: int
    fold_of: dict = field(repr=False)  # author_id -> fold index
    seed: int = 0

    def folds(self, corpus: Corpus) -> list[list[int]]:
        """Document positions per fold; unknown authors are an error."""
        out: list[list[int]] = [[] for _ in range(self.k)]
        for i, doc in enumerate(corpus.documents):
            if doc.author_id not in self.fold_of:
                raise ValueError(f"author {doc.author_id!r} of document {doc.id!r} is not in the plan")
            out[self.fold_of[doc.author_id]].append(i)
        return out


def make_author_folds(corpus: Corpus, k: int = 10, seed: int = 0) -> CvPlan:
    """Assign whole authors to ``k`` folds, largest authors first.

    Authors are shuffled with ``seed``, stably sorted by document count
    (descending), then each goes to the fold with the fewest documents so
    far (lowest index on ties).
    """
    sizes = Counter(d.author_id for d in corpus)
    if k < 2:
        raise ValueError(f"need k >= 2 folds, got {k}")
    if len(sizes) < k:
        raise ValueError(f"only {len(sizes)} authors for {k} folds; use k <= {len(sizes)}")
    authors = _rng.shuffled(sorted(sizes), _rng.make_rng(seed))
    authors.sort(key=lambda a: -sizes[a])
    load = [0] * k
    fold_of = {}
    for a in authors:
        f = min(range(k), key=lambda j: (load[j], j))
        fold_of[a] = f
        load[f] += sizes[a]
    return CvPlan(k, fold_of, seed)


@dataclass
class EvalReport:
    precision: float
    recall: float
    f1: float
    tpr: float
    fpr: float
    auc: float
    n_correct: int
    confusion: tuple[tuple[int, int], tuple[int, int]]  # ((tp, fn), (fp, tn))
    n: int
    positive: str
    per_fold: list[dict] = field(default_factory=list)
    skipped_folds: list[int] = field(default_factory=list)

    @property
    def accuracy(self) -> float:
        return self.n_correct / self.n


def _ratio(a: float, b: float) -> float:
    return a / b if b else 0.0


def micro_metrics(predictions: Sequence[tuple[str, str, float]], positive: str) -> EvalReport:
    """Pooled metrics from ``(true_label, predicted_label, score)`` triples.

    Precision and recall are those of ``positive`` over all pooled
    examples; AUC uses the scores.  With a single class present the AUC is
    reported as NaN.
    """
    if not predictions:
        raise ValueError("no predictions to evaluate")
    tp = fp = fn = tn = 0
    for true, pred, _ in predictions:
        if true == positive:
            if pred == positive:
                tp += 1
            else:
                fn += 1
        elif pred == positive:
            fp += 1
        else:
            tn += 1
    precision = _ratio(tp, tp + fp)
    recall = _ratio(tp, tp + fn)
    f1 = _ratio(2 * precision * recall, precision + recall)
    try:
        area = auc([(s, t == positive) for t, _, s in predictions])
    except ValueError:
        area = float("nan")
    return EvalReport(precision, recall, f1, recall, _ratio(fp, fp + tn), area, tp + tn,
                      ((tp, fn), (fp, tn)), len(predictions), positive)


def auc(scores: Iterable[tuple[float, bool]]) -> float:
    """Rank-sum AUC; a tied positive/negative pair counts one half."""
    scores = list(scores)
    n_pos = sum(1 for _, p in scores if p)
    n_neg = len(scores) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ValueError("AUC needs at least one positive and one negative example")
    ranks = rankdata([s for s, _ in scores], method="average")
    rank_sum = sum(r for r, (_, p) in zip(ranks.tolist(), scores) if p)
    u = rank_sum - n_pos * (n_pos + 1) / 2
    return u / (n_pos * n_neg)


TRAINERS: dict[str, Callable] = {"winnow": train_winnow, "nb": train_nb, "svm": train_svm}


def _train(algorithm: str, train, width: int, positive: str, params: dict):
    if algorithm not in TRAINERS:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {ALGORITHMS}")
    return TRAINERS[algorithm](train, n_features=width, positive=positive, **params)


def cross_validate_many(corpus: Corpus, algorithms: Sequence[str], plan: CvPlan, *,
                        k_features: int = 7500, n_max: int = 3,
                        blocklist: Blocklist | None = None, positive: str | None = None,
                        frequency: str = "corpus", params: dict | None = None,
                        ) -> dict[str, EvalReport]:
    """Cross-validate several algorithms on shared per-fold vocabularies.

    For each fold the vocabulary is chosen from the training documents
    only, every algorithm is trained on them in corpus order, and the
    held-out predictions are pooled across folds before scoring.
    """
    if blocklist is None:
        blocklist = load_blocklist()
    params = params or {}
    labels = sorted(corpus.labels)
    if len(labels) != 2:
        raise ModelError(f"binary task needs exactly two labels, got {labels}")
    positive = labels[0] if positive is None else positive
    folds = plan.folds(corpus)
    docs = corpus.documents
    grams = [apply_blocklist(extract_ngrams(d, n_max), blocklist) for d in docs]
    pooled: dict[str, list] = {a: [] for a in algorithms}
    per_fold: dict[str, list] = {a: [] for a in algorithms}
    skipped: list[int] = []
    for f, test_idx in enumerate(folds):
        if not test_idx:
            continue
        test_set = set(test_idx)
        train_idx = [i for i in range(len(docs)) if i not in test_set]
        if len({docs[i].label for i in train_idx}) < 2:
            log.warning("fold %d skipped: training portion has a single class", f)
            skipped.append(f)
            continue
        freq: Counter = Counter()
        for i in train_idx:
            freq.update(grams[i] if frequency == "corpus" else grams[i].keys())
        top = rank_top_k(freq, k_features)
        vocab = Vocabulary(tuple(g for g, _ in top), tuple(c for _, c in top), k_features)
        vec = {i: vectorize_ngrams(docs[i].id, grams[i].keys(), vocab) for i in range(len(docs))}
        train = [(vec[i], docs[i].label) for i in train_idx]
        for alg in algorithms:
            model = _train(alg, train, len(vocab), positive, params.get(alg, {}))
            correct = 0
            for i in test_idx:
                pred, score = model.predict(vec[i])
                pooled[alg].append((docs[i].label, pred, score))
                correct += pred == docs[i].label
            per_fold[alg].append({"fold": f, "n_test": len(test_idx), "n_correct": correct})
    out = {}
    for alg in algorithms:
        if not pooled[alg]:
            raise ModelError("every fold was skipped; nothing to evaluate")
        rep = micro_metrics(pooled[alg], positive)
        rep.per_fold = per_fold[alg]
        rep.skipped_folds = list(skipped)
        out[alg] = rep
    return out


def cross_validate(corpus: Corpus, algorithm: str, plan: CvPlan, k_features: int = 7500,
                   **kwargs) -> EvalReport:
    return cross_validate_many(corpus, [algorithm], plan, k_features=k_features, **kwargs)[algorithm]
