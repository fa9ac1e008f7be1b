"""Latent Dirichlet allocation fitted by collapsed Gibbs sampling.

Topic assignments start uniformly at random; each sweep then resamples
every token from

    p(z_i = t | rest)  ∝  (n_dt + alpha) * (n_wt + beta) / (n_t + V * beta)

with token ``i`` removed from the counts.  Both the initial assignments and
the per-sweep uniforms come from one seeded generator, so a fit is
reproducible across runs and across the compiled/pure-Python kernels.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .. import _backend, _rng

log = logging.getLogger(__name__)

FORMAT = "dreamcontrast-lda"
VERSION = 1


@dataclass(frozen=True)
class TopicAnnotation:
    doc_id: str
    topics: tuple[int, ...]
    threshold: float
    flagged: bool = False  # no topic reached the threshold


@dataclass
class TopicModel:
    T: int
    iterations: int
    alpha: float
    beta: float
    seed: int
    vocab: tuple[str, ...]
    doc_ids: tuple[str, ...]
    doc: np.ndarray = field(repr=False)    # token -> document row
    word: np.ndarray = field(repr=False)   # token -> vocabulary index
    z: np.ndarray = field(repr=False)      # token -> topic
    n_dt: np.ndarray = field(repr=False)
    n_wt: np.ndarray = field(repr=False)
    n_t: np.ndarray = field(repr=False)
    excluded: frozenset[str] = frozenset()

    @property
    def V(self) -> int:
        return len(self.vocab)

    def _row(self, doc_id: str) -> int:
        try:
            return self._rows[doc_id]
        except AttributeError:
            self._rows = {d: i for i, d in enumerate(self.doc_ids)}
            return self._rows[doc_id]

    def theta(self) -> np.ndarray:
        """Document-topic proportions; excluded documents are uniform."""
        n_d = self.n_dt.sum(axis=1, keepdims=True)
        th = (self.n_dt + self.alpha) / (n_d + self.T * self.alpha)
        for d in self.excluded:
            th[self._row(d)] = 1.0 / self.T
        return th

    def theta_of(self, doc_id: str) -> np.ndarray:
        return self.theta()[self._row(doc_id)]

    def phi(self) -> np.ndarray:
        """Topic-word distributions, shape (T, V)."""
        return (self.n_wt.T + self.beta) / (self.n_t[:, None] + self.V * self.beta)

    def check_counts(self) -> bool:
        """Whether the count tables are exactly the tallies of ``z``."""
        n_dt = np.zeros_like(self.n_dt)
        n_wt = np.zeros_like(self.n_wt)
        np.add.at(n_dt, (self.doc, self.z), 1)
        np.add.at(n_wt, (self.word, self.z), 1)
        n_t = np.bincount(self.z, minlength=self.T)
        return (np.array_equal(n_dt, self.n_dt) and np.array_equal(n_wt, self.n_wt)
                and np.array_equal(n_t, self.n_t))


def default_alpha(T: int) -> float:
    return 5.0 / T


def fit_lda(docs: Mapping[str, Sequence[str]] | Iterable[tuple[str, Sequence[str]]],
            T: int = 50, iters: int = 2000, alpha: float | None = None, beta: float = 0.01,
            seed: int = 0, *, backend: str | None = None,
            on_sweep: Callable[[int, TopicModel], None] | None = None) -> TopicModel:
    """Fit LDA to ``doc_id -> content tokens``.

    Documents without tokens are kept (uniform theta) but take no part in
    sampling; they are listed in ``TopicModel.excluded``.  ``on_sweep`` is
    called after every sweep with the sweep number and the live model.
    """
    items = list(docs.items()) if isinstance(docs, Mapping) else list(docs)
    if not items:
        raise ValueError("cannot fit a topic model to an empty corpus")
    if T < 1:
        raise ValueError(f"T must be >= 1, got {T}")
    if iters < 0:
        raise ValueError(f"iters must be >= 0, got {iters}")
    alpha = default_alpha(T) if alpha is None else alpha
    if alpha <= 0 or beta <= 0:
        raise ValueError("alpha and beta must be positive")
    kern = _backend.kernels if backend is None else _backend.load(backend)

    vocab = tuple(sorted({w for _, toks in items for w in toks}))
    windex = {w: i for i, w in enumerate(vocab)}
    doc_ids = tuple(d for d, _ in items)
    excluded = frozenset(d for d, toks in items if not toks)
    if excluded:
        log.warning("%d document(s) have no content tokens and are excluded from fitting",
                    len(excluded))
    doc = np.fromiter((r for r, (_, toks) in enumerate(items) for _ in toks), dtype=np.int32)
    word = np.fromiter((windex[w] for _, toks in items for w in toks), dtype=np.int32)
    N = len(word)
    if N == 0:
        raise ValueError("no content tokens to fit")

    rng = _rng.make_rng(seed)
    z = rng.integers(0, T, size=N).astype(np.int32)
    n_dt = np.zeros((len(items), T), dtype=np.int64)
    n_wt = np.zeros((len(vocab), T), dtype=np.int64)
    np.add.at(n_dt, (doc, z), 1)
    np.add.at(n_wt, (word, z), 1)
    n_t = np.bincount(z, minlength=T).astype(np.int64)
    model = TopicModel(T, iters, float(alpha), float(beta), seed, vocab, doc_ids, doc, word, z,
                       n_dt, n_wt, n_t, excluded)
    for sweep in range(1, iters + 1):
        kern.gibbs_sweep(doc, word, z, n_dt, n_wt, n_t, model.alpha, model.beta, rng.random(N))
        if on_sweep is not None:
            on_sweep(sweep, model)
    return model


def top_words(model: TopicModel, topic: int, n: int = 10) -> list[str]:
    """The ``n`` most probable words of ``topic``; ties in alphabetical order."""
    if not 0 <= topic < model.T:
        raise ValueError(f"topic {topic} out of range 0..{model.T - 1}")
    return [w for w, _ in ranked_words(model.phi()[topic], model.vocab)[:n]]


def ranked_words(phi_row: np.ndarray, vocab: Sequence[str]) -> list[tuple[str, float]]:
    return sorted(zip(vocab, phi_row.tolist()), key=lambda wp: (-wp[1], wp[0]))


def annotate_theta(doc_id: str, theta_row: Sequence[float], threshold: float = 0.10) -> TopicAnnotation:
    topics = tuple(t for t, v in enumerate(theta_row) if v >= threshold)
    if not topics:
        log.info("document %s has no topic at or above %.2f", doc_id, threshold)
    return TopicAnnotation(doc_id, topics, threshold, flagged=not topics)


def annotate_topics(model: TopicModel, doc_id: str, threshold: float = 0.10) -> TopicAnnotation:
    """Topics covering at least ``threshold`` of the document."""
    return annotate_theta(doc_id, model.theta_of(doc_id), threshold)


def annotate_all(model: TopicModel, threshold: float = 0.10) -> dict[str, TopicAnnotation]:
    theta = model.theta()
    return {d: annotate_theta(d, theta[i], threshold) for i, d in enumerate(model.doc_ids)}


# ------------------------------------------------------------- persistence


def save_topic_model(model: TopicModel, fh) -> None:
    by_doc: list[list[int]] = [[] for _ in model.doc_ids]
    z_doc: list[list[int]] = [[] for _ in model.doc_ids]
    for d, w, t in zip(model.doc.tolist(), model.word.tolist(), model.z.tolist()):
        by_doc[d].append(w)
        z_doc[d].append(t)
    json.dump({
        "format": FORMAT, "version": VERSION, "T": model.T, "iterations": model.iterations,
        "alpha": model.alpha, "beta": model.beta, "seed": model.seed,
        "vocab": list(model.vocab), "excluded": sorted(model.excluded),
        "docs": [{"id": d, "words": by_doc[i], "z": z_doc[i]} for i, d in enumerate(model.doc_ids)],
    }, fh)


def load_topic_model(fh) -> TopicModel:
    state = json.load(fh)
    if state.get("format") != FORMAT or state.get("version") != VERSION:
        raise ValueError("not a version-1 topic model file")
    T, V = state["T"], len(state["vocab"])
    docs = state["docs"]
    doc = np.fromiter((r for r, d in enumerate(docs) for _ in d["words"]), dtype=np.int32)
    word = np.fromiter((w for d in docs for w in d["words"]), dtype=np.int32)
    z = np.fromiter((t for d in docs for t in d["z"]), dtype=np.int32)
    n_dt = np.zeros((len(docs), T), dtype=np.int64)
    n_wt = np.zeros((V, T), dtype=np.int64)
    np.add.at(n_dt, (doc, z), 1)
    np.add.at(n_wt, (word, z), 1)
    n_t = np.bincount(z, minlength=T).astype(np.int64)
    return TopicModel(T, state["iterations"], state["alpha"], state["beta"], state["seed"],
                      tuple(state["vocab"]), tuple(d["id"] for d in docs), doc, word, z,
                      n_dt, n_wt, n_t, frozenset(state["excluded"]))
