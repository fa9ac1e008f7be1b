"""Binary word n-gram features.

N-grams are tuples of tokens and never span a sentence boundary.  For
reports they are written with tokens joined by ``_``.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import IO, Iterable, Mapping

from ._data import data_path, read_lines
from .corpus import Corpus, Document

log = logging.getLogger(__name__)

NGram = tuple[str, ...]


@dataclass(frozen=True)
class Blocklist:
    words: frozenset[str] = frozenset()

    def blocks(self, ngram: NGram) -> bool:
        return any(tok in self.words for tok in ngram)


def load_blocklist(path=None) -> Blocklist:
    """Blocklist from a one-word-per-line file; default is the dream-word list."""
    if path is None:
        path = data_path("dream_blocklist.txt")
    return Blocklist(frozenset(w.strip().lower() for w in read_lines(path)))


def ngram_str(ngram: NGram) -> str:
    return "_".join(ngram)


def sentence_ngrams(tokens, n_max: int = 3) -> Iterable[NGram]:
    L = len(tokens)
    for n in range(1, n_max + 1):
        for i in range(L - n + 1):
            yield tuple(tokens[i:i + n])


def extract_ngrams(doc: Document, n_max: int = 3) -> Counter:
    """All n-grams of order 1..n_max, per sentence, with multiplicities."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    counts: Counter = Counter()
    for sent in doc.sentences:
        counts.update(sentence_ngrams(sent, n_max))
    return counts


def apply_blocklist(ngrams: Mapping[NGram, int], blocklist: Blocklist) -> Counter:
    """Drop every n-gram with a blocklisted word as one of its tokens."""
    if not blocklist.words:
        return Counter(ngrams)
    return Counter({g: c for g, c in ngrams.items() if not blocklist.blocks(g)})


@dataclass(frozen=True)
class Vocabulary:
    """Selected n-grams; index 0 is the most frequent."""

    ngrams: tuple[NGram, ...]
    train_frequency: tuple[int, ...]
    k: int
    entries: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "entries", {g: i for i, g in enumerate(self.ngrams)})

    def __len__(self) -> int:
        return len(self.ngrams)

    def index(self, ngram: NGram) -> int | None:
        return self.entries.get(ngram)

    def dump_tsv(self, fh: IO[str]) -> None:
        fh.write("index\tngram\ttrain_frequency\n")
        for i, (g, f) in enumerate(zip(self.ngrams, self.train_frequency)):
            fh.write(f"{i}\t{ngram_str(g)}\t{f}\n")


def rank_top_k(freq: Mapping[NGram, int], k: int) -> list[tuple[NGram, int]]:
    """Highest frequency first; equal frequencies in tuple-lexicographic order."""
    return sorted(freq.items(), key=lambda kv: (-kv[1], kv[0]))[:k]


def count_training_ngrams(docs: Iterable[Document], n_max: int, blocklist: Blocklist,
                          frequency: str = "corpus") -> Counter:
    """Corpus frequency (token occurrences) or document frequency of n-grams."""
    if frequency not in ("corpus", "document"):
        raise ValueError(f"frequency must be 'corpus' or 'document', got {frequency!r}")
    total: Counter = Counter()
    for doc in docs:
        grams = apply_blocklist(extract_ngrams(doc, n_max), blocklist)
        if frequency == "corpus":
            total.update(grams)
        else:
            total.update(grams.keys())
    return total


def select_top_k(train_docs: Corpus | Iterable[Document], k: int = 7500, n_max: int = 3,
                 blocklist: Blocklist | None = None, frequency: str = "corpus") -> Vocabulary:
    """The ``k`` most frequent non-blocklisted n-grams of the training documents."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if blocklist is None:
        blocklist = load_blocklist()
    freq = count_training_ngrams(train_docs, n_max, blocklist, frequency)
    if len(freq) < k:
        log.warning("only %d n-grams survive selection (k=%d); using all", len(freq), k)
    top = rank_top_k(freq, k)
    return Vocabulary(tuple(g for g, _ in top), tuple(c for _, c in top), k)


@dataclass(frozen=True)
class FeatureVector:
    doc_id: str
    active: tuple[int, ...]


def vectorize_ngrams(doc_id: str, ngrams: Iterable[NGram], vocab: Vocabulary) -> FeatureVector:
    idx = {vocab.entries[g] for g in ngrams if g in vocab.entries}
    return FeatureVector(doc_id, tuple(sorted(idx)))


def vectorize(doc: Document, vocab: Vocabulary) -> FeatureVector:
    """Binary presence vector: each vocabulary n-gram at most once."""
    n_max = max((len(g) for g in vocab.ngrams), default=1)
    return vectorize_ngrams(doc.id, extract_ngrams(doc, n_max).keys(), vocab)
