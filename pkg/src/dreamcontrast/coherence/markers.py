"""Discourse-connective frequency profiles."""

from __future__ import annotations

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .._data import data_path, read_lines
from ..corpus import Corpus

log = logging.getLogger(__name__)

Connective = tuple[str, ...]
EXCLUDED = frozenset({"and"})


@dataclass(frozen=True)
class MarkerLexicon:
    connectives: tuple[Connective, ...]
    top: frozenset[Connective] = frozenset()
    excluded: frozenset[str] = EXCLUDED
    _by_first: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for c in self.connectives:
            if len(c) == 1 and c[0] in self.excluded:
                raise ValueError(f"connective {c[0]!r} is excluded and cannot be in the lexicon")
        by_first = defaultdict(list)
        for c in self.connectives:
            by_first[c[0]].append(c)
        for first in by_first:
            by_first[first].sort(key=len, reverse=True)
        object.__setattr__(self, "_by_first", dict(by_first))

    def __len__(self) -> int:
        return len(self.connectives)

    def without(self, connective: Connective) -> "MarkerLexicon":
        return MarkerLexicon(tuple(c for c in self.connectives if c != connective),
                             self.top - {connective}, self.excluded)


def make_lexicon(entries: Iterable[str | Sequence[str]], top: Iterable = ()) -> MarkerLexicon:
    """Lexicon from strings or token sequences, dropping excluded one-word entries."""
    conns: list[Connective] = []
    for e in entries:
        toks = tuple(t.lower() for t in (e.split() if isinstance(e, str) else e))
        if not toks:
            continue
        if len(toks) == 1 and toks[0] in EXCLUDED:
            log.warning("connective %r is excluded; skipped", toks[0])
            continue
        if toks not in conns:
            conns.append(toks)
    tops = {tuple(t.lower() for t in (e.split() if isinstance(e, str) else e)) for e in top}
    return MarkerLexicon(tuple(conns), frozenset(tops & set(conns)))


def load_lexicon(path=None) -> MarkerLexicon:
    """Read a connective file; the bundled 60-entry list by default.

    One connective per line, tokens space-separated; ``#`` starts a comment
    line; an optional tab-separated ``top`` flag marks plot-view entries.
    """
    if path is None:
        path = data_path("connectives.txt")
    entries, top = [], []
    for line in read_lines(path):
        text, _, flag = line.partition("\t")
        entries.append(text)
        if flag.strip() == "top":
            top.append(text)
    return make_lexicon(entries, top)


def match_connectives(tokens: Sequence[str], lexicon: MarkerLexicon) -> list[Connective]:
    """Longest-match-first scan; matched tokens are consumed."""
    toks = [t.lower() for t in tokens]
    found = []
    i = 0
    while i < len(toks):
        for conn in lexicon._by_first.get(toks[i], ()):
            if tuple(toks[i:i + len(conn)]) == conn:
                found.append(conn)
                i += len(conn)
                break
        else:
            i += 1
    return found


@dataclass
class MarkerProfile:
    label: str
    counts: dict[Connective, int]
    n_tokens: int
    per_document: dict[str, Counter] = field(default_factory=dict, repr=False)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def rate_per_10k(self, connective: Connective) -> float:
        return 10000.0 * self.counts[connective] / self.n_tokens if self.n_tokens else 0.0


def count_markers(corpus: Corpus, lexicon: MarkerLexicon, label: str = "") -> MarkerProfile:
    """Connective counts per document and for the whole corpus.

    Matching stays inside sentences; every lexicon entry appears in
    ``counts``, zero or not.
    """
    counts = {c: 0 for c in lexicon.connectives}
    per_doc = {}
    for doc in corpus:
        c = Counter()
        for sent in doc.sentences:
            c.update(match_connectives(sent, lexicon))
        per_doc[doc.id] = c
        for conn, v in c.items():
            counts[conn] += v
    return MarkerProfile(label, counts, corpus.total_tokens, per_doc)
