"""Entity-grid local coherence and the permutation discrimination test.

Rows of a grid are entities (nouns, matched by exact string), columns are
sentences, and each cell is one of ``S`` (subject), ``O`` (object), ``X``
(other mention) or ``-`` (absent).  Without a parser, roles come from word
order: the first noun before a sentence's first verb is the subject, the
first noun after it the object, and every other noun mention is ``X``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .. import _rng
from ..corpus import Document
from ..tagger import tag

ROLES = ("S", "O", "X", "-")
_RANK = {"S": 3, "O": 2, "X": 1, "-": 0}
_VERBAL = frozenset({"VERB", "AUX"})


@dataclass(frozen=True)
class EntityGrid:
    doc_id: str
    entities: tuple[str, ...]
    roles: tuple[tuple[str, ...], ...]  # one row per entity
    n_sentences: int

    def __len__(self) -> int:
        return len(self.entities)

    def column(self, j: int) -> dict[str, str]:
        return {e: row[j] for e, row in zip(self.entities, self.roles)}


def sentence_roles(tokens: Sequence[str]) -> dict[str, str]:
    """Role of each noun mentioned in one sentence (best role if repeated)."""
    tags = tag(tokens)
    verb = next((i for i, t in enumerate(tags) if t in _VERBAL), None)
    subj = obj = None
    if verb is not None:
        subj = next((i for i in range(verb) if tags[i] == "NOUN"), None)
        obj = next((i for i in range(verb + 1, len(tags)) if tags[i] == "NOUN"), None)
    roles: dict[str, str] = {}
    for i, (tok, t) in enumerate(zip(tokens, tags)):
        if t != "NOUN":
            continue
        r = "S" if i == subj else "O" if i == obj else "X"
        if _RANK[r] > _RANK[roles.get(tok, "-")]:
            roles[tok] = r
    return roles


def grid_from_sentence_roles(doc_id: str, columns: Sequence[dict[str, str]]) -> EntityGrid:
    entities: list[str] = []
    for col in columns:
        for e in col:
            if e not in entities:
                entities.append(e)
    rows = tuple(tuple(col.get(e, "-") for col in columns) for e in entities)
    return EntityGrid(doc_id, tuple(entities), rows, len(columns))


def build_entity_grid(doc: Document) -> EntityGrid:
    if not doc.sentences:
        raise ValueError(f"document {doc.id!r} has no sentences")
    return grid_from_sentence_roles(doc.id, [sentence_roles(s) for s in doc.sentences])


def transitions(grid: EntityGrid, h: int) -> Counter:
    """``(history, role)`` counts over every row, left-padded with ``h`` blanks."""
    out: Counter = Counter()
    for row in grid.roles:
        padded = ("-",) * h + tuple(row)
        for j in range(len(row)):
            out[(padded[j:j + h], padded[j + h])] += 1
    return out


@dataclass(frozen=True)
class EgridModel:
    h: int
    smoothing: float
    counts: dict = field(repr=False)  # history -> Counter(role -> n)

    def prob(self, history: tuple[str, ...], role: str) -> float:
        c = self.counts.get(history)
        total = sum(c.values()) if c else 0
        denom = total + 4 * self.smoothing
        if denom == 0:
            return 0.25
        return ((c[role] if c else 0) + self.smoothing) / denom

    def distribution(self, history: tuple[str, ...]) -> dict[str, float]:
        return {r: self.prob(history, r) for r in ROLES}


def train_egrid(grids: Iterable[EntityGrid], h: int = 2, smoothing: float = 1.0) -> EgridModel:
    if h < 1:
        raise ValueError(f"history length must be >= 1, got {h}")
    if smoothing < 0:
        raise ValueError(f"smoothing must be >= 0, got {smoothing}")
    counts: dict = {}
    nonempty = 0
    for g in grids:
        if len(g):
            nonempty += 1
        for (hist, role), n in transitions(g, h).items():
            counts.setdefault(hist, Counter())[role] += n
    if nonempty == 0:
        raise ValueError("need at least one non-empty entity grid to train on")
    return EgridModel(h, float(smoothing), counts)


def score_grid(model: EgridModel, grid: EntityGrid) -> tuple[float, bool]:
    """Mean log-probability per transition, and whether the grid was empty.

    Transitions are tallied first and summed with :func:`math.fsum`, so
    grids with the same transition multiset score identically whatever
    their row or column order.
    """
    trans = transitions(grid, model.h)
    n = sum(trans.values())
    if n == 0:
        return 0.0, True
    terms = []
    for (hist, role), c in sorted(trans.items()):
        p = model.prob(hist, role)
        terms.append(c * math.log(p) if p > 0 else -math.inf)
    return math.fsum(terms) / n, False


def permute_document(doc: Document, order: Sequence[int]) -> Document:
    return replace(doc, sentences=tuple(doc.sentences[i] for i in order))


@dataclass(frozen=True)
class Outcome:
    wins: int
    ties: int
    losses: int

    @property
    def pairs(self) -> int:
        return self.wins + self.ties + self.losses


def sample_permutations(n_sentences: int, n_perm: int, seed: int, stream: int = 0) -> list[list[int]]:
    """``n_perm`` uniform sentence orders (the identity may be drawn)."""
    rng = _rng.make_rng(seed, stream)
    return [_rng.permutation(n_sentences, rng) for _ in range(n_perm)]


def permutation_scores(model: EgridModel, doc: Document, n_perm: int = 20, seed: int = 0,
                       stream: int = 0) -> tuple[float, list[tuple[list[int], float]]]:
    original, _ = score_grid(model, build_entity_grid(doc))
    scored = []
    for order in sample_permutations(len(doc.sentences), n_perm, seed, stream):
        s, _ = score_grid(model, build_entity_grid(permute_document(doc, order)))
        scored.append((order, s))
    return original, scored


def discrimination_test(model: EgridModel, doc: Document, n_perm: int = 20, seed: int = 0,
                        stream: int = 0) -> Outcome:
    """Compare the original order against ``n_perm`` random reorderings.

    ``stream`` separates documents sharing one seed; corpus runs pass the
    document's position.
    """
    original, scored = permutation_scores(model, doc, n_perm, seed, stream)
    wins = sum(1 for _, s in scored if original > s)
    ties = sum(1 for _, s in scored if original == s)
    return Outcome(wins, ties, len(scored) - wins - ties)


@dataclass(frozen=True)
class DiscriminationReport:
    docs: int
    pairs: int
    wins: int
    ties: int
    losses: int
    accuracy: float
    f_score: float
    flagged: bool = False  # F undefined (no decided pairs)


def discrimination_report(outcomes: Sequence[Outcome]) -> DiscriminationReport:
    """Pooled accuracy and F-score; ties count against accuracy and recall.

    precision = wins / (wins + losses), recall = wins / pairs.
    """
    wins = sum(o.wins for o in outcomes)
    ties = sum(o.ties for o in outcomes)
    losses = sum(o.losses for o in outcomes)
    pairs = wins + ties + losses
    if pairs == 0:
        raise ValueError("no permutation pairs to report on")
    accuracy = wins / pairs
    decided = wins + losses
    flagged = decided == 0
    precision = wins / decided if decided else 0.0
    recall = wins / pairs
    f = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return DiscriminationReport(len(outcomes), pairs, wins, ties, losses, accuracy, f, flagged)


def evaluate_corpus(model: EgridModel, docs: Sequence[Document], n_perm: int = 20,
                    seed: int = 0) -> tuple[DiscriminationReport, list[Outcome]]:
    outcomes = [discrimination_test(model, d, n_perm, seed, stream=i) for i, d in enumerate(docs)]
    return discrimination_report(outcomes), outcomes
