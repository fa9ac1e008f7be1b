"""Lexicon part-of-speech tagger with suffix fallbacks.

Coarse tags: NOUN VERB AUX ADJ ADV PRON DET ADP CONJ PART NUM PUNCT SYM.
Known words take their most frequent tag from ``data/lexicon.tsv``;
unknown words are tagged by suffix and default to NOUN.
"""

from __future__ import annotations

import re
from functools import lru_cache

from ._data import data_path, read_lines
from .corpus import EMOTICONS

_NUMBER = re.compile(r"^[+-]?\d+([.,:]\d+)*(st|nd|rd|th|s)?$")
_ADJ_SUFFIXES = ("ous", "ful", "able", "ible", "ive", "less", "ical", "ish")


@lru_cache(maxsize=None)
def lexicon() -> dict[str, str]:
    out = {}
    for line in read_lines(data_path("lexicon.tsv")):
        word, tag = line.split("\t")
        out[word] = tag
    return out


def tag_word(word: str) -> str:
    lex = lexicon()
    w = word.lower()
    if w in lex:
        return lex[w]
    if w in EMOTICONS:
        return "SYM"
    if not any(ch.isalnum() for ch in w):
        return "PUNCT"
    if _NUMBER.match(w):
        return "NUM"
    if len(w) >= 5 and w.endswith("ly"):
        return "ADV"
    if len(w) >= 5 and w.endswith("ing"):
        return "VERB"
    if len(w) >= 5 and w.endswith("ed") and not w.endswith("eed"):
        return "VERB"
    if len(w) >= 6 and w.endswith(_ADJ_SUFFIXES):
        return "ADJ"
    for stem in (w[:-1], w[:-2]) if w.endswith("s") else ():
        if lex.get(stem) == "VERB":
            return "VERB"
    return "NOUN"


def tag(tokens) -> list[str]:
    return [tag_word(t) for t in tokens]
