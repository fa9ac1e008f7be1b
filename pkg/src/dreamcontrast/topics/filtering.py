from __future__ import annotations

from .._data import bundled_wordset
from ..corpus import Document
from ..tagger import tag_word

CONTENT_TAGS = frozenset({"NOUN", "VERB", "ADJ"})
MODES = ("stoplist", "pos")


def _is_word(tok: str) -> bool:
    return any(ch.isalpha() for ch in tok)


def content_tokens(tokens, mode: str = "stoplist") -> list[str]:
    """Content words of a token list.

    ``stoplist`` drops bundled function words; ``pos`` keeps tokens tagged
    as nouns, verbs or adjectives.  Tokens without a letter always go.
    """
    if mode == "stoplist":
        fw = bundled_wordset("function_words.txt")
        return [t for t in tokens if _is_word(t) and t not in fw]
    if mode == "pos":
        return [t for t in tokens if _is_word(t) and tag_word(t) in CONTENT_TAGS]
    raise ValueError(f"unknown content filter mode {mode!r}; choose from {MODES}")


def content_filter(doc: Document, mode: str = "stoplist") -> list[str]:
    return content_tokens(doc.tokens, mode)
