"""Text normalization: tokenization, stopword removal, and stemming.

A token stream is a plain list of lowercase strings. Tokens are maximal
alphanumeric runs of length >= 2 with stopwords removed; ``preprocess``
additionally stems each token.
"""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources

from dupwatch import snowball

_TOKEN_RE = re.compile(r"[^\W_]{2,}", re.UNICODE)


def _load_stopwords() -> frozenset[str]:
    text = resources.files("dupwatch").joinpath("data/stopwords_en.txt").read_text("utf-8")
    words = set()
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line)
    return frozenset(words)


STOPWORDS = _load_stopwords()

stem = snowball.stem

# token vocabularies are small relative to token counts, so memoize stems
_stem_cached = lru_cache(maxsize=1 << 18)(snowball.stem)


def tokenize(text: str) -> list[str]:
    """Split text into lowercase alphanumeric tokens, dropping stopwords."""
    return [t for t in _TOKEN_RE.findall(text.lower()) if t not in STOPWORDS]


def preprocess(text: str) -> list[str]:
    """Tokenize then stem; equals ``[stem(t) for t in tokenize(text)]``."""
    return [_stem_cached(t) for t in tokenize(text)]
