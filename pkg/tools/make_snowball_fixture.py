"""Regenerate tests/fixtures/snowball_en.tsv.

Builds a large English-ish vocabulary (words mined from installed-package
prose plus systematic suffix inflections and seeded random strings), stems
every entry with the reference implementation from the `snowballstemmer`
PyPI package (the stemming project's own generated code), and freezes the
(word, stem) pairs as a two-column TSV test fixture.

Usage: python tools/make_snowball_fixture.py [out_path]
"""

from __future__ import annotations

import random
import re
import sys
import sysconfig
from pathlib import Path

import snowballstemmer

WORD_RE = re.compile(r"[a-z']{2,24}")

SUFFIXES = [
    "s", "es", "ed", "ing", "ingly", "edly", "eed", "eedly", "ly", "ness",
    "ment", "ments", "ation", "ations", "ization", "izations", "ize", "izes",
    "izer", "ised", "ies", "ied", "ier", "iest", "ous", "ously", "ousness",
    "ful", "fully", "fulness", "less", "lessly", "lessness", "ive", "ively",
    "iveness", "ity", "ities", "al", "ally", "alism", "ality", "alize",
    "ical", "ically", "icate", "icity", "ance", "ence", "ancy", "ency",
    "ant", "ent", "ently", "able", "ably", "ible", "ibly", "ator", "ation",
    "ional", "ionally", "tion", "tional", "tionally", "sses", "ss", "us",
    "ism", "ist", "ists", "ogist", "ogy", "ogies", "er", "ers", "est",
    "e", "y", "ys", "ic",
]


def mine_words(limit: int = 26000) -> list[str]:
    """Collect frequent lowercase words from installed-package sources."""
    roots = [Path(sysconfig.get_paths()["purelib"])]
    counts: dict[str, int] = {}
    budget = 60_000_000  # bytes of source to scan
    for root in roots:
        for py in sorted(root.rglob("*.py")):
            try:
                text = py.read_text("utf-8", errors="ignore")
            except OSError:
                continue
            budget -= len(text)
            for match in WORD_RE.findall(text.lower()):
                word = match.strip("'")
                if len(word) >= 2:
                    counts[word] = counts.get(word, 0) + 1
            if budget <= 0:
                break
        if budget <= 0:
            break
    frequent = [w for w, c in counts.items() if c >= 2]
    frequent.sort(key=lambda w: (-counts[w], w))
    return frequent[:limit]


def inflections(bases: list[str], per_base: int, rng: random.Random) -> list[str]:
    out = []
    for base in bases:
        for suffix in rng.sample(SUFFIXES, per_base):
            out.append(base + suffix)
    return out


def random_strings(n: int, rng: random.Random) -> list[str]:
    alphabet = "abcdefghijklmnopqrstuvwxyz"
    extra = "aeiouy" * 3  # bias toward vowels so regions/short-syllable paths fire
    out = []
    for _ in range(n):
        length = rng.randint(2, 14)
        out.append("".join(rng.choice(alphabet + extra) for _ in range(length)))
    return out


def main() -> None:
    out_path = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("tests/fixtures/snowball_en.tsv")
    rng = random.Random(905171)
    mined = mine_words()
    bases = [w for w in mined[:4000] if "'" not in w and len(w) >= 3]
    vocab = sorted(set(mined) | set(inflections(bases[:2500], 6, rng)) | set(random_strings(3000, rng)))
    stemmer = snowballstemmer.stemmer("english")
    with out_path.open("w", encoding="utf-8") as fh:
        for word in vocab:
            fh.write(f"{word}\t{stemmer.stemWord(word)}\n")
    print(f"wrote {len(vocab)} pairs to {out_path}")


if __name__ == "__main__":
    main()
