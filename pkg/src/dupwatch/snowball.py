"""English Snowball (Porter2) stemmer, current algorithm revision.

Self-contained implementation operating on lowercase tokens. Conformance
against the reference vocabulary fixture is enforced by the test suite.
"""

from __future__ import annotations

_VOWELS = frozenset("aeiouy")
# 'y' marked as consonant is uppercased to 'Y'; w/x/Y never end a short syllable
_VOWELS_WXY = frozenset("aeiouywxY")
_DOUBLES = ("bb", "dd", "ff", "gg", "mm", "nn", "pp", "rr", "tt")
_LI_VALID = frozenset("cdeghkmnrt")

# whole-word special cases, applied before any step
_EXCEPTIONS = {
    "skis": "ski",
    "skies": "sky",
    "idly": "idl",
    "gently": "gentl",
    "ugly": "ugli",
    "early": "earli",
    "only": "onli",
    "singly": "singl",
    "sky": "sky",
    "news": "news",
    "howe": "howe",
    "atlas": "atlas",
    "cosmos": "cosmos",
    "bias": "bias",
    "andes": "andes",
}

# words whose -ing form is left untouched
_ING_STEMS = frozenset(("even", "cann", "inn", "earr", "herr", "out"))

# stems for which a trailing "eed" is not reduced to "ee"
_EED_STEMS = frozenset(("succ", "proc", "exc"))

# prefixes that directly delimit the start of region R1
_R1_PREFIXES = (
    "arsen",
    "commun",
    "emerg",
    "gener",
    "inter",
    "later",
    "organ",
    "past",
    "univers",
)

# (suffix, replacement) tables; scanned longest-first, no fallback on
# a failed region or context condition, mirroring longest-match semantics
_STEP2 = (
    ("ational", "ate"),
    ("ization", "ize"),
    ("fulness", "ful"),
    ("ousness", "ous"),
    ("iveness", "ive"),
    ("tional", "tion"),
    ("lessli", "less"),
    ("biliti", "ble"),
    ("entli", "ent"),
    ("fulli", "ful"),
    ("ousli", "ous"),
    ("aliti", "al"),
    ("iviti", "ive"),
    ("alism", "al"),
    ("ation", "ate"),
    ("ogist", "og"),
    ("enci", "ence"),
    ("anci", "ance"),
    ("abli", "able"),
    ("izer", "ize"),
    ("ator", "ate"),
    ("alli", "al"),
    ("bli", "ble"),
    ("ogi", "og"),
    ("li", ""),
)

_STEP3 = (
    ("ational", "ate"),
    ("tional", "tion"),
    ("icate", "ic"),
    ("alize", "al"),
    ("iciti", "ic"),
    ("ative", ""),
    ("ical", "ic"),
    ("ness", ""),
    ("ful", ""),
)

_STEP4 = (
    "ement",
    "ance",
    "ence",
    "able",
    "ible",
    "ment",
    "ion",
    "ate",
    "ive",
    "ize",
    "iti",
    "ous",
    "ant",
    "ent",
    "ism",
    "al",
    "er",
    "ic",
)


def _prelude(word: str) -> str:
    if word.startswith("'"):
        word = word[1:]
    chars = list(word)
    if chars and chars[0] == "y":
        chars[0] = "Y"
    for i in range(1, len(chars)):
        if chars[i] == "y" and chars[i - 1] in _VOWELS:
            chars[i] = "Y"
    return "".join(chars)


def _region_after(word: str, start: int) -> int:
    """Position after the first vowel-then-non-vowel pair at or past start."""
    n = len(word)
    i = start
    while i < n and word[i] not in _VOWELS:
        i += 1
    if i >= n:
        return n
    i += 1
    while i < n and word[i] in _VOWELS:
        i += 1
    if i >= n:
        return n
    return i + 1


def _mark_regions(word: str) -> tuple[int, int]:
    for prefix in _R1_PREFIXES:
        if word.startswith(prefix):
            p1 = len(prefix)
            break
    else:
        p1 = _region_after(word, 0)
    return p1, _region_after(word, p1)


def _ends_short_syllable(word: str, pos: int) -> bool:
    if (
        pos >= 3
        and word[pos - 1] not in _VOWELS_WXY
        and word[pos - 2] in _VOWELS
        and word[pos - 3] not in _VOWELS
    ):
        return True
    if pos == 2 and word[0] in _VOWELS and word[1] not in _VOWELS:
        return True
    return word[:pos].endswith("past")


def _has_vowel(chars: str) -> bool:
    return any(c in _VOWELS for c in chars)


def _step_1a(word: str) -> str:
    for suffix in ("'s'", "'s", "'"):
        if word.endswith(suffix):
            word = word[: -len(suffix)]
            break
    if word.endswith("sses"):
        return word[:-4] + "ss"
    if word.endswith("ied") or word.endswith("ies"):
        return word[:-3] + ("i" if len(word) > 4 else "ie")
    if word.endswith("us") or word.endswith("ss"):
        return word
    if word.endswith("s") and _has_vowel(word[:-2]):
        return word[:-1]
    return word


def _step_1b(word: str, p1: int) -> str:
    suffix = next(
        (s for s in ("eedly", "ingly", "edly", "eed", "ing", "ed") if word.endswith(s)),
        None,
    )
    if suffix is None:
        return word
    pos = len(word) - len(suffix)
    if suffix in ("eed", "eedly"):
        if pos >= p1 and word[:pos] not in _EED_STEMS:
            return word[:pos] + "ee"
        return word
    stem = word[:pos]
    if suffix == "ing":
        if stem in _ING_STEMS:
            return word
        if len(stem) == 2 and stem[1] == "y" and stem[0] not in _VOWELS:
            return stem[0] + "ie"
    if not _has_vowel(stem):
        return word
    word = stem
    tail = word[-2:]
    if tail in ("at", "bl", "iz"):
        return word + "e"
    if tail in _DOUBLES:
        if len(word) == 3 and word[0] in "aeo":
            return word
        return word[:-1]
    if len(word) == p1 and _ends_short_syllable(word, len(word)):
        return word + "e"
    return word


def _step_1c(word: str) -> str:
    if len(word) >= 3 and word[-1] in "yY" and word[-2] not in _VOWELS:
        return word[:-1] + "i"
    return word


def _step_2(word: str, p1: int) -> str:
    for suffix, repl in _STEP2:
        if word.endswith(suffix):
            pos = len(word) - len(suffix)
            if pos < p1:
                return word
            if suffix == "ogi":
                return word[:pos] + "og" if pos > 0 and word[pos - 1] == "l" else word
            if suffix == "li":
                return word[:pos] if pos > 0 and word[pos - 1] in _LI_VALID else word
            return word[:pos] + repl
    return word


def _step_3(word: str, p1: int, p2: int) -> str:
    for suffix, repl in _STEP3:
        if word.endswith(suffix):
            pos = len(word) - len(suffix)
            if pos < p1:
                return word
            if suffix == "ative":
                return word[:pos] if pos >= p2 else word
            return word[:pos] + repl
    return word


def _step_4(word: str, p2: int) -> str:
    for suffix in _STEP4:
        if word.endswith(suffix):
            pos = len(word) - len(suffix)
            if pos < p2:
                return word
            if suffix == "ion":
                return word[:pos] if pos > 0 and word[pos - 1] in "st" else word
            return word[:pos]
    return word


def _step_5(word: str, p1: int, p2: int) -> str:
    if word.endswith("e"):
        pos = len(word) - 1
        if pos >= p2 or (pos >= p1 and not _ends_short_syllable(word, pos)):
            return word[:pos]
        return word
    if word.endswith("l"):
        pos = len(word) - 1
        if pos >= p2 and pos > 0 and word[pos - 1] == "l":
            return word[:pos]
    return word


def stem(word: str) -> str:
    """Stem one lowercase token."""
    if word in _EXCEPTIONS:
        return _EXCEPTIONS[word]
    if len(word) < 3:
        return word
    word = _prelude(word)
    p1, p2 = _mark_regions(word)
    word = _step_1a(word)
    word = _step_1b(word, p1)
    word = _step_1c(word)
    word = _step_2(word, p1)
    word = _step_3(word, p1, p2)
    word = _step_4(word, p2)
    word = _step_5(word, p1, p2)
    return word.replace("Y", "y")
