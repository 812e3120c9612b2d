import re
import unicodedata

_NON_LETTER = re.compile(r"[^A-Z]")
_PUNCT = re.compile(r"[^\w\s]|_")
_SPACES = re.compile(r"\s+")


def strip_diacritics(text):
    """Remove combining marks, e.g. ``"São"`` -> ``"Sao"``."""
    decomposed = unicodedata.normalize("NFKD", text)
    return "".join(ch for ch in decomposed if not unicodedata.combining(ch))


def normalize_acronym(token):
    """Strip diacritics, uppercase and keep only the letters A-Z."""
    return _NON_LETTER.sub("", strip_diacritics(token).upper())


def normalize_phrase(text):
    """Lower-case, replace punctuation by spaces and collapse whitespace."""
    text = _PUNCT.sub(" ", strip_diacritics(text).lower())
    return _SPACES.sub(" ", text).strip()
