"""Tokenization and name normalization shared by the concept store, matcher and classifier.

Policy: a token is a maximal run of alphanumeric characters (underscore counts
as a separator); normalization lowercases tokens and joins multi-token names
with single spaces. Offsets are 0-based character offsets, end exclusive.
"""

import re
from dataclasses import dataclass

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


@dataclass(frozen=True)
class Token:
    text: str
    start: int
    end: int
    norm: str


def tokenize(text):
    """Split text into alphanumeric runs with character offsets."""
    return [
        Token(m.group(), m.start(), m.end(), m.group().lower())
        for m in _TOKEN_RE.finditer(text)
    ]


def norm_tokens(text):
    """Normalized token strings of a text, in order."""
    return [m.group().lower() for m in _TOKEN_RE.finditer(text)]


def normalize(name):
    """Canonical form of a concept name: lowercased tokens joined by single spaces."""
    return " ".join(norm_tokens(name))


def window_norms(text, start, end, window):
    """Normalized tokens of the +-window context around the span [start, end).

    Tokens overlapping the span are excluded; at most `window` tokens are
    taken from each side.
    """
    tokens = tokenize(text)
    lo = 0
    while lo < len(tokens) and tokens[lo].end <= start:
        lo += 1
    hi = lo
    while hi < len(tokens) and tokens[hi].start < end:
        hi += 1
    left = tokens[max(0, lo - window):lo] if window > 0 else []
    right = tokens[hi:hi + window] if window > 0 else []
    return [t.norm for t in left] + [t.norm for t in right]
