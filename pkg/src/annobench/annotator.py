"""NER+L pipeline: greedy longest-match span detection, context-vector scoring,
and the rule-based regex mode.

annotate() is a pure function of (document, database snapshot, config) and is
safe to run concurrently across documents against one snapshot.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field

from .errors import InvalidPattern, UnknownCui
from .text import tokenize, window_norms

REGEX_CUI = "REGEX"

STATUS_UNREVIEWED = "unreviewed"
STATUS_CORRECT = "correct"
STATUS_INCORRECT = "incorrect"


@dataclass
class AnnotatorConfig:
    """Knobs of the annotator and the feedback loop.

    context_window: tokens taken on each side of a span for scoring/training.
    delta: confidence cutoff separating trusted from flagged annotations.
    learning_rate: step size of online context-vector updates.
    """

    context_window: int = 7
    delta: float = 0.25
    learning_rate: float = 0.1
    spell_enabled: bool = True

    def __post_init__(self):
        if self.context_window < 0:
            raise ValueError("context_window must be >= 0")
        if not 0.0 <= self.delta <= 1.0:
            raise ValueError("delta must be in [0, 1]")
        if not 0.0 < self.learning_rate <= 1.0:
            raise ValueError("learning_rate must be in (0, 1]")


@dataclass
class SpanMatch:
    """A detected span: contiguous tokens plus the candidate CUIs."""

    tokens: list
    cuis: set
    index: int  # position of the first token in the document token sequence

    @property
    def start(self):
        return self.tokens[0].start

    @property
    def end(self):
        return self.tokens[-1].end


@dataclass
class Annotation:
    id: str
    doc_id: str
    start: int
    end: int
    matched_text: str
    cui: str
    confidence: float
    candidates: set = field(default_factory=set)
    status: str = STATUS_UNREVIEWED

    def to_dict(self):
        return {
            "id": self.id,
            "doc_id": self.doc_id,
            "start": self.start,
            "end": self.end,
            "text": self.matched_text,
            "cui": self.cui,
            "confidence": self.confidence,
            "candidates": sorted(self.candidates),
            "status": self.status,
        }


def detect_spans(tokens, db, config=None):
    """Greedy left-to-right longest match against the name index.

    Matched tokens are consumed, so spans never overlap. When no exact match
    starts at a token and spelling is enabled, distance-1 single-token
    spelling candidates are tried before moving on.
    """
    config = config or AnnotatorConfig()
    norms = [t.norm for t in tokens]
    spans = []
    i = 0
    n = len(tokens)
    while i < n:
        matched = None
        for length in range(min(db.max_name_tokens, n - i), 0, -1):
            cuis = db.candidates_for_tokens(norms[i:i + length])
            if cuis:
                matched = SpanMatch(tokens[i:i + length], set(cuis), i)
                break
        if matched is None and config.spell_enabled:
            pairs = db.spell_candidates(norms[i])
            if pairs:
                matched = SpanMatch([tokens[i]], {cui for _, cui in pairs}, i)
        if matched is None:
            i += 1
        else:
            spans.append(matched)
            i += len(matched.tokens)
    return spans


def score(span, cui, context_tokens, db, config=None):
    """Confidence in [0, 1] for linking `span` to `cui`.

    Untrained concepts score 1.0 when the span is unambiguous and 1/k among k
    candidates (deliberately below the default cutoff for k >= 2, so they
    surface for review). Trained concepts score (cosine + 1) / 2 against the
    count bag of the window's vocabulary tokens.
    """
    concept = db.concepts.get(cui)
    if concept is None:
        raise UnknownCui(f"unknown cui {cui!r}")
    k = len(span.cuis) or 1
    if not concept.is_trained():
        return 1.0 if k == 1 else 1.0 / k
    return (db.context_cosine(cui, context_tokens) + 1.0) / 2.0


def _window(tokens, first, last, width):
    left = tokens[max(0, first - width):first] if width > 0 else []
    right = tokens[last:last + width] if width > 0 else []
    return [t.norm for t in left] + [t.norm for t in right]


def annotate(text, db, config=None, doc_id="doc"):
    """Detect, disambiguate and score all concept mentions of one document.

    Deterministic given model state: per span the argmax-scoring CUI wins,
    ties broken by lexicographically smallest CUI; output is sorted by start.
    """
    config = config or AnnotatorConfig()
    tokens = tokenize(text)
    annotations = []
    for span in detect_spans(tokens, db, config):
        ctx = _window(tokens, span.index, span.index + len(span.tokens),
                      config.context_window)
        best_cui, best_conf = None, -1.0
        for cui in sorted(span.cuis):
            s = score(span, cui, ctx, db, config)
            if s > best_conf:
                best_cui, best_conf = cui, s
        annotations.append(Annotation(
            id=f"{doc_id}:{span.start}:{span.end}",
            doc_id=doc_id,
            start=span.start,
            end=span.end,
            matched_text=text[span.start:span.end],
            cui=best_cui,
            confidence=best_conf,
            candidates=set(span.cuis),
        ))
    return annotations


def regex_annotate(text, pattern, doc_id="doc"):
    """Rule-based NER mode: one annotation per non-overlapping leftmost match.

    Annotations carry the reserved pseudo-CUI "REGEX" and confidence 1.0.
    """
    try:
        rx = re.compile(pattern)
    except re.error as exc:
        raise InvalidPattern(str(exc)) from None
    annotations = []
    for m in rx.finditer(text):
        if m.start() == m.end():
            continue
        annotations.append(Annotation(
            id=f"{doc_id}:{m.start()}:{m.end()}",
            doc_id=doc_id,
            start=m.start(),
            end=m.end(),
            matched_text=m.group(),
            cui=REGEX_CUI,
            confidence=1.0,
            candidates={REGEX_CUI},
        ))
    return annotations


def context_bag(text, start, end, window):
    """Full token-count bag (token -> count) of the +-window context around
    [start, end), span tokens excluded. Used when capturing feedback events."""
    return dict(Counter(window_norms(text, start, end, window)))
