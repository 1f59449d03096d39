"""Active-learning loop: confidence partitioning, tick/cross feedback as online
context-vector updates, and rerunning the annotator so corrections take effect.

Feedback events are applied serially in arrival order through the concept
store's single writer; each individual update is atomic.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .annotator import (
    REGEX_CUI,
    STATUS_CORRECT,
    STATUS_INCORRECT,
    annotate,
    context_bag,
)
from .errors import IllegalValue, UnknownAnnotation

VERDICTS = (STATUS_CORRECT, STATUS_INCORRECT)


@dataclass
class DisplayPartition:
    """One partition of an annotation list: trusted (confidence > delta) and
    flagged (confidence <= delta). The UI renders trusted spans normally and
    highlights flagged spans for priority review."""

    trusted: list
    flagged: list


@dataclass
class FeedbackEvent:
    """One tick/cross verdict by an annotator on an annotation.

    context_bag maps token -> count, captured at feedback time. cui and
    learning_rate are denormalized so replaying the log alone rebuilds the
    concept vectors even after annotations were replaced by reruns.
    """

    annotation_id: str
    annotator: str
    verdict: str
    context_bag: dict = field(default_factory=dict)
    timestamp: float = 0.0
    cui: str = ""
    learning_rate: float = 0.1


def display_filter(annotations, delta):
    """Partition annotations by the confidence cutoff, preserving document order."""
    if not 0.0 <= delta <= 1.0:
        raise ValueError("delta must be in [0, 1]")
    trusted = [a for a in annotations if a.confidence > delta]
    flagged = [a for a in annotations if a.confidence <= delta]
    return DisplayPartition(trusted=trusted, flagged=flagged)


def make_feedback(annotation, text, annotator, verdict, config, timestamp=None):
    """Capture one feedback event, freezing the context bag around the span."""
    if verdict not in VERDICTS:
        raise IllegalValue(f"verdict must be one of {VERDICTS}, got {verdict!r}")
    bag = context_bag(text, annotation.start, annotation.end, config.context_window)
    return FeedbackEvent(
        annotation_id=annotation.id,
        annotator=annotator,
        verdict=verdict,
        context_bag=bag,
        timestamp=time.time() if timestamp is None else timestamp,
        cui=annotation.cui,
        learning_rate=config.learning_rate,
    )


def apply_feedback(event, state, config=None):
    """Apply one verdict: update the concept vector, mark the annotation, and
    append the event to the immutable feedback log.

    Regex-mode annotations (pseudo-CUI REGEX) record status only — there is
    no concept behind them to train.
    """
    config = config or state.config
    annotation = state.annotations.get(event.annotation_id)
    if annotation is None:
        raise UnknownAnnotation(f"unknown annotation {event.annotation_id!r}")
    if event.cui != REGEX_CUI:
        state.db.train_context(
            event.cui,
            event.context_bag,
            event.learning_rate,
            positive=event.verdict == STATUS_CORRECT,
        )
    annotation.status = event.verdict
    state.feedback_log.append(event)
    return state.db


def replay_feedback(events, db):
    """Re-apply the vector updates of a feedback log to a concept database.

    Replaying the full log against the initial database reproduces the final
    database exactly (events carry their own learning rate and cui)."""
    for event in events:
        if event.cui != REGEX_CUI:
            db.train_context(
                event.cui,
                event.context_bag,
                event.learning_rate,
                positive=event.verdict == STATUS_CORRECT,
            )
    return db


def rerun(text, db, config=None, doc_id="doc", previous=()):
    """Re-annotate under the current model state.

    Verdicts recorded on previous annotations carry over to new annotations
    with identical (start, end, cui); everything else resets to unreviewed.
    """
    fresh = annotate(text, db, config, doc_id=doc_id)
    carried = {(a.start, a.end, a.cui): a.status for a in previous}
    for a in fresh:
        status = carried.get((a.start, a.end, a.cui))
        if status is not None:
            a.status = status
    return fresh
