"""Durable persistence and portable export.

The on-disk store is one versioned JSON file written atomically; the portable
interchange format is the standoff JSON export, whose schema is normative:

    {"project": str, "annotator": str, "documents": [
        {"id": str, "text": str, "entities": [
            {"id": str, "start": int, "end": int, "cui": str, "text": str,
             "confidence": float, "status": "unreviewed|correct|incorrect",
             "meta": {task: value}}],
         "state": "pending|incomplete|submitted"}]}

All writes funnel through one writer with an atomic file replace per save;
readers get snapshot views.
"""

from __future__ import annotations

import csv
import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from .active import FeedbackEvent
from .annotator import Annotation, AnnotatorConfig
from .concepts import ConceptDatabase
from .errors import (
    CorruptFile,
    DuplicateDocId,
    IntegrityError,
    MalformedRow,
    UnknownAnnotator,
    UnknownProject,
    VersionMismatch,
)
from .projects import MetaTask, Project

FORMAT_VERSION = 1


@dataclass
class WorkbenchState:
    """Everything the workbench owns: referential integrity is an invariant
    (see validate)."""

    db: ConceptDatabase = field(default_factory=ConceptDatabase)
    documents: dict = field(default_factory=dict)      # doc_id -> text
    projects: dict = field(default_factory=dict)       # project_id -> Project
    annotations: dict = field(default_factory=dict)    # annotation_id -> Annotation
    meta: dict = field(default_factory=dict)           # (annotation_id, task, annotator) -> value
    feedback_log: list = field(default_factory=list)
    config: AnnotatorConfig = field(default_factory=AnnotatorConfig)

    def doc_annotations(self, doc_id):
        """Annotations of one document in start order."""
        anns = [a for a in self.annotations.values() if a.doc_id == doc_id]
        return sorted(anns, key=lambda a: (a.start, a.end, a.id))


def validate(state):
    """Referential-integrity pass; raises IntegrityError on the first violation."""
    from .annotator import REGEX_CUI

    for ann in state.annotations.values():
        if ann.doc_id not in state.documents:
            raise IntegrityError(f"annotation {ann.id!r} references missing document {ann.doc_id!r}")
        if ann.cui != REGEX_CUI and ann.cui not in state.db.concepts:
            raise IntegrityError(f"annotation {ann.id!r} references missing cui {ann.cui!r}")
    task_names = {t.name for p in state.projects.values() for t in p.tasks}
    for (ann_id, task_name, _annotator), _value in state.meta.items():
        if ann_id not in state.annotations:
            raise IntegrityError(f"meta value references missing annotation {ann_id!r}")
        # standoff imports may land meta in a project-less state; the task
        # check applies once any tasks are configured
        if task_names and task_name not in task_names:
            raise IntegrityError(f"meta value references unknown task {task_name!r}")
    for event in state.feedback_log:
        if event.annotation_id not in state.annotations:
            raise IntegrityError(
                f"feedback event references missing annotation {event.annotation_id!r}"
            )
    for project in state.projects.values():
        for doc_id in project.document_ids:
            if doc_id not in state.documents:
                raise IntegrityError(
                    f"project {project.id!r} references missing document {doc_id!r}"
                )


# ---------------------------------------------------------------- save / load

def _bag_pairs(bag):
    return [[t, c] for t, c in bag.items()]  # keep insertion order for replay


def state_to_payload(state):
    return {
        "version": FORMAT_VERSION,
        "config": {
            "context_window": state.config.context_window,
            "delta": state.config.delta,
            "learning_rate": state.config.learning_rate,
            "spell_enabled": state.config.spell_enabled,
        },
        "concepts": {
            "vocabulary": [[t, i] for t, i in state.db.vocabulary.items()],
            "entries": [
                {
                    "cui": c.cui,
                    "preferred_name": c.preferred_name,
                    "synonyms": sorted(c.synonyms),
                    "context_vector": sorted([int(i), v] for i, v in c.context_vector.items()),
                    "train_count": c.train_count,
                }
                for c in sorted(state.db.concepts.values(), key=lambda c: c.cui)
            ],
        },
        "documents": [[doc_id, state.documents[doc_id]] for doc_id in sorted(state.documents)],
        "projects": [
            {
                "id": p.id,
                "name": p.name,
                "document_ids": list(p.document_ids),
                "annotators": sorted(p.annotators),
                "tasks": [
                    {"name": t.name, "values": list(t.values), "help_text": t.help_text}
                    for t in p.tasks
                ],
                "ner_mode": p.ner_mode,
                "regex_pattern": p.regex_pattern,
                "delta": p.delta,
                "states": sorted([d, a, s] for (d, a), s in p.states.items()),
            }
            for p in sorted(state.projects.values(), key=lambda p: p.id)
        ],
        "annotations": [
            a.to_dict() for a in sorted(
                state.annotations.values(), key=lambda a: (a.doc_id, a.start, a.end, a.id)
            )
        ],
        "meta": sorted([ann_id, task, annotator, value]
                       for (ann_id, task, annotator), value in state.meta.items()),
        "feedback_log": [
            {
                "annotation_id": e.annotation_id,
                "annotator": e.annotator,
                "verdict": e.verdict,
                "context_bag": _bag_pairs(e.context_bag),
                "timestamp": e.timestamp,
                "cui": e.cui,
                "learning_rate": e.learning_rate,
            }
            for e in state.feedback_log
        ],
    }


def payload_to_state(payload):
    config = AnnotatorConfig(**payload["config"])
    db = ConceptDatabase()
    db.vocabulary = {t: int(i) for t, i in payload["concepts"]["vocabulary"]}
    for entry in payload["concepts"]["entries"]:
        concept = db.add_concept(entry["cui"], entry["preferred_name"],
                                 entry["synonyms"])
        concept.context_vector = {int(i): float(v) for i, v in entry["context_vector"]}
        concept.train_count = int(entry["train_count"])
    state = WorkbenchState(db=db, config=config)
    state.documents = {doc_id: text for doc_id, text in payload["documents"]}
    for p in payload["projects"]:
        project = Project(
            id=p["id"],
            name=p["name"],
            document_ids=list(p["document_ids"]),
            annotators=set(p["annotators"]),
            tasks=[MetaTask(t["name"], list(t["values"]), t.get("help_text", ""))
                   for t in p["tasks"]],
            ner_mode=p["ner_mode"],
            regex_pattern=p.get("regex_pattern"),
            delta=p.get("delta"),
        )
        project.states = {(d, a): s for d, a, s in p["states"]}
        state.projects[project.id] = project
    for a in payload["annotations"]:
        ann = Annotation(
            id=a["id"], doc_id=a["doc_id"], start=int(a["start"]), end=int(a["end"]),
            matched_text=a["text"], cui=a["cui"], confidence=float(a["confidence"]),
            candidates=set(a["candidates"]), status=a["status"],
        )
        state.annotations[ann.id] = ann
    state.meta = {(m[0], m[1], m[2]): m[3] for m in payload["meta"]}
    state.feedback_log = [
        FeedbackEvent(
            annotation_id=e["annotation_id"],
            annotator=e["annotator"],
            verdict=e["verdict"],
            context_bag={t: c for t, c in e["context_bag"]},
            timestamp=float(e["timestamp"]),
            cui=e["cui"],
            learning_rate=float(e["learning_rate"]),
        )
        for e in payload["feedback_log"]
    ]
    return state


def save(state, path):
    """Serialize the full state, replacing `path` atomically."""
    payload = state_to_payload(state)
    path = Path(path)
    data = json.dumps(payload, indent=2, ensure_ascii=False)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load(path):
    """Rebuild a state from a save() file. Raises CorruptFile (with the byte
    offset of the first problem) or VersionMismatch."""
    raw = Path(path).read_text("utf-8")
    try:
        payload = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise CorruptFile(exc.pos) from None
    if not isinstance(payload, dict) or "version" not in payload:
        raise CorruptFile(0, "missing version field")
    if payload["version"] != FORMAT_VERSION:
        raise VersionMismatch(
            f"store format {payload['version']!r}, expected {FORMAT_VERSION}"
        )
    try:
        state = payload_to_state(payload)
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptFile(0, f"bad store structure: {exc}") from None
    validate(state)
    return state


# ------------------------------------------------------------ standoff export

def export_standoff(state, project_id, annotator):
    """Standoff JSON for one (project, annotator); deterministic key and item
    order, offsets are character offsets into the stored document text."""
    project = state.projects.get(project_id)
    if project is None:
        raise UnknownProject(f"unknown project {project_id!r}")
    if annotator not in project.annotators:
        raise UnknownAnnotator(f"{annotator!r} is not on project {project_id!r}")
    documents = []
    for doc_id in project.document_ids:
        entities = []
        for ann in state.doc_annotations(doc_id):
            meta = {}
            for task in project.tasks:
                value = state.meta.get((ann.id, task.name, annotator))
                if value is not None:
                    meta[task.name] = value
            entities.append({
                "id": ann.id,
                "start": ann.start,
                "end": ann.end,
                "cui": ann.cui,
                "text": ann.matched_text,
                "confidence": ann.confidence,
                "status": ann.status,
                "meta": meta,
            })
        documents.append({
            "id": doc_id,
            "text": state.documents[doc_id],
            "entities": entities,
            "state": project.states[(doc_id, annotator)],
        })
    return {"project": project.id, "annotator": annotator, "documents": documents}


def export_standoff_json(state, project_id, annotator):
    """Byte-deterministic rendering of export_standoff."""
    return json.dumps(export_standoff(state, project_id, annotator),
                      indent=2, ensure_ascii=False)


def import_standoff(state, payload):
    """Recreate documents, annotations and meta values from an export payload.
    Returns the imported document ids."""
    annotator = payload["annotator"]
    for doc in payload["documents"]:
        state.documents.setdefault(doc["id"], doc["text"])
        for e in doc["entities"]:
            ann = Annotation(
                id=e["id"], doc_id=doc["id"], start=int(e["start"]), end=int(e["end"]),
                matched_text=e["text"], cui=e["cui"], confidence=float(e["confidence"]),
                candidates={e["cui"]}, status=e["status"],
            )
            state.annotations[ann.id] = ann
            for task_name, value in e["meta"].items():
                state.meta[(ann.id, task_name, annotator)] = value
    return [doc["id"] for doc in payload["documents"]]


# ------------------------------------------------------------------ ingestion

def ingest_documents(state, source):
    """Load documents verbatim from a directory of text files (filename =
    doc_id) or a ``doc_id,text`` CSV. Empty documents are accepted."""
    path = Path(source)
    new = {}

    def put(doc_id, text):
        if doc_id in state.documents or doc_id in new:
            raise DuplicateDocId(f"document id {doc_id!r} already exists")
        new[doc_id] = text

    if path.is_dir():
        for child in sorted(p for p in path.iterdir() if p.is_file()):
            put(child.name, child.read_text("utf-8"))
    else:
        with open(path, encoding="utf-8", newline="") as fh:
            for line_no, row in enumerate(csv.reader(fh), start=1):
                if not row:
                    continue
                if line_no == 1 and [c.strip().lower() for c in row] == ["doc_id", "text"]:
                    continue
                if len(row) != 2:
                    raise MalformedRow(line_no)
                put(row[0], row[1])
    state.documents.update(new)
    return list(new)
