"""Annotation projects: corpora, annotator rosters, configurable meta-tasks and
the per-annotator document lifecycle (pending -> incomplete/submitted)."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    DuplicateDocId,
    EmptyCorpus,
    IllegalTransition,
    IllegalValue,
    InvalidTask,
    UnknownAnnotator,
    UnknownDocument,
)

PENDING = "pending"
INCOMPLETE = "incomplete"
SUBMITTED = "submitted"

NOT_ANNOTATED = "N/A"

LEGAL_TRANSITIONS = {
    (PENDING, INCOMPLETE),
    (PENDING, SUBMITTED),
    (INCOMPLETE, SUBMITTED),
}

NER_MODE_MODEL = "model"
NER_MODE_REGEX = "regex"


@dataclass
class MetaTask:
    """A task-specific labelling question, e.g. Temporality with values
    ["Is Historical", "Not Historical"]."""

    name: str
    values: list
    help_text: str = ""

    def __post_init__(self):
        if not self.name:
            raise InvalidTask("task name must be non-empty")
        if len(set(self.values)) < 2:
            raise InvalidTask(f"task {self.name!r} needs at least 2 distinct values")
        if NOT_ANNOTATED in self.values:
            raise InvalidTask(f"{NOT_ANNOTATED!r} is reserved for unset values")


@dataclass
class DocumentState:
    doc_id: str
    annotator: str
    status: str = PENDING


@dataclass
class MetaAnnotation:
    """One task value attached to an annotation by one annotator."""

    annotation_id: str
    task_name: str
    value: str
    annotator: str


@dataclass
class Project:
    id: str
    name: str
    document_ids: list
    annotators: set
    tasks: list
    ner_mode: str = NER_MODE_MODEL
    regex_pattern: str = None
    delta: float = None
    # (doc_id, annotator) -> lifecycle status
    states: dict = field(default_factory=dict)

    def task(self, name):
        for t in self.tasks:
            if t.name == name:
                return t
        return None


def create_project(project_id, name, document_ids, annotators, tasks,
                   ner_mode=NER_MODE_MODEL, regex_pattern=None, delta=None):
    """Validate and assemble a project; every (doc, annotator) pair starts pending."""
    document_ids = list(document_ids)
    if not document_ids:
        raise EmptyCorpus("a project needs at least one document")
    if len(set(document_ids)) != len(document_ids):
        raise DuplicateDocId("document_ids must be unique")
    annotators = set(annotators)
    if not annotators:
        raise UnknownAnnotator("a project needs at least one annotator")
    tasks = list(tasks)
    names = [t.name for t in tasks]
    if len(set(names)) != len(names):
        raise InvalidTask("task names must be unique within a project")
    if ner_mode not in (NER_MODE_MODEL, NER_MODE_REGEX):
        raise IllegalValue(f"ner_mode must be model or regex, got {ner_mode!r}")
    if ner_mode == NER_MODE_REGEX and not regex_pattern:
        raise IllegalValue("regex mode needs a pattern")
    project = Project(
        id=project_id,
        name=name,
        document_ids=document_ids,
        annotators=annotators,
        tasks=tasks,
        ner_mode=ner_mode,
        regex_pattern=regex_pattern,
        delta=delta,
    )
    for doc_id in document_ids:
        for annotator in annotators:
            project.states[(doc_id, annotator)] = PENDING
    return project


def state_of(project, doc_id, annotator):
    if annotator not in project.annotators:
        raise UnknownAnnotator(f"{annotator!r} is not on project {project.id!r}")
    status = project.states.get((doc_id, annotator))
    if status is None:
        raise UnknownDocument(f"{doc_id!r} is not in project {project.id!r}")
    return DocumentState(doc_id=doc_id, annotator=annotator, status=status)


def _transition(project, doc_id, annotator, target):
    current = state_of(project, doc_id, annotator).status
    if (current, target) not in LEGAL_TRANSITIONS:
        raise IllegalTransition(
            f"{doc_id!r}/{annotator!r}: cannot go {current} -> {target}"
        )
    project.states[(doc_id, annotator)] = target
    return DocumentState(doc_id=doc_id, annotator=annotator, status=target)


def submit_document(project, doc_id, annotator):
    """Mark a document complete for one annotator. Submitted is terminal."""
    return _transition(project, doc_id, annotator, SUBMITTED)


def mark_incomplete(project, doc_id, annotator):
    """Park a document to be revisited later; it re-enters the queue after all
    pending documents are exhausted."""
    return _transition(project, doc_id, annotator, INCOMPLETE)


def next_document(project, annotator):
    """First pending document in project order; incomplete ones once pending is
    drained; None when everything is submitted."""
    if annotator not in project.annotators:
        raise UnknownAnnotator(f"{annotator!r} is not on project {project.id!r}")
    for wanted in (PENDING, INCOMPLETE):
        for doc_id in project.document_ids:
            if project.states[(doc_id, annotator)] == wanted:
                return doc_id
    return None


def remaining_count(project, annotator):
    """Documents not yet submitted by this annotator."""
    if annotator not in project.annotators:
        raise UnknownAnnotator(f"{annotator!r} is not on project {project.id!r}")
    return sum(
        1 for doc_id in project.document_ids
        if project.states[(doc_id, annotator)] != SUBMITTED
    )


def validate_meta_value(task, value):
    if value not in task.values:
        raise IllegalValue(
            f"{value!r} is not a value of task {task.name!r} ({task.values})"
        )
