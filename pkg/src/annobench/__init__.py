"""annobench: a self-contained clinical-text annotation workbench.

Dictionary-based NER+L with confidence-scored annotations, an active-learning
feedback loop, configurable annotation projects with task-specific labels,
two-rater agreement analytics, and a downstream context classifier — plus a
JSON store, an HTTP API and an admin CLI.
"""

from .active import (
    DisplayPartition,
    FeedbackEvent,
    apply_feedback,
    display_filter,
    make_feedback,
    replay_feedback,
    rerun,
)
from .agreement import (
    ContingencyTable,
    build_contingency,
    cohens_kappa,
    label_counts,
    percent_agreement,
    submitted_intersection,
)
from .annotator import (
    REGEX_CUI,
    Annotation,
    AnnotatorConfig,
    annotate,
    detect_spans,
    regex_annotate,
    score,
)
from .concepts import Concept, ConceptDatabase, load_concept_csv
from .errors import WorkbenchError
from .metaclf import (
    EvalReport,
    LinearTextClassifier,
    TfidfModel,
    evaluate,
    extract_context,
    fit_tfidf,
    train,
    transform,
)
from .projects import (
    DocumentState,
    MetaAnnotation,
    MetaTask,
    Project,
    create_project,
    mark_incomplete,
    next_document,
    submit_document,
)
from .store import (
    WorkbenchState,
    export_standoff,
    import_standoff,
    ingest_documents,
    load,
    save,
)
from .text import Token, normalize, tokenize
from .workbench import Workbench

__version__ = "0.1.0"

__all__ = [
    "Annotation",
    "AnnotatorConfig",
    "Concept",
    "ConceptDatabase",
    "ContingencyTable",
    "DisplayPartition",
    "DocumentState",
    "EvalReport",
    "FeedbackEvent",
    "LinearTextClassifier",
    "MetaAnnotation",
    "MetaTask",
    "Project",
    "REGEX_CUI",
    "TfidfModel",
    "Token",
    "Workbench",
    "WorkbenchError",
    "WorkbenchState",
    "annotate",
    "apply_feedback",
    "build_contingency",
    "cohens_kappa",
    "create_project",
    "detect_spans",
    "display_filter",
    "evaluate",
    "export_standoff",
    "extract_context",
    "fit_tfidf",
    "import_standoff",
    "ingest_documents",
    "label_counts",
    "load",
    "load_concept_csv",
    "make_feedback",
    "mark_incomplete",
    "next_document",
    "normalize",
    "percent_agreement",
    "regex_annotate",
    "replay_feedback",
    "rerun",
    "save",
    "score",
    "submit_document",
    "submitted_intersection",
    "tokenize",
    "train",
    "transform",
]
