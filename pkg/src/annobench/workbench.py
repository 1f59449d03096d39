"""In-process service facade.

Every workflow the HTTP API and the CLI expose is a method here, so both
surfaces are thin adapters over identical behavior. All mutations serialize
through one re-entrant lock (the store's single-writer contract); reads take
the same lock and therefore always see a consistent snapshot.
"""

from __future__ import annotations

import csv
import threading
import uuid

from . import active, agreement, metaclf, projects, store
from .annotator import AnnotatorConfig, annotate, regex_annotate
from .errors import (
    EmptyTable,
    UnknownAnnotation,
    UnknownDocument,
    UnknownProject,
    UnknownTask,
)
from .projects import (
    MetaAnnotation,
    MetaTask,
    NER_MODE_MODEL,
    NER_MODE_REGEX,
    NOT_ANNOTATED,
)


class Workbench:
    def __init__(self, state=None, store_path=None):
        self.state = state if state is not None else store.WorkbenchState()
        self.store_path = store_path
        self._lock = threading.RLock()
        self._jobs = {}

    @classmethod
    def open(cls, store_path):
        """Attach to a store file, loading it when present."""
        import os

        state = store.load(store_path) if os.path.exists(store_path) else None
        return cls(state=state, store_path=store_path)

    def commit(self):
        if self.store_path:
            store.save(self.state, self.store_path)

    # ------------------------------------------------------------- concepts

    def load_concepts(self, csv_path):
        from .concepts import load_concept_csv

        with self._lock:
            self.state.db = load_concept_csv(csv_path)
            return len(self.state.db.concepts)

    def add_concept(self, cui, name, synonyms=(), context_example=None):
        with self._lock:
            cfg = self.state.config
            return self.state.db.add_concept(
                cui, name, synonyms, context_example,
                context_window=cfg.context_window,
                learning_rate=cfg.learning_rate,
            )

    # ------------------------------------------------------------ documents

    def ingest(self, source):
        with self._lock:
            return store.ingest_documents(self.state, source)

    def add_documents(self, mapping):
        """Register in-memory documents (id -> text)."""
        from .errors import DuplicateDocId

        with self._lock:
            for doc_id in mapping:
                if doc_id in self.state.documents:
                    raise DuplicateDocId(f"document id {doc_id!r} already exists")
            self.state.documents.update(mapping)
            return sorted(mapping)

    def document_text(self, doc_id):
        with self._lock:
            if doc_id not in self.state.documents:
                raise UnknownDocument(f"unknown document {doc_id!r}")
            return self.state.documents[doc_id]

    # ------------------------------------------------------------- projects

    def create_project(self, name, document_ids, annotators, tasks,
                       ner_mode=NER_MODE_MODEL, regex_pattern=None, delta=None):
        with self._lock:
            document_ids = list(document_ids)
            for doc_id in document_ids:
                if doc_id not in self.state.documents:
                    raise UnknownDocument(f"unknown document {doc_id!r}")
            tasks = [t if isinstance(t, MetaTask) else
                     MetaTask(t["name"], list(t["values"]), t.get("help_text", ""))
                     for t in tasks]
            project_id = f"p{len(self.state.projects) + 1}"
            project = projects.create_project(
                project_id, name, document_ids, annotators, tasks,
                ner_mode=ner_mode, regex_pattern=regex_pattern, delta=delta,
            )
            self.state.projects[project_id] = project
            return project

    def get_project(self, project_id):
        with self._lock:
            project = self.state.projects.get(project_id)
            if project is None:
                raise UnknownProject(f"unknown project {project_id!r}")
            return project

    def list_projects(self):
        with self._lock:
            return sorted(self.state.projects.values(), key=lambda p: p.id)

    def config_for(self, project):
        cfg = self.state.config
        if project.delta is None:
            return cfg
        return AnnotatorConfig(
            context_window=cfg.context_window,
            delta=project.delta,
            learning_rate=cfg.learning_rate,
            spell_enabled=cfg.spell_enabled,
        )

    # ------------------------------------------------------------ annotation

    def _run_annotator(self, project, doc_id):
        text = self.state.documents[doc_id]
        if project.ner_mode == NER_MODE_REGEX:
            return regex_annotate(text, project.regex_pattern, doc_id=doc_id)
        return annotate(text, self.state.db, self.config_for(project), doc_id=doc_id)

    def annotate_document(self, project_id, doc_id, force=False):
        """Annotations for one document, computing and storing them when the
        document has none yet (or always, with force=True — rerun semantics:
        verdicts carry over to unchanged (span, cui) annotations)."""
        with self._lock:
            project = self.get_project(project_id)
            if doc_id not in self.state.documents:
                raise UnknownDocument(f"unknown document {doc_id!r}")
            existing = self.state.doc_annotations(doc_id)
            if existing and not force:
                return existing
            fresh = self._run_annotator(project, doc_id)
            carried = {(a.start, a.end, a.cui): a.status for a in existing}
            for ann in fresh:
                status = carried.get((ann.start, ann.end, ann.cui))
                if status is not None:
                    ann.status = status
            for ann in existing:
                del self.state.annotations[ann.id]
            for ann in fresh:
                self.state.annotations[ann.id] = ann
            return fresh

    def batch_annotate(self, project_id, force=False):
        """Annotate every document of a project; returns the annotation count."""
        with self._lock:
            project = self.get_project(project_id)
            total = 0
            for doc_id in project.document_ids:
                total += len(self.annotate_document(project_id, doc_id, force=force))
            return total

    def next_document(self, project_id, annotator):
        """The next document for an annotator with its display partition, or
        None when the queue is drained. Returns (doc_id, text, partition,
        remaining)."""
        with self._lock:
            project = self.get_project(project_id)
            doc_id = projects.next_document(project, annotator)
            if doc_id is None:
                return None
            annotations = self.annotate_document(project_id, doc_id)
            partition = active.display_filter(
                annotations, self.config_for(project).delta)
            return (
                doc_id,
                self.state.documents[doc_id],
                partition,
                projects.remaining_count(project, annotator),
            )

    # -------------------------------------------------------------- feedback

    def _annotation(self, annotation_id):
        ann = self.state.annotations.get(annotation_id)
        if ann is None:
            raise UnknownAnnotation(f"unknown annotation {annotation_id!r}")
        return ann

    def feedback(self, annotation_id, verdict, annotator):
        """Record one tick/cross verdict and fold it into the model."""
        with self._lock:
            ann = self._annotation(annotation_id)
            event = active.make_feedback(
                ann,
                self.state.documents[ann.doc_id],
                annotator,
                verdict,
                self.state.config,
            )
            active.apply_feedback(event, self.state)
            return ann

    def rerun_document(self, doc_id, project_id=None):
        """Re-annotate one document under the current model state."""
        with self._lock:
            if doc_id not in self.state.documents:
                raise UnknownDocument(f"unknown document {doc_id!r}")
            if project_id is None:
                owners = [p.id for p in self.list_projects()
                          if doc_id in p.document_ids]
                if not owners:
                    raise UnknownProject(f"no project contains {doc_id!r}")
                project_id = owners[0]
            return self.annotate_document(project_id, doc_id, force=True)

    # ------------------------------------------------------ meta-annotations

    def _task(self, project, task_name):
        task = project.task(task_name)
        if task is None:
            raise UnknownTask(f"project {project.id!r} has no task {task_name!r}")
        return task

    def record_meta_annotation(self, annotation_id, task_name, value, annotator):
        """Upsert one task value for one annotation and annotator."""
        with self._lock:
            ann = self._annotation(annotation_id)
            task = None
            for project in self.state.projects.values():
                candidate = project.task(task_name)
                if candidate is not None and ann.doc_id in set(project.document_ids):
                    task = candidate
                    break
            if task is None:
                raise UnknownTask(f"no project of {ann.doc_id!r} has task {task_name!r}")
            projects.validate_meta_value(task, value)
            self.state.meta[(annotation_id, task_name, annotator)] = value
            return MetaAnnotation(annotation_id, task_name, value, annotator)

    def meta_value(self, annotation_id, task_name, annotator):
        with self._lock:
            return self.state.meta.get(
                (annotation_id, task_name, annotator), NOT_ANNOTATED)

    def incomplete_meta(self, project_id, annotator):
        """(annotation_id, task) pairs still at N/A over submitted documents."""
        with self._lock:
            project = self.get_project(project_id)
            missing = []
            for doc_id in project.document_ids:
                if project.states[(doc_id, annotator)] != projects.SUBMITTED:
                    continue
                for ann in self.state.doc_annotations(doc_id):
                    for task in project.tasks:
                        if (ann.id, task.name, annotator) not in self.state.meta:
                            missing.append((ann.id, task.name))
            return missing

    # ------------------------------------------------------------- lifecycle

    def submit(self, project_id, doc_id, annotator):
        with self._lock:
            return projects.submit_document(
                self.get_project(project_id), doc_id, annotator)

    def incomplete(self, project_id, doc_id, annotator):
        with self._lock:
            return projects.mark_incomplete(
                self.get_project(project_id), doc_id, annotator)

    # ------------------------------------------------------------- analytics

    def _aligned_items(self, project, rater1, rater2, task_name):
        """Aligned (label1, label2) pairs over the submitted intersection,
        dropping items where either rater left N/A."""
        docs = agreement.submitted_intersection(project, rater1, rater2)
        ids = []
        pairs = []
        for doc_id in project.document_ids:
            if doc_id not in docs:
                continue
            for ann in self.state.doc_annotations(doc_id):
                v1 = self.state.meta.get((ann.id, task_name, rater1))
                v2 = self.state.meta.get((ann.id, task_name, rater2))
                if v1 is None or v2 is None:
                    continue
                ids.append(ann.id)
                pairs.append((v1, v2))
        return docs, ids, pairs

    def agreement_report(self, project_id, rater1, rater2, task_name):
        """The JSON agreement report: document/item counts, per-rater label
        counts over the intersection, percent agreement and kappa."""
        with self._lock:
            project = self.get_project(project_id)
            self._task(project, task_name)
            docs, ids, pairs = self._aligned_items(project, rater1, rater2, task_name)
            if not pairs:
                raise EmptyTable("no aligned items for these raters and task")
            table = agreement.build_contingency(
                [a for a, _ in pairs], [b for _, b in pairs])
            id_set = set(ids)
            return {
                "project": project.id,
                "task": task_name,
                "raters": [rater1, rater2],
                "n_documents": len(docs),
                "n_items": len(pairs),
                "per_label_counts": {
                    rater1: self.label_counts(project_id, rater1, task_name,
                                              annotation_ids=id_set),
                    rater2: self.label_counts(project_id, rater2, task_name,
                                              annotation_ids=id_set),
                },
                "percent_agreement": agreement.percent_agreement(table),
                "kappa": agreement.cohens_kappa(table),
                "contingency": table.to_dict(),
            }

    def label_counts(self, project_id, rater, task_name, annotation_ids=None):
        with self._lock:
            project = self.get_project(project_id)
            if rater not in project.annotators:
                from .errors import UnknownAnnotator

                raise UnknownAnnotator(f"{rater!r} is not on project {project_id!r}")
            metas = [
                MetaAnnotation(ann_id, task, value, annotator)
                for (ann_id, task, annotator), value in self.state.meta.items()
            ]
            return agreement.label_counts(metas, rater, task_name, annotation_ids)

    # -------------------------------------------------------- meta-classifier

    def _training_items(self, project, task_name, window):
        """(context_text, label) rows: one per annotation whose recorded values
        for the task agree across annotators (single-annotator values count)."""
        rows = []
        for doc_id in project.document_ids:
            text = self.state.documents[doc_id]
            for ann in self.state.doc_annotations(doc_id):
                values = {
                    value
                    for (ann_id, task, _annotator), value in self.state.meta.items()
                    if ann_id == ann.id and task == task_name
                }
                if len(values) != 1:
                    continue
                rows.append((metaclf.extract_context(text, ann, window), values.pop()))
        return rows

    def train_meta(self, project_id, task_name, window=7, seed=13):
        """Fit the context classifier for one task; returns (report, job_id)."""
        with self._lock:
            project = self.get_project(project_id)
            task = self._task(project, task_name)
            rows = self._training_items(project, task_name, window)
            job_id = uuid.uuid4().hex[:12]
        texts = [t for t, _ in rows]
        labels = [l for _, l in rows]
        if not rows:
            from .errors import TooFewItems

            raise TooFewItems("no labelled items for this task")
        model = metaclf.fit_tfidf(texts)
        features = metaclf.transform_many(model, texts)
        _classifier, report = metaclf.train(
            features, labels, seed=seed, positive_class=task.values[0])
        with self._lock:
            self._jobs[job_id] = {"status": "done", "result": report.to_dict(),
                                  "task": task_name, "project": project_id}
        return report, job_id

    def job(self, job_id):
        with self._lock:
            return self._jobs.get(job_id)

    def export_training_csv(self, project_id, task_name, path, window=7):
        """CSV doc_id,annotation_id,context_text,label so labels can feed
        external ML stacks."""
        with self._lock:
            project = self.get_project(project_id)
            self._task(project, task_name)
            with open(path, "w", encoding="utf-8", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(["doc_id", "annotation_id", "context_text", "label"])
                count = 0
                for doc_id in project.document_ids:
                    text = self.state.documents[doc_id]
                    for ann in self.state.doc_annotations(doc_id):
                        values = {
                            value
                            for (ann_id, task, _a), value in self.state.meta.items()
                            if ann_id == ann.id and task == task_name
                        }
                        if len(values) != 1:
                            continue
                        writer.writerow([
                            doc_id, ann.id,
                            metaclf.extract_context(text, ann, window),
                            values.pop(),
                        ])
                        count += 1
            return count

    # ---------------------------------------------------------------- export

    def export_standoff(self, project_id, annotator):
        with self._lock:
            return store.export_standoff(self.state, project_id, annotator)

    def export_standoff_json(self, project_id, annotator):
        with self._lock:
            return store.export_standoff_json(self.state, project_id, annotator)
