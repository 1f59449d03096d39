"""HTTP service: every UI workflow as a thin JSON adapter over the Workbench.

The service is stateless between requests apart from the store; write
endpoints serialize through the workbench's single writer.
"""

from __future__ import annotations

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .errors import IllegalValue, WorkbenchError
from .workbench import Workbench


class TaskBody(BaseModel):
    name: str
    values: list
    help_text: str = ""


class ProjectBody(BaseModel):
    name: str
    documents: list
    annotators: list
    tasks: list[TaskBody] = []
    ner_mode: str = "model"
    regex_pattern: str | None = None
    delta: float | None = None


class FeedbackBody(BaseModel):
    verdict: str
    annotator: str = "anonymous"


class ConceptBody(BaseModel):
    cui: str
    name: str
    synonyms: list = []
    context_example: str | None = None


class MetaBody(BaseModel):
    task: str
    value: str
    annotator: str


class LifecycleBody(BaseModel):
    project: str
    annotator: str


class RerunBody(BaseModel):
    project: str | None = None


class TrainMetaBody(BaseModel):
    task: str
    window: int = 7
    seed: int = 13


def project_json(project):
    return {
        "id": project.id,
        "name": project.name,
        "documents": list(project.document_ids),
        "annotators": sorted(project.annotators),
        "tasks": [
            {"name": t.name, "values": list(t.values), "help_text": t.help_text}
            for t in project.tasks
        ],
        "ner_mode": project.ner_mode,
        "regex_pattern": project.regex_pattern,
        "delta": project.delta,
    }


def partition_json(partition):
    return {
        "trusted": [a.to_dict() for a in partition.trusted],
        "flagged": [a.to_dict() for a in partition.flagged],
    }


def create_app(workbench: Workbench, ui_dir=None) -> FastAPI:
    """API app; pass ui_dir to also serve the built browser client at /."""
    app = FastAPI(title="annobench")
    app.state.workbench = workbench

    @app.exception_handler(WorkbenchError)
    async def _domain_error(_request: Request, exc: WorkbenchError):
        return JSONResponse(
            status_code=exc.http_status,
            content={"code": exc.code, "message": exc.message},
        )

    @app.post("/api/projects", status_code=201)
    def create_project(body: ProjectBody):
        project = workbench.create_project(
            body.name,
            body.documents,
            body.annotators,
            [t.model_dump() for t in body.tasks],
            ner_mode=body.ner_mode,
            regex_pattern=body.regex_pattern,
            delta=body.delta,
        )
        workbench.commit()
        return project_json(project)

    @app.get("/api/projects")
    def list_projects():
        return [project_json(p) for p in workbench.list_projects()]

    @app.get("/api/projects/{project_id}")
    def get_project(project_id: str):
        return project_json(workbench.get_project(project_id))

    @app.get("/api/projects/{project_id}/next")
    def next_document(project_id: str, annotator: str):
        result = workbench.next_document(project_id, annotator)
        if result is None:
            return Response(status_code=204)
        doc_id, text, partition, remaining = result
        workbench.commit()
        return {
            "doc_id": doc_id,
            "text": text,
            "annotations": partition_json(partition),
            "remaining": remaining,
        }

    @app.post("/api/annotations/{annotation_id}/feedback")
    def feedback(annotation_id: str, body: FeedbackBody):
        ann = workbench.feedback(annotation_id, body.verdict, body.annotator)
        workbench.commit()
        return ann.to_dict()

    @app.post("/api/documents/{doc_id}/rerun")
    def rerun(doc_id: str, body: RerunBody | None = None):
        project_id = body.project if body else None
        annotations = workbench.rerun_document(doc_id, project_id)
        workbench.commit()
        return {"doc_id": doc_id, "annotations": [a.to_dict() for a in annotations]}

    @app.post("/api/concepts")
    def add_concept(body: ConceptBody):
        concept = workbench.add_concept(
            body.cui, body.name, body.synonyms, body.context_example)
        workbench.commit()
        return {
            "cui": concept.cui,
            "preferred_name": concept.preferred_name,
            "synonyms": sorted(concept.synonyms),
            "train_count": concept.train_count,
        }

    @app.post("/api/annotations/{annotation_id}/meta")
    def record_meta(annotation_id: str, body: MetaBody):
        meta = workbench.record_meta_annotation(
            annotation_id, body.task, body.value, body.annotator)
        workbench.commit()
        return {
            "annotation_id": meta.annotation_id,
            "task": meta.task_name,
            "value": meta.value,
            "annotator": meta.annotator,
        }

    @app.post("/api/documents/{doc_id}/submit")
    def submit(doc_id: str, body: LifecycleBody):
        state = workbench.submit(body.project, doc_id, body.annotator)
        workbench.commit()
        return {"doc_id": doc_id, "annotator": state.annotator, "status": state.status}

    @app.post("/api/documents/{doc_id}/incomplete")
    def incomplete(doc_id: str, body: LifecycleBody):
        state = workbench.incomplete(body.project, doc_id, body.annotator)
        workbench.commit()
        return {"doc_id": doc_id, "annotator": state.annotator, "status": state.status}

    @app.get("/api/projects/{project_id}/agreement")
    def agreement(project_id: str, r1: str, r2: str, task: str):
        return workbench.agreement_report(project_id, r1, r2, task)

    @app.post("/api/projects/{project_id}/train-meta")
    def train_meta(project_id: str, body: TrainMetaBody):
        report, job_id = workbench.train_meta(
            project_id, body.task, window=body.window, seed=body.seed)
        return {"job_id": job_id, "status": "done", "report": report.to_dict()}

    @app.get("/api/jobs/{job_id}")
    def job_status(job_id: str):
        job = workbench.job(job_id)
        if job is None:
            return JSONResponse(status_code=404, content={
                "code": "UnknownJob", "message": f"unknown job {job_id!r}"})
        return job

    @app.get("/api/projects/{project_id}/export")
    def export(project_id: str, annotator: str):
        return workbench.export_standoff(project_id, annotator)

    @app.post("/api/documents")
    def ingest_inline(body: dict):
        # {"documents": {doc_id: text}} convenience for the UI and tests
        docs = body.get("documents")
        if not isinstance(docs, dict):
            raise IllegalValue("body must carry a documents object")
        ingested = workbench.add_documents(docs)
        workbench.commit()
        return {"ingested": ingested}

    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
