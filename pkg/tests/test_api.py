import pytest
from fastapi.testclient import TestClient

from annobench.api import create_app
from annobench.store import load
from annobench.workbench import Workbench

TEMPORALITY = {"name": "Temporality", "values": ["Is Historical", "Not Historical"]}


@pytest.fixture
def wb():
    workbench = Workbench()
    workbench.add_documents({
        "d1": "patient had a seizure today",
        "d2": "history of seizures noted",
    })
    workbench.add_concept("C001", "seizure", ["seizures"])
    return workbench


@pytest.fixture
def client(wb):
    return TestClient(create_app(wb))


def make_project(client, docs=("d1", "d2"), annotators=("r1",), **extra):
    body = {"name": "demo", "documents": list(docs),
            "annotators": list(annotators), "tasks": [TEMPORALITY]}
    body.update(extra)
    response = client.post("/api/projects", json=body)
    assert response.status_code == 201, response.text
    return response.json()


class TestProjects:
    def test_create_returns_201_with_id(self, client):
        project = make_project(client)
        assert project["id"] == "p1"
        assert project["tasks"][0]["values"] == ["Is Historical", "Not Historical"]

    def test_list_empty(self, client):
        assert client.get("/api/projects").json() == []

    def test_get_unknown_is_404(self, client):
        response = client.get("/api/projects/nope")
        assert response.status_code == 404
        assert response.json()["code"] == "UnknownProject"

    def test_invalid_task_is_400(self, client):
        response = client.post("/api/projects", json={
            "name": "bad", "documents": ["d1"], "annotators": ["r1"],
            "tasks": [{"name": "T", "values": ["only"]}]})
        assert response.status_code == 400
        assert response.json()["code"] == "InvalidTask"


class TestNextDocument:
    def test_remaining_countdown_and_exhaustion(self, client):
        project = make_project(client)
        response = client.get(f"/api/projects/{project['id']}/next",
                              params={"annotator": "r1"})
        payload = response.json()
        assert payload["doc_id"] == "d1"
        assert payload["remaining"] == 2
        assert len(payload["annotations"]["trusted"]) == 1
        client.post("/api/documents/d1/submit",
                    json={"project": project["id"], "annotator": "r1"})
        payload = client.get(f"/api/projects/{project['id']}/next",
                             params={"annotator": "r1"}).json()
        assert payload["doc_id"] == "d2"
        assert payload["remaining"] == 1
        client.post("/api/documents/d2/submit",
                    json={"project": project["id"], "annotator": "r1"})
        response = client.get(f"/api/projects/{project['id']}/next",
                              params={"annotator": "r1"})
        assert response.status_code == 204

    def test_unknown_annotator_404(self, client):
        project = make_project(client)
        response = client.get(f"/api/projects/{project['id']}/next",
                              params={"annotator": "ghost"})
        assert response.status_code == 404


class TestFeedback:
    def setup_ambiguous(self, client):
        client.post("/api/documents", json={
            "documents": {"amb": "ra with joint pain and stiffness today"}})
        for cui, example in (("C100", "ra joint pain stiffness morning"),
                             ("C200", "ra today flare")):
            response = client.post("/api/concepts", json={
                "cui": cui, "name": "ra", "context_example": example})
            assert response.status_code == 200
        return make_project(client, docs=("amb",))

    def test_tick_sets_status(self, client):
        project = make_project(client)
        payload = client.get(f"/api/projects/{project['id']}/next",
                             params={"annotator": "r1"}).json()
        ann = payload["annotations"]["trusted"][0]
        response = client.post(f"/api/annotations/{ann['id']}/feedback",
                               json={"verdict": "correct", "annotator": "r1"})
        assert response.status_code == 200
        assert response.json()["status"] == "correct"

    def test_cross_then_rerun_swaps_cui(self, client):
        project = self.setup_ambiguous(client)
        payload = client.get(f"/api/projects/{project['id']}/next",
                             params={"annotator": "r1"}).json()
        anns = payload["annotations"]["trusted"] + payload["annotations"]["flagged"]
        (ann,) = anns
        assert ann["cui"] == "C100"
        client.post(f"/api/annotations/{ann['id']}/feedback",
                    json={"verdict": "incorrect", "annotator": "r1"})
        response = client.post("/api/documents/amb/rerun",
                               json={"project": project["id"]})
        fresh = response.json()["annotations"]
        assert [a["cui"] for a in fresh] == ["C200"]

    def test_bad_verdict_400(self, client):
        project = make_project(client)
        payload = client.get(f"/api/projects/{project['id']}/next",
                             params={"annotator": "r1"}).json()
        ann = payload["annotations"]["trusted"][0]
        response = client.post(f"/api/annotations/{ann['id']}/feedback",
                               json={"verdict": "maybe", "annotator": "r1"})
        assert response.status_code == 400

    def test_unknown_annotation_404(self, client):
        response = client.post("/api/annotations/ghost/feedback",
                               json={"verdict": "correct", "annotator": "r1"})
        assert response.status_code == 404


class TestConcepts:
    def test_add_then_rerun_matches_new_name(self, client):
        make_project(client)
        response = client.post("/api/concepts", json={
            "cui": "C555", "name": "fatigue"})
        assert response.status_code == 200
        client.post("/api/documents", json={"documents": {"d9": "severe fatigue"}})
        project2 = client.post("/api/projects", json={
            "name": "two", "documents": ["d9"], "annotators": ["r1"],
            "tasks": []}).json()
        payload = client.get(f"/api/projects/{project2['id']}/next",
                             params={"annotator": "r1"}).json()
        spans = payload["annotations"]["trusted"]
        assert [s["cui"] for s in spans] == ["C555"]

    def test_merge_into_existing(self, client):
        response = client.post("/api/concepts", json={
            "cui": "C001", "name": "fit"})
        assert response.status_code == 200
        assert "fit" in response.json()["synonyms"]

    def test_empty_name_400(self, client):
        response = client.post("/api/concepts", json={"cui": "C9", "name": ""})
        assert response.status_code == 400
        assert response.json()["code"] == "EmptyName"


class TestMetaAndLifecycle:
    def test_meta_record_and_submit_twice_conflict(self, client):
        project = make_project(client)
        payload = client.get(f"/api/projects/{project['id']}/next",
                             params={"annotator": "r1"}).json()
        ann = payload["annotations"]["trusted"][0]
        response = client.post(f"/api/annotations/{ann['id']}/meta", json={
            "task": "Temporality", "value": "Is Historical", "annotator": "r1"})
        assert response.status_code == 200
        response = client.post(f"/api/annotations/{ann['id']}/meta", json={
            "task": "Temporality", "value": "Maybe", "annotator": "r1"})
        assert response.status_code == 400
        assert client.post("/api/documents/d1/submit", json={
            "project": project["id"], "annotator": "r1"}).status_code == 200
        response = client.post("/api/documents/d1/submit", json={
            "project": project["id"], "annotator": "r1"})
        assert response.status_code == 409
        assert response.json()["code"] == "IllegalTransition"

    def test_agreement_identical_labels_kappa_one(self, client):
        project = make_project(client, annotators=("r1", "r2"))
        values = {"d1": "Is Historical", "d2": "Not Historical"}
        for doc_id, value in values.items():
            payload = client.get(f"/api/projects/{project['id']}/next",
                                 params={"annotator": "r1"}).json()
            ann = (payload["annotations"]["trusted"]
                   + payload["annotations"]["flagged"])[0]
            for rater in ("r1", "r2"):
                client.post(f"/api/annotations/{ann['id']}/meta", json={
                    "task": "Temporality", "value": value, "annotator": rater})
                client.post(f"/api/documents/{doc_id}/submit", json={
                    "project": project["id"], "annotator": rater})
        response = client.get(f"/api/projects/{project['id']}/agreement",
                              params={"r1": "r1", "r2": "r2",
                                      "task": "Temporality"})
        assert response.status_code == 200
        report = response.json()
        assert report["percent_agreement"] == 1.0
        assert report["kappa"] == 1.0

    def test_train_meta_returns_report_and_job(self, client):
        docs = {}
        for i in range(20):
            docs[f"t{i:02d}"] = ("long history of seizure noted years ago"
                                 if i % 2 == 0 else
                                 "presents with seizure this morning acute")
        client.post("/api/documents", json={"documents": docs})
        project = client.post("/api/projects", json={
            "name": "train", "documents": sorted(docs), "annotators": ["r1"],
            "tasks": [TEMPORALITY]}).json()
        for i, doc_id in enumerate(sorted(docs)):
            payload = client.get(f"/api/projects/{project['id']}/next",
                                 params={"annotator": "r1"}).json()
            ann = (payload["annotations"]["trusted"]
                   + payload["annotations"]["flagged"])[0]
            value = "Is Historical" if i % 2 == 0 else "Not Historical"
            client.post(f"/api/annotations/{ann['id']}/meta", json={
                "task": "Temporality", "value": value, "annotator": "r1"})
            client.post(f"/api/documents/{payload['doc_id']}/submit", json={
                "project": project["id"], "annotator": "r1"})
        response = client.post(f"/api/projects/{project['id']}/train-meta",
                               json={"task": "Temporality", "seed": 13})
        assert response.status_code == 200
        body = response.json()
        assert body["report"]["accuracy"] >= 0.9
        job = client.get(f"/api/jobs/{body['job_id']}")
        assert job.status_code == 200
        assert job.json()["status"] == "done"

    def test_unknown_job_404(self, client):
        assert client.get("/api/jobs/nope").status_code == 404


class TestContractEquivalence:
    """Each scenario run through HTTP matches the in-process operations."""

    def run_inprocess(self):
        wb = Workbench()
        wb.add_documents({"d1": "patient had a seizure today",
                          "d2": "history of seizures noted"})
        wb.add_concept("C001", "seizure", ["seizures"])
        project = wb.create_project("demo", ["d1", "d2"], ["r1"], [TEMPORALITY])
        doc_id, _text, partition, remaining = wb.next_document(project.id, "r1")
        ann = (partition.trusted + partition.flagged)[0]
        wb.feedback(ann.id, "correct", "r1")
        wb.record_meta_annotation(ann.id, "Temporality", "Is Historical", "r1")
        wb.submit(project.id, doc_id, "r1")
        return {
            "doc_id": doc_id,
            "remaining": remaining,
            "annotation": ann.to_dict(),
            "meta": wb.meta_value(ann.id, "Temporality", "r1"),
            "export": wb.export_standoff(project.id, "r1"),
        }

    def run_http(self, wb):
        client = TestClient(create_app(wb))
        project = make_project(client)
        payload = client.get(f"/api/projects/{project['id']}/next",
                             params={"annotator": "r1"}).json()
        ann = (payload["annotations"]["trusted"]
               + payload["annotations"]["flagged"])[0]
        ann = client.post(f"/api/annotations/{ann['id']}/feedback",
                          json={"verdict": "correct", "annotator": "r1"}).json()
        meta = client.post(f"/api/annotations/{ann['id']}/meta", json={
            "task": "Temporality", "value": "Is Historical",
            "annotator": "r1"}).json()
        client.post(f"/api/documents/{payload['doc_id']}/submit", json={
            "project": project["id"], "annotator": "r1"})
        export = client.get(f"/api/projects/{project['id']}/export",
                            params={"annotator": "r1"}).json()
        return {
            "doc_id": payload["doc_id"],
            "remaining": payload["remaining"],
            "annotation": ann,
            "meta": meta["value"],
            "export": export,
        }

    def test_same_results_both_ways(self, wb):
        expected = self.run_inprocess()
        actual = self.run_http(wb)
        assert actual == expected


class TestPersistenceAcrossRestart:
    def test_state_survives_service_restart(self, tmp_path):
        store_path = tmp_path / "store.json"
        wb = Workbench(store_path=str(store_path))
        wb.add_documents({"d1": "patient had a seizure today"})
        wb.add_concept("C001", "seizure")
        client = TestClient(create_app(wb))
        project = client.post("/api/projects", json={
            "name": "demo", "documents": ["d1"], "annotators": ["r1"],
            "tasks": [TEMPORALITY]}).json()
        payload = client.get(f"/api/projects/{project['id']}/next",
                             params={"annotator": "r1"}).json()
        ann = payload["annotations"]["trusted"][0]
        client.post(f"/api/annotations/{ann['id']}/feedback",
                    json={"verdict": "correct", "annotator": "r1"})

        reopened = Workbench.open(str(store_path))
        client2 = TestClient(create_app(reopened))
        listing = client2.get("/api/projects").json()
        assert [p["id"] for p in listing] == [project["id"]]
        assert reopened.state.annotations[ann["id"]].status == "correct"
        assert load(str(store_path)) == reopened.state
