import itertools

import pytest

from annobench.errors import (
    DuplicateDocId,
    EmptyCorpus,
    IllegalTransition,
    IllegalValue,
    InvalidTask,
    UnknownAnnotator,
)
from annobench.projects import (
    INCOMPLETE,
    PENDING,
    SUBMITTED,
    MetaTask,
    create_project,
    mark_incomplete,
    next_document,
    remaining_count,
    state_of,
    submit_document,
    validate_meta_value,
)

TEMPORALITY = MetaTask("Temporality", ["Is Historical", "Not Historical"])


def project_of(n_docs, annotators=("r1",), tasks=(TEMPORALITY,)):
    docs = [f"d{i}" for i in range(1, n_docs + 1)]
    return create_project("p1", "test", docs, set(annotators), list(tasks))


class TestMetaTask:
    def test_needs_two_distinct_values(self):
        with pytest.raises(InvalidTask):
            MetaTask("Temporality", ["Only"])
        with pytest.raises(InvalidTask):
            MetaTask("Temporality", ["Same", "Same"])

    def test_reserved_sentinel(self):
        with pytest.raises(InvalidTask):
            MetaTask("Temporality", ["N/A", "Other"])

    def test_validate_value(self):
        validate_meta_value(TEMPORALITY, "Is Historical")
        with pytest.raises(IllegalValue):
            validate_meta_value(TEMPORALITY, "Maybe")


class TestCreateProject:
    def test_pilot_scale_pending_states(self):
        project = project_of(127, annotators=("r1", "r2"))
        assert len(project.states) == 254
        assert all(s == PENDING for s in project.states.values())

    def test_single_doc_single_annotator(self):
        project = project_of(1, tasks=(TEMPORALITY,
                                       MetaTask("Phenotype", ["Yes", "No"])))
        assert len(project.states) == 1

    def test_empty_corpus(self):
        with pytest.raises(EmptyCorpus):
            create_project("p1", "x", [], {"r1"}, [])

    def test_duplicate_documents(self):
        with pytest.raises(DuplicateDocId):
            create_project("p1", "x", ["d1", "d1"], {"r1"}, [])

    def test_duplicate_task_names(self):
        with pytest.raises(InvalidTask):
            create_project("p1", "x", ["d1"], {"r1"},
                           [TEMPORALITY, MetaTask("Temporality", ["A", "B"])])


class TestNextDocument:
    def test_fresh_project(self):
        project = project_of(2)
        assert next_document(project, "r1") == "d1"

    def test_after_submit(self):
        project = project_of(2)
        submit_document(project, "d1", "r1")
        assert next_document(project, "r1") == "d2"

    def test_exhausted(self):
        project = project_of(2)
        submit_document(project, "d1", "r1")
        submit_document(project, "d2", "r1")
        assert next_document(project, "r1") is None

    def test_incomplete_reenters_after_pendings(self):
        project = project_of(3)
        mark_incomplete(project, "d1", "r1")
        assert next_document(project, "r1") == "d2"
        submit_document(project, "d2", "r1")
        submit_document(project, "d3", "r1")
        assert next_document(project, "r1") == "d1"

    def test_unknown_annotator(self):
        with pytest.raises(UnknownAnnotator):
            next_document(project_of(1), "stranger")

    def test_remaining_counts_non_submitted(self):
        project = project_of(3)
        assert remaining_count(project, "r1") == 3
        mark_incomplete(project, "d1", "r1")
        assert remaining_count(project, "r1") == 3
        submit_document(project, "d2", "r1")
        assert remaining_count(project, "r1") == 2


class TestTransitions:
    def test_pending_submit(self):
        project = project_of(1)
        assert submit_document(project, "d1", "r1").status == SUBMITTED

    def test_pending_incomplete_submit(self):
        project = project_of(1)
        assert mark_incomplete(project, "d1", "r1").status == INCOMPLETE
        assert submit_document(project, "d1", "r1").status == SUBMITTED

    def test_submitted_is_terminal(self):
        project = project_of(1)
        submit_document(project, "d1", "r1")
        with pytest.raises(IllegalTransition):
            submit_document(project, "d1", "r1")
        with pytest.raises(IllegalTransition):
            mark_incomplete(project, "d1", "r1")

    def test_exhaustive_transition_table(self):
        """Every (state, action) pair behaves exactly per the state machine."""
        legal = {
            (PENDING, "submit"): SUBMITTED,
            (PENDING, "incomplete"): INCOMPLETE,
            (INCOMPLETE, "submit"): SUBMITTED,
        }
        actions = {"submit": submit_document, "incomplete": mark_incomplete}
        for start, action_name in itertools.product(
                (PENDING, INCOMPLETE, SUBMITTED), actions):
            project = project_of(1)
            if start == INCOMPLETE:
                mark_incomplete(project, "d1", "r1")
            elif start == SUBMITTED:
                submit_document(project, "d1", "r1")
            expected = legal.get((start, action_name))
            if expected is None:
                with pytest.raises(IllegalTransition):
                    actions[action_name](project, "d1", "r1")
                assert state_of(project, "d1", "r1").status == start
            else:
                assert actions[action_name](project, "d1", "r1").status == expected

    def test_submitted_count_monotone(self):
        import random

        rng = random.Random(4)
        project = project_of(10)
        submitted_counts = [0]
        for _ in range(100):
            doc = f"d{rng.randint(1, 10)}"
            action = rng.choice([submit_document, mark_incomplete])
            try:
                action(project, doc, "r1")
            except IllegalTransition:
                pass
            submitted_counts.append(
                sum(1 for s in project.states.values() if s == SUBMITTED))
        assert submitted_counts == sorted(submitted_counts)


class TestIndependence:
    def test_annotators_never_interfere(self):
        project = project_of(3, annotators=("r1", "r2"))
        submit_document(project, "d1", "r1")
        mark_incomplete(project, "d2", "r1")
        # r2 untouched
        for doc in ("d1", "d2", "d3"):
            assert state_of(project, doc, "r2").status == PENDING
        assert next_document(project, "r2") == "d1"
        # differing submitted totals are legal (as in the two-rater pilot)
        submit_document(project, "d1", "r2")
        submit_document(project, "d2", "r2")
        submit_document(project, "d3", "r2")
        assert remaining_count(project, "r1") == 2
        assert remaining_count(project, "r2") == 0
