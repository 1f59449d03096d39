"""Two-rater agreement accounting: contingency tables, percent agreement and
Cohen's kappa. Pure read-side computations over store snapshots."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DegenerateMarginals, EmptyTable, LengthMismatch, UnknownAnnotator
from .projects import NOT_ANNOTATED, SUBMITTED


@dataclass
class ContingencyTable:
    """counts[i][j] = number of items rater 1 labelled categories[i] and
    rater 2 labelled categories[j]."""

    categories: list
    counts: list = field(default_factory=list)

    @property
    def n(self):
        return sum(sum(row) for row in self.counts)

    def row_totals(self):
        return [sum(row) for row in self.counts]

    def col_totals(self):
        k = len(self.categories)
        return [sum(self.counts[i][j] for i in range(k)) for j in range(k)]

    def to_dict(self):
        return {"categories": list(self.categories),
                "counts": [list(row) for row in self.counts]}


def build_contingency(labels1, labels2):
    """Tally two aligned label sequences over the union of observed categories.

    Callers drop items where either label is N/A before aligning.
    """
    labels1, labels2 = list(labels1), list(labels2)
    if len(labels1) != len(labels2):
        raise LengthMismatch(
            f"label sequences differ in length: {len(labels1)} vs {len(labels2)}"
        )
    categories = sorted(set(labels1) | set(labels2))
    index = {c: i for i, c in enumerate(categories)}
    k = len(categories)
    counts = [[0] * k for _ in range(k)]
    for a, b in zip(labels1, labels2):
        counts[index[a]][index[b]] += 1
    return ContingencyTable(categories=categories, counts=counts)


def percent_agreement(table):
    """Fraction of items both raters labelled identically: trace / N."""
    n = table.n
    if n < 1:
        raise EmptyTable("agreement needs at least one item")
    trace = sum(table.counts[i][i] for i in range(len(table.categories)))
    return trace / n


def cohens_kappa(table):
    """Chance-corrected agreement kappa = (p_o - p_e) / (1 - p_e) with
    p_e = sum_k (row_k / N) * (col_k / N)."""
    n = table.n
    if n < 1:
        raise EmptyTable("kappa needs at least one item")
    rows = table.row_totals()
    cols = table.col_totals()
    expected = sum(r * c for r, c in zip(rows, cols))
    if expected == n * n:  # exact in integer arithmetic
        raise DegenerateMarginals("chance agreement is 1; kappa undefined")
    trace = sum(table.counts[i][i] for i in range(len(table.categories)))
    p_o = trace / n
    p_e = expected / (n * n)
    return (p_o - p_e) / (1.0 - p_e)


def submitted_intersection(project, rater1, rater2):
    """Documents submitted by both raters; final agreement scores are computed
    over this intersection."""
    for rater in (rater1, rater2):
        if rater not in project.annotators:
            raise UnknownAnnotator(f"{rater!r} is not on project {project.id!r}")
    return {
        doc_id
        for doc_id in project.document_ids
        if project.states[(doc_id, rater1)] == SUBMITTED
        and project.states[(doc_id, rater2)] == SUBMITTED
    }


def label_counts(meta_annotations, rater, task_name, annotation_ids=None):
    """Counts of non-N/A values one rater assigned for one task, optionally
    restricted to a set of annotation ids (e.g. the submitted intersection)."""
    out = {}
    for m in meta_annotations:
        if m.annotator != rater or m.task_name != task_name:
            continue
        if m.value == NOT_ANNOTATED:
            continue
        if annotation_ids is not None and m.annotation_id not in annotation_ids:
            continue
        out[m.value] = out.get(m.value, 0) + 1
    return out
