import pytest

from annobench import AnnotatorConfig, ConceptDatabase


@pytest.fixture
def tiny_db():
    """seizure (C001), heart / heart attack (C002/C003), ambiguous cold (C10/C11)."""
    db = ConceptDatabase()
    db.add_concept("C001", "seizure")
    db.add_concept("C002", "heart")
    db.add_concept("C003", "heart attack", ["myocardial infarction", "mi"])
    db.add_concept("C10", "cold")
    db.add_concept("C11", "cold")
    return db


@pytest.fixture
def config():
    return AnnotatorConfig()


@pytest.fixture
def ambiguity_fixture():
    """Two candidates for the same name, the wrong one trained to look right.

    The document context overlaps C100's trained context on three tokens and
    C200's on one, so C100 (the wrong link) starts as the argmax.
    """
    db = ConceptDatabase()
    db.add_concept("C100", "ra")
    db.add_concept("C200", "ra")
    db.train_context("C100", {"joint": 1, "pain": 1, "stiffness": 1, "morning": 1}, 0.1)
    db.train_context("C200", {"today": 1, "flare": 1}, 0.1)
    doc = "ra with joint pain and stiffness today"
    return db, doc
