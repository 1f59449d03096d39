import random
import string

from annobench.text import normalize, tokenize, window_norms


def test_tokenize_offsets_hand_counted():
    tokens = tokenize("Chief complaint: seizure.")
    assert [(t.text, t.start, t.end) for t in tokens] == [
        ("Chief", 0, 5),
        ("complaint", 6, 15),
        ("seizure", 17, 24),
    ]
    assert [t.norm for t in tokens] == ["chief", "complaint", "seizure"]


def test_tokenize_empty():
    assert tokenize("") == []


def test_tokenize_splits_on_non_alphanumeric():
    tokens = tokenize("a-b")
    assert [(t.text, t.start, t.end) for t in tokens] == [("a", 0, 1), ("b", 2, 3)]


def test_tokenize_underscore_is_separator():
    assert [t.text for t in tokenize("foo_bar")] == ["foo", "bar"]


def test_tokens_spell_their_slice():
    rng = random.Random(42)
    alphabet = string.ascii_letters + string.digits + " .,-;:()/\n\t'"
    for _ in range(200):
        text = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 120)))
        tokens = tokenize(text)
        last_end = 0
        for t in tokens:
            assert text[t.start:t.end] == t.text
            assert t.start >= last_end  # ordered, non-overlapping
            assert t.start < t.end <= len(text)
            last_end = t.end


def test_normalize():
    assert normalize("Heart  Attack!") == "heart attack"
    assert normalize("MI") == "mi"
    assert normalize("...") == ""


def test_window_norms_excludes_span():
    text = "family history of seizures noted"
    # span "seizures" = chars 18..26
    assert window_norms(text, 18, 26, 2) == ["history", "of", "noted"]


def test_window_norms_at_document_start():
    text = "seizure noted today"
    assert window_norms(text, 0, 7, 2) == ["noted", "today"]


def test_window_norms_zero_window():
    assert window_norms("a b c", 2, 3, 0) == []
