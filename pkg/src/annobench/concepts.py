"""Concept database: CUIs, names, spell variants and trainable context vectors.

The database owns three indexes:

* ``name_index``  — normalized name -> set of CUIs (ambiguity is first-class),
* ``vocabulary``  — token -> dense index; context vectors live over these
  indices and the vocabulary grows only through training events,
* a deletion-variant index backing distance-1 spelling candidates.

Concurrency contract: single writer, many readers. All mutations must be
serialized by the caller (the Workbench facade routes them through one lock);
readers then always observe a consistent snapshot.
"""

from __future__ import annotations

import csv
import math
from collections import Counter
from dataclasses import dataclass, field

from .errors import EmptyCui, EmptyName, MalformedRow, UnknownCui
from .text import normalize, tokenize

SYNONYM_SEP = "|"

# Tokens shorter than this are never spell-corrected; short tokens produce
# too many false corrections and the clinically observed variants are all long.
MIN_SPELL_QUERY_LEN = 5


@dataclass
class Concept:
    """One linkable terminology entry.

    ``context_vector`` maps vocabulary index -> weight and is empty exactly
    while ``train_count`` is zero.
    """

    cui: str
    preferred_name: str
    synonyms: set = field(default_factory=set)
    context_vector: dict = field(default_factory=dict)
    train_count: int = 0

    def is_trained(self):
        return self.train_count > 0


def _deletes1(word):
    return {word[:i] + word[i + 1:] for i in range(len(word))}


def within_one_edit(a, b):
    """True when Damerau-Levenshtein distance(a, b) <= 1.

    Adjacent transposition counts as a single edit; at threshold 1 this
    coincides with unrestricted Damerau-Levenshtein distance.
    """
    if a == b:
        return True
    la, lb = len(a), len(b)
    if abs(la - lb) > 1:
        return False
    if la == lb:
        diffs = [i for i in range(la) if a[i] != b[i]]
        if len(diffs) == 1:
            return True
        if len(diffs) == 2:
            i, j = diffs
            return j == i + 1 and a[i] == b[j] and a[j] == b[i]
        return False
    if la > lb:
        a, b, la, lb = b, a, lb, la
    i = 0
    while i < la and a[i] == b[i]:
        i += 1
    return a[i:] == b[i + 1:]


def sparse_cosine(u, v):
    """Cosine similarity of two sparse vectors (dicts); 0.0 if either is zero."""
    if not u or not v:
        return 0.0
    dot = sum(val * v.get(i, 0.0) for i, val in u.items())
    nu = math.sqrt(sum(val * val for val in u.values()))
    nv = math.sqrt(sum(val * val for val in v.values()))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return dot / (nu * nv)


class ConceptDatabase:
    def __init__(self):
        self.concepts = {}
        self.name_index = {}
        self.vocabulary = {}
        self.max_name_tokens = 0
        self._spell_index = {}

    def __eq__(self, other):
        if not isinstance(other, ConceptDatabase):
            return NotImplemented
        return (
            self.concepts == other.concepts
            and self.name_index == other.name_index
            and self.vocabulary == other.vocabulary
            and self.max_name_tokens == other.max_name_tokens
        )

    def _index_name(self, name, cui):
        key = normalize(name)
        if not key:
            return
        self.name_index.setdefault(key, set()).add(cui)
        self.max_name_tokens = max(self.max_name_tokens, key.count(" ") + 1)
        # index single-token names of length >= 4: a >=5-char query at
        # distance <= 1 can only reach names at least that long
        if " " not in key and len(key) >= MIN_SPELL_QUERY_LEN - 1:
            for variant in {key} | _deletes1(key):
                self._spell_index.setdefault(variant, set()).add(key)

    def add_concept(self, cui, name, synonyms=(), context_example=None, *,
                    context_window=7, learning_rate=0.1):
        """Create or extend a concept; optionally train it on one context example.

        Names merge into an existing concept's synonym set when the CUI is
        already present. A context_example is applied exactly as one positive
        feedback event on that text: the window around the first occurrence
        of any of the concept's names (the whole text if none occurs).
        """
        if not cui:
            raise EmptyCui("cui must be non-empty")
        if not name or not normalize(name):
            raise EmptyName("name must be non-empty")
        names = [name] + [s for s in synonyms if s and normalize(s)]
        concept = self.concepts.get(cui)
        if concept is None:
            concept = Concept(cui=cui, preferred_name=name)
            self.concepts[cui] = concept
        concept.synonyms.update(names)
        for n in names:
            self._index_name(n, cui)
        if context_example:
            bag = self._example_bag(concept, context_example, context_window)
            self.train_context(cui, bag, learning_rate, positive=True)
        return concept

    def candidates_for_tokens(self, tokens):
        """CUIs whose indexed name equals the joined normalized token sequence."""
        return set(self.name_index.get(" ".join(tokens), ()))

    def spell_candidates(self, token):
        """Indexed single-token names within one edit of `token`.

        Applies only to tokens of length >= 5 that are neither indexed names
        nor vocabulary words. Returns a set of (name, cui) pairs.
        """
        if len(token) < MIN_SPELL_QUERY_LEN:
            return set()
        if token in self.name_index or token in self.vocabulary:
            return set()
        candidates = set()
        for variant in {token} | _deletes1(token):
            candidates.update(self._spell_index.get(variant, ()))
        out = set()
        for name in candidates:
            if within_one_edit(token, name):
                for cui in self.name_index.get(name, ()):
                    out.add((name, cui))
        return out

    def _intern(self, token):
        idx = self.vocabulary.get(token)
        if idx is None:
            idx = len(self.vocabulary)
            self.vocabulary[token] = idx
        return idx

    def train_context(self, cui, bag, learning_rate, positive=True):
        """Apply one feedback update to a concept's context vector.

        ``bag`` maps token -> count; unseen tokens are interned into the
        vocabulary in bag iteration order. With v the current vector, x the
        bag and eta the learning rate:

            correct:    v <- (1 - eta) * v + eta * x
            incorrect:  v <- v - eta * x

        Empty bags leave both the vector and train_count untouched.
        """
        concept = self.concepts.get(cui)
        if concept is None:
            raise UnknownCui(f"unknown cui {cui!r}")
        items = [(t, float(c)) for t, c in bag.items() if c]
        if not items:
            return
        v = concept.context_vector
        if positive:
            for i in list(v):
                v[i] *= 1.0 - learning_rate
            for token, count in items:
                idx = self._intern(token)
                v[idx] = v.get(idx, 0.0) + learning_rate * count
        else:
            for token, count in items:
                idx = self._intern(token)
                v[idx] = v.get(idx, 0.0) - learning_rate * count
        concept.train_count += 1

    def vocab_bag(self, tokens):
        """Count bag of the given normalized tokens restricted to known vocabulary,
        keyed by vocabulary index."""
        bag = {}
        for token in tokens:
            idx = self.vocabulary.get(token)
            if idx is not None:
                bag[idx] = bag.get(idx, 0.0) + 1.0
        return bag

    def context_cosine(self, cui, tokens):
        """Cosine between a concept's trained vector and the vocabulary-token bag
        of the given normalized tokens."""
        concept = self.concepts.get(cui)
        if concept is None:
            raise UnknownCui(f"unknown cui {cui!r}")
        return sparse_cosine(concept.context_vector, self.vocab_bag(tokens))

    def _example_bag(self, concept, text, window):
        """Full token-count bag around the first occurrence of one of the
        concept's names in `text`; the whole text if no name occurs."""
        tokens = tokenize(text)
        norms = [t.norm for t in tokens]
        name_keys = {normalize(s) for s in concept.synonyms}
        span = None
        for i in range(len(norms)):
            for length in range(min(self.max_name_tokens, len(norms) - i), 0, -1):
                if " ".join(norms[i:i + length]) in name_keys:
                    span = (i, i + length)
                    break
            if span:
                break
        if span is None:
            window_tokens = norms
        else:
            s, e = span
            window_tokens = norms[max(0, s - window):s] + norms[e:e + window]
        return dict(Counter(window_tokens))


def load_concept_csv(path):
    """Load a ``cui,name,synonyms`` CSV (UTF-8, header optional).

    synonyms is a |-separated list and may be empty; one row per (cui, name)
    pair is permitted and synonyms merge across rows with equal cui.
    """
    db = ConceptDatabase()
    with open(path, encoding="utf-8", newline="") as fh:
        for line_no, row in enumerate(csv.reader(fh), start=1):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if line_no == 1 and [c.strip().lower() for c in row] == ["cui", "name", "synonyms"]:
                continue
            if len(row) != 3:
                raise MalformedRow(line_no)
            cui, name, syns = row
            synonyms = [s for s in syns.split(SYNONYM_SEP) if s.strip()]
            db.add_concept(cui.strip(), name.strip(), synonyms)
    return db
