"""Supervised classifier over meta-annotation labels: context-window features,
TF-IDF weighting, a fixed-hyperparameter multinomial logistic regression, and
train/test evaluation.

Training is single-threaded per job; feature matrices are immutable snapshots,
so multiple jobs can run concurrently.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from importlib.resources import files

import numpy as np

from .agreement import ContingencyTable, build_contingency, percent_agreement
from .errors import EmptyCorpus, SingleClass, TooFewItems
from .text import norm_tokens, window_norms

DEFAULT_MAX_FEATURES = 500
DEFAULT_TRAIN_FRACTION = 0.7

# fixed hyperparameters; no grid search
EPOCHS = 500
STEP = 0.5
L2_PENALTY = 1e-4

_stop_words = None


def default_stop_words():
    """The bundled 318-word English stop list."""
    global _stop_words
    if _stop_words is None:
        raw = files("annobench.data").joinpath("stopwords.txt").read_text("utf-8")
        _stop_words = frozenset(w for w in raw.split() if w)
    return _stop_words


@dataclass
class TfidfModel:
    vocabulary: dict          # term -> dense index, alphabetical
    idf: np.ndarray
    stop_words: frozenset
    max_features: int = DEFAULT_MAX_FEATURES


@dataclass
class LinearTextClassifier:
    weights: np.ndarray       # classes x features
    bias: np.ndarray
    classes: list
    seed: int
    loss_history: list = field(default_factory=list)


@dataclass
class EvalReport:
    accuracy: float
    f1_positive: float
    confusion: ContingencyTable
    split_seed: int = 0
    train_fraction: float = DEFAULT_TRAIN_FRACTION

    def to_dict(self):
        return {
            "accuracy": self.accuracy,
            "f1_positive": self.f1_positive,
            "confusion": self.confusion.to_dict(),
            "split_seed": self.split_seed,
            "train_fraction": self.train_fraction,
        }


def extract_context(text, annotation, window):
    """The +-window tokens around the annotation span, span tokens excluded,
    joined by single spaces."""
    return " ".join(window_norms(text, annotation.start, annotation.end, window))


def fit_tfidf(corpus, max_features=DEFAULT_MAX_FEATURES, stop_words=None):
    """Fit vocabulary and idf weights on a corpus.

    Vocabulary keeps the top max_features terms by document frequency (ties
    by lexicographic order) after stop-word removal; idf(t) = ln((1+N)/(1+df))
    + 1. Passing stop_words=None selects the bundled English list; pass an
    empty collection to disable stopping.
    """
    corpus = list(corpus)
    if not corpus:
        raise EmptyCorpus("cannot fit tf-idf on an empty corpus")
    stop = default_stop_words() if stop_words is None else frozenset(stop_words)
    df = Counter()
    for doc in corpus:
        df.update(set(norm_tokens(doc)) - stop)
    ranked = sorted(df.items(), key=lambda kv: (-kv[1], kv[0]))[:max_features]
    terms = sorted(t for t, _ in ranked)
    n = len(corpus)
    idf = np.array([math.log((1 + n) / (1 + df[t])) + 1.0 for t in terms])
    return TfidfModel(
        vocabulary={t: i for i, t in enumerate(terms)},
        idf=idf,
        stop_words=stop,
        max_features=max_features,
    )


def transform(model, text):
    """tf (raw count) x idf, L2-normalized; the zero vector when no
    in-vocabulary term occurs."""
    vec = np.zeros(len(model.vocabulary))
    for term in norm_tokens(text):
        idx = model.vocabulary.get(term)
        if idx is not None:
            vec[idx] += 1.0
    vec *= model.idf
    norm = np.linalg.norm(vec)
    if norm > 0.0:
        vec /= norm
    return vec


def transform_many(model, texts):
    return np.array([transform(model, t) for t in texts]) if texts else \
        np.zeros((0, len(model.vocabulary)))


def _one_hot(labels, classes):
    index = {c: i for i, c in enumerate(classes)}
    out = np.zeros((len(labels), len(classes)))
    for row, label in enumerate(labels):
        out[row, index[label]] = 1.0
    return out


def loss_and_grads(weights, bias, features, one_hot, l2=L2_PENALTY):
    """Mean cross-entropy of the softmax model plus 0.5*l2*||W||^2, with
    analytic gradients. Exposed so tests can check against finite differences."""
    z = features @ weights.T + bias
    z = z - z.max(axis=1, keepdims=True)
    expz = np.exp(z)
    probs = expz / expz.sum(axis=1, keepdims=True)
    n = features.shape[0]
    picked = np.clip((probs * one_hot).sum(axis=1), 1e-300, None)
    loss = -np.log(picked).mean() + 0.5 * l2 * float((weights * weights).sum())
    delta = (probs - one_hot) / n
    grad_w = delta.T @ features + l2 * weights
    grad_b = delta.sum(axis=0)
    return loss, grad_w, grad_b


def fit_logistic(features, labels, classes=None, seed=13):
    """Full-batch gradient descent with the fixed hyperparameters above.

    The per-epoch loss (recorded before each step) is kept on the classifier;
    it is non-increasing for unit-norm feature rows at this step size.
    """
    features = np.asarray(features, dtype=float)
    classes = sorted(set(labels)) if classes is None else list(classes)
    one_hot = _one_hot(labels, classes)
    weights = np.zeros((len(classes), features.shape[1]))
    bias = np.zeros(len(classes))
    history = []
    for _ in range(EPOCHS):
        loss, grad_w, grad_b = loss_and_grads(weights, bias, features, one_hot)
        history.append(loss)
        weights -= STEP * grad_w
        bias -= STEP * grad_b
    return LinearTextClassifier(
        weights=weights, bias=bias, classes=classes, seed=seed,
        loss_history=history,
    )


def predict(classifier, features):
    features = np.asarray(features, dtype=float)
    scores = features @ classifier.weights.T + classifier.bias
    return [classifier.classes[i] for i in scores.argmax(axis=1)]


def f1_score(table, positive_class):
    """Harmonic mean of precision and recall for one class; 0.0 when the class
    was never predicted and never occurs (degenerate-case policy)."""
    if positive_class not in table.categories:
        return 0.0
    k = table.categories.index(positive_class)
    tp = table.counts[k][k]
    if tp == 0:
        return 0.0
    fp = table.col_totals()[k] - tp
    fn = table.row_totals()[k] - tp
    precision = tp / (tp + fp)
    recall = tp / (tp + fn)
    return 2.0 * precision * recall / (precision + recall)


def evaluate(classifier, features, labels, positive_class=None,
             train_fraction=DEFAULT_TRAIN_FRACTION):
    """Accuracy, positive-class F1 and the confusion matrix (rows = true
    labels, columns = predictions)."""
    labels = list(labels)
    preds = predict(classifier, features)
    table = build_contingency(labels, preds)
    positive = classifier.classes[0] if positive_class is None else positive_class
    return EvalReport(
        accuracy=percent_agreement(table),
        f1_positive=f1_score(table, positive),
        confusion=table,
        split_seed=classifier.seed,
        train_fraction=train_fraction,
    )


def split_indices(n, train_fraction, seed):
    """Deterministic shuffled train/test membership for n items."""
    order = np.random.default_rng(seed).permutation(n)
    cut = int(round(train_fraction * n))
    cut = min(max(cut, 1), n - 1)
    return order[:cut], order[cut:]


def train(features, labels, train_fraction=DEFAULT_TRAIN_FRACTION, seed=13,
          positive_class=None):
    """Deterministic shuffled split by seed, fit on the train part, report on
    the held-out part."""
    features = np.asarray(features, dtype=float)
    labels = list(labels)
    if len(labels) < 10:
        raise TooFewItems(f"need at least 10 items, got {len(labels)}")
    classes = sorted(set(labels))
    if len(classes) < 2:
        raise SingleClass("training needs at least 2 classes present")
    train_idx, test_idx = split_indices(len(labels), train_fraction, seed)
    classifier = fit_logistic(
        features[train_idx], [labels[i] for i in train_idx], classes, seed,
    )
    report = evaluate(
        classifier,
        features[test_idx],
        [labels[i] for i in test_idx],
        positive_class=positive_class,
        train_fraction=train_fraction,
    )
    return classifier, report
