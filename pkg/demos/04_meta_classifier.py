"""Temporality classifier walkthrough.

Trains the fixed-hyperparameter logistic regression on the bundled synthetic
corpus of 2,000 labelled context windows (historical vs present templates with
10% label noise) and prints the held-out report.
"""

import numpy as np

from annobench.metaclf import fit_tfidf, train, transform_many
from annobench.synth import make_temporality_corpus, summarize_labels

rows = make_temporality_corpus(n=2000)
print("corpus:", len(rows), "context windows", summarize_labels(rows))
print("sample row:", rows[0])

texts = [t for t, _ in rows]
labels = [l for _, l in rows]

model = fit_tfidf(texts)  # default english stop list, 500 features max
print("vocabulary size:", len(model.vocabulary))

features = transform_many(model, texts)
print("feature matrix:", features.shape,
      "row norms in {0,1}:", sorted(set(np.round(np.linalg.norm(features, axis=1), 9)))[:3])

classifier, report = train(features, labels, seed=13,
                           positive_class="Is Historical")
print(f"held-out accuracy: {report.accuracy:.4f}")
print(f"positive-class F1: {report.f1_positive:.4f}")
print("confusion categories:", report.confusion.categories)
for cat, row in zip(report.confusion.categories, report.confusion.counts):
    print(f"  {cat:15s} {row}")
print("training loss first/last:",
      round(classifier.loss_history[0], 4), "->",
      round(classifier.loss_history[-1], 4))

# heaviest evidence per class
for k, cls in enumerate(classifier.classes):
    top = np.argsort(classifier.weights[k])[-5:][::-1]
    terms = {i: t for t, i in model.vocabulary.items()}
    print(f"top terms for {cls!r}:", [terms[i] for i in top])
