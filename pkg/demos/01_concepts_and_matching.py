"""Concept database and dictionary matching walkthrough.

Builds a small concept database, then shows greedy longest-match detection,
ambiguity handling, and distance-1 spelling fallback on clinical-looking text.
"""

from annobench import ConceptDatabase, annotate, AnnotatorConfig

db = ConceptDatabase()
db.add_concept("C001", "seizure", ["seizures", "fit"])
db.add_concept("C002", "heart")
db.add_concept("C003", "heart attack", ["myocardial infarction", "mi"])
db.add_concept("C10", "cold")   # the symptom
db.add_concept("C11", "cold")   # the weather: ambiguity is first-class

print("concepts:", sorted(db.concepts))
print("indexed names:", sorted(db.name_index))
print("longest indexed name:", db.max_name_tokens, "tokens")

# Longest match: "heart attack" wins over "heart"
doc = "Admitted after heart attack. Hx of seizures."
for a in annotate(doc, db, doc_id="note-1"):
    print(f"  [{a.start:3d},{a.end:3d}) {a.matched_text!r:22} -> {a.cui} "
          f"(confidence {a.confidence:.2f})")

# Spelling fallback: "seizre" is one edit from "seizure"
doc = "seizre treated in the ED"
for a in annotate(doc, db, doc_id="note-2"):
    print(f"  spelling fallback: {a.matched_text!r} -> {a.cui}")

# Ambiguous span: both colds are candidates; untrained candidates score
# 1/k = 0.5 each and the tie breaks to the smallest CUI. A project can
# raise delta above 0.5 to flag exactly these for review.
doc = "a cold day on the ward"
(a,) = annotate(doc, db, doc_id="note-3")
print(f"  ambiguous: {a.matched_text!r} candidates={sorted(a.candidates)} "
      f"chosen={a.cui} confidence={a.confidence}")

# Spell correction never applies to short tokens
config = AnnotatorConfig()
print("  spell_candidates('dog'):", db.spell_candidates("dog"))
print("  spell_candidates('seizur'):", db.spell_candidates("seizur"))
