"""Active-learning feedback loop walkthrough.

A name with two candidate concepts starts out misidentified because the wrong
candidate was trained on a similar context. Cross feedback plus rerun corrects
the link within a couple of rounds; tick feedback reinforces it.
"""

from annobench import AnnotatorConfig, ConceptDatabase, annotate, display_filter
from annobench.active import apply_feedback, make_feedback, rerun
from annobench.store import WorkbenchState

config = AnnotatorConfig()  # delta 0.25, learning rate 0.1, window 7

db = ConceptDatabase()
db.add_concept("C100", "ra")  # rheumatoid arthritis
db.add_concept("C200", "ra")  # right atrium
db.train_context("C100", {"joint": 10, "pain": 10, "stiffness": 10, "morning": 10}, 0.1)
db.train_context("C200", {"today": 10, "flare": 10, "with": 10}, 0.1)

text = "ra with joint pain and stiffness today"
state = WorkbenchState(db=db, config=config)
state.documents["d1"] = text
for a in annotate(text, db, config, doc_id="d1"):
    state.annotations[a.id] = a

(ann,) = state.annotations.values()
print(f"initial link: {ann.matched_text!r} -> {ann.cui} "
      f"(confidence {ann.confidence:.3f})")

partition = display_filter([ann], config.delta)
print(f"display partition: {len(partition.trusted)} trusted, "
      f"{len(partition.flagged)} flagged")

round_no = 0
while ann.cui == "C100":
    round_no += 1
    event = make_feedback(ann, text, "annotator-1", "incorrect", config)
    apply_feedback(event, state, config)
    fresh = rerun(text, db, config, doc_id="d1", previous=[ann])
    state.annotations = {a.id: a for a in fresh}
    (ann,) = fresh
    print(f"round {round_no}: cross + rerun -> {ann.cui} "
          f"(confidence {ann.confidence:.3f})")

print("corrected within", round_no, "rounds")

# tick the corrected annotation: the verdict sticks across reruns
event = make_feedback(ann, text, "annotator-1", "correct", config)
apply_feedback(event, state, config)
(ann,) = rerun(text, db, config, doc_id="d1", previous=[ann])
print(f"after tick: {ann.cui} status={ann.status}")
print("feedback log length:", len(state.feedback_log))
