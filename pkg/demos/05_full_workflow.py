"""End-to-end workbench session: ingest, project, annotate, review, export.

Everything here is also reachable over HTTP (`annobench serve`) and the CLI;
the in-process facade, the API and the CLI share this exact behavior.
"""

import json
import tempfile
from pathlib import Path

from annobench.workbench import Workbench

with tempfile.TemporaryDirectory() as tmp:
    store_path = Path(tmp) / "workbench.json"
    wb = Workbench(store_path=str(store_path))

    # 1. corpus + dictionary
    wb.add_documents({
        "note-1": "Chief complaint: seizure. Started anti-seizure meds.",
        "note-2": "Family history of seizures, none current.",
        "note-3": "Follow-up for migraine, no seizure activity.",
    })
    wb.add_concept("C001", "seizure", ["seizures"])
    print("documents:", sorted(wb.state.documents))

    # 2. project with a temporality task
    project = wb.create_project(
        "seizure temporality",
        ["note-1", "note-2", "note-3"],
        ["alice"],
        [{"name": "Temporality", "values": ["Is Historical", "Not Historical"],
          "help_text": "Past episode vs current presentation."}],
    )
    print("project:", project.id)

    # 3. annotator session: next -> meta -> submit
    while True:
        item = wb.next_document(project.id, "alice")
        if item is None:
            print("queue drained; dialog would prompt return home")
            break
        doc_id, text, partition, remaining = item
        print(f"reviewing {doc_id} (remaining {remaining}):")
        for ann in partition.trusted + partition.flagged:
            value = ("Is Historical" if "history" in text.lower()
                     else "Not Historical")
            wb.record_meta_annotation(ann.id, "Temporality", value, "alice")
            print(f"   span [{ann.start},{ann.end}) {ann.matched_text!r} "
                  f"-> {ann.cui}: {value}")
        wb.submit(project.id, doc_id, "alice")

    # 4. everything persists and exports deterministically
    wb.commit()
    payload = wb.export_standoff(project.id, "alice")
    print("export documents:", [d["id"] for d in payload["documents"]])
    print("first entity:",
          json.dumps(payload["documents"][0]["entities"][0], indent=2))

    reopened = Workbench.open(str(store_path))
    assert reopened.state == wb.state
    print("state round-trips through", store_path.name)
