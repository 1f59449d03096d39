"""Administrator command line: load concepts, ingest corpora, create projects,
batch-annotate, compute agreement, train classifiers, serve the API.

Exit codes: 0 success, 1 domain error (code printed), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .config import ENV_PREFIX, load_config
from .errors import WorkbenchError
from .workbench import Workbench

STORE_ENV = ENV_PREFIX + "STORE"


def _workbench(args):
    path = args.store or os.environ.get(STORE_ENV) or "workbench.json"
    return Workbench.open(path)


def _emit(args, payload, human):
    if args.json:
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(human)


def _parse_task(spec):
    if "=" not in spec:
        raise argparse.ArgumentTypeError(
            f"task must look like NAME=V1,V2 (got {spec!r})")
    name, _, values = spec.partition("=")
    return {"name": name.strip(), "values": [v.strip() for v in values.split(",")]}


def cmd_load_concepts(args):
    wb = _workbench(args)
    count = wb.load_concepts(args.csv)
    wb.commit()
    _emit(args, {"concepts": count}, f"loaded {count} concepts")
    return 0


def cmd_ingest(args):
    wb = _workbench(args)
    ids = wb.ingest(args.dir or args.csv)
    wb.commit()
    _emit(args, {"documents": ids}, f"ingested {len(ids)} documents")
    return 0


def cmd_create_project(args):
    wb = _workbench(args)
    doc_ids = (sorted(wb.state.documents) if args.docs == "all"
               else [d.strip() for d in args.docs.split(",") if d.strip()])
    project = wb.create_project(
        args.name,
        doc_ids,
        [a.strip() for a in args.annotators.split(",") if a.strip()],
        args.task or [],
        ner_mode="regex" if args.regex else "model",
        regex_pattern=args.regex,
        delta=args.delta,
    )
    wb.commit()
    _emit(args, {"id": project.id, "name": project.name,
                 "documents": len(project.document_ids)},
          f"created project {project.id} ({len(project.document_ids)} documents)")
    return 0


def cmd_annotate(args):
    wb = _workbench(args)
    count = wb.batch_annotate(args.project)
    wb.commit()
    if args.out:
        project = wb.get_project(args.project)
        annotator = args.annotator or sorted(project.annotators)[0]
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(wb.export_standoff_json(args.project, annotator))
        _emit(args, {"annotations": count, "out": args.out},
              f"annotated: {count} annotations, standoff written to {args.out}")
    else:
        _emit(args, {"annotations": count}, f"annotated: {count} annotations")
    return 0


def cmd_agreement(args):
    wb = _workbench(args)
    report = wb.agreement_report(args.project, args.r1, args.r2, args.task)
    human = (
        f"documents: {report['n_documents']}  items: {report['n_items']}\n"
        f"percent agreement: {report['percent_agreement']:.3f}\n"
        f"kappa: {report['kappa']:.3f}"
    )
    _emit(args, report, human)
    return 0


def cmd_train_meta(args):
    wb = _workbench(args)
    report, job_id = wb.train_meta(
        args.project, args.task, window=args.window, seed=args.seed)
    payload = {"job_id": job_id, "report": report.to_dict()}
    human = (
        f"accuracy: {report.accuracy:.3f}\n"
        f"f1 (positive class): {report.f1_positive:.3f}"
    )
    _emit(args, payload, human)
    return 0


def cmd_export_training(args):
    wb = _workbench(args)
    count = wb.export_training_csv(args.project, args.task, args.out,
                                   window=args.window)
    _emit(args, {"rows": count, "out": args.out},
          f"wrote {count} training rows to {args.out}")
    return 0


def cmd_serve(args):
    import uvicorn

    from .api import create_app

    cfg = load_config(args.config)
    if args.store:
        cfg.store_path = args.store
    if args.port:
        cfg.port = args.port
    wb = Workbench.open(cfg.store_path)
    wb.state.config = cfg.annotator_config()
    uvicorn.run(create_app(wb, ui_dir=args.ui), host=args.host, port=cfg.port)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="annobench",
        description="clinical-text annotation workbench",
    )
    parser.add_argument("--store", help=f"store file (default ${STORE_ENV} or workbench.json)")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("load-concepts", help="load a cui,name,synonyms CSV")
    p.add_argument("--csv", required=True)
    p.set_defaults(func=cmd_load_concepts)

    p = sub.add_parser("ingest", help="ingest documents from a directory or CSV")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--dir")
    group.add_argument("--csv")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("create-project", help="create an annotation project")
    p.add_argument("--name", required=True)
    p.add_argument("--docs", required=True,
                   help="comma-separated document ids, or 'all'")
    p.add_argument("--annotators", required=True, help="comma-separated names")
    p.add_argument("--task", action="append", type=_parse_task,
                   help="NAME=V1,V2 (repeatable)")
    p.add_argument("--regex", help="use regex NER mode with this pattern")
    p.add_argument("--delta", type=float, help="confidence cutoff override")
    p.set_defaults(func=cmd_create_project)

    p = sub.add_parser("annotate", help="batch-annotate a project")
    p.add_argument("--project", required=True)
    p.add_argument("--out", help="write standoff JSON here")
    p.add_argument("--annotator", help="annotator for the standoff export")
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("agreement", help="two-rater agreement report")
    p.add_argument("--project", required=True)
    p.add_argument("--r1", required=True)
    p.add_argument("--r2", required=True)
    p.add_argument("--task", required=True)
    p.set_defaults(func=cmd_agreement)

    p = sub.add_parser("train-meta", help="train the context classifier for a task")
    p.add_argument("--project", required=True)
    p.add_argument("--task", required=True)
    p.add_argument("--window", type=int, default=7)
    p.add_argument("--seed", type=int, default=13)
    p.set_defaults(func=cmd_train_meta)

    p = sub.add_parser("export-training", help="export task labels as CSV")
    p.add_argument("--project", required=True)
    p.add_argument("--task", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--window", type=int, default=7)
    p.set_defaults(func=cmd_export_training)

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--port", type=int)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--ui", help="directory with the built browser client")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except WorkbenchError as exc:
        if args.json:
            print(json.dumps({"code": exc.code, "message": exc.message}),
                  file=sys.stderr)
        else:
            print(f"error [{exc.code}]: {exc.message}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
