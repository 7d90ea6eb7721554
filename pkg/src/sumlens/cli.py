"""Command-line interface: ``sumlens {summarize,baseline,batch,compare,distribution,mine}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import statistics
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from sumlens.bayes import generate_summary
from sumlens.document import extract_concepts, read_document, tokenize
from sumlens.errors import ParameterError, SumlensError
from sumlens.evaluation import lead_baseline, random_baseline, score_all, wilcoxon_signed_rank, zipf_table
from sumlens.evaluation.rouge import METRICS
from sumlens.features import filter_generic
from sumlens.itemsets import TransactionSet, itemsets_to_rows, mine_frequent_itemsets
from sumlens.pipeline import STRATEGIES, RunConfig, resolve_lexicon, summarize

log = logging.getLogger("sumlens")

RESULT_FIELDS = ("doc_id", "system", "metric", "recall", "precision", "f1")
MEAN_ID = "__mean__"
DOC_SUFFIXES = (".json", ".txt")


def _write_text(path, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def config_from_args(args) -> RunConfig:
    overrides = {
        "strategy": getattr(args, "strategy", None),
        "threshold_kind": getattr(args, "threshold_kind", None),
        "epsilon": getattr(args, "epsilon", None),
        "phi": getattr(args, "phi", None),
        "compression_rate": getattr(args, "compression_rate", None),
        "lexicon_path": getattr(args, "lexicon", None),
        "stoplist_path": getattr(args, "stoplist", None),
        "seed": getattr(args, "seed", None),
    }
    if getattr(args, "no_coefficients", False):
        overrides["use_coefficients"] = False
    if getattr(args, "no_redundancy_reduction", False):
        overrides["redundancy_reduction"] = False
    if getattr(args, "fallback_all", False):
        overrides["fallback_all"] = True
    return RunConfig.load(getattr(args, "config", None), **overrides)


# -- commands ----------------------------------------------------------------


def cmd_summarize(args) -> int:
    config = config_from_args(args)
    lexicon = resolve_lexicon(config)
    result = summarize(read_document(args.input), lexicon, config)
    _write_text(args.output, result.text + "\n")
    if args.report:
        Path(args.report).write_text(json.dumps(result.report(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return 0


def cmd_baseline(args) -> int:
    config = config_from_args(args)
    doc = read_document(args.input)
    if args.kind == "lead":
        summary = lead_baseline(doc, config.compression_rate)
    else:
        summary = random_baseline(doc, config.compression_rate, config.seed)
    _write_text(args.output, generate_summary(summary, doc) + "\n")
    return 0


def corpus_files(corpus) -> list[Path]:
    root = Path(corpus)
    if not root.is_dir():
        raise ParameterError(f"corpus directory {root} does not exist")
    files = sorted(p for p in root.iterdir() if p.is_file() and p.suffix.lower() in DOC_SUFFIXES)
    if not files:
        raise ParameterError(f"corpus directory {root} holds no .json or .txt documents")
    return files


def _evaluate_one(task):
    """Summarize and score one corpus file; returns (doc_id, rows, summary_text)."""
    path, system, config = task
    doc_id = Path(path).stem
    try:
        doc = read_document(path)
        doc_id = doc.id
        if not doc.has_abstract:
            return doc_id, [(doc_id, system, "skipped:no_abstract", "", "", "")], None
        if system == "lead":
            summary = lead_baseline(doc, config.compression_rate)
        elif system == "random":
            summary = random_baseline(doc, config.compression_rate, config.seed)
        else:
            summary = summarize(doc, resolve_lexicon(config), config).summary
        text = generate_summary(summary, doc)
        scores = score_all(tokenize(text), tokenize(doc.abstract_text))
    except (SumlensError, OSError, ValueError) as exc:
        code = getattr(exc, "code", type(exc).__name__)
        log.warning("skipping %s: %s", path, exc)
        return doc_id, [(doc_id, system, f"skipped:{code}", "", "", "")], None
    rows = [(doc_id, system, m, _fmt(s.recall), _fmt(s.precision), _fmt(s.f1)) for m, s in scores.items()]
    return doc_id, rows, text


def cmd_batch(args) -> int:
    config = config_from_args(args)
    files = corpus_files(args.corpus)
    system = args.system if args.system != "bayes" else f"bayes-{config.strategy}"
    metrics = args.metrics or list(METRICS)
    tasks = [(str(p), args.system, config) for p in files]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_evaluate_one, tasks))
    else:
        results = [_evaluate_one(t) for t in tasks]

    rows = []
    sums: dict[str, list[tuple[float, float, float]]] = {m: [] for m in metrics}
    for doc_id, doc_rows, text in results:
        for row in doc_rows:
            row = (row[0], system) + row[2:]
            if row[2] in METRICS and row[2] not in metrics:
                continue
            rows.append(row)
            if row[2] in sums:
                sums[row[2]].append(tuple(float(x) for x in row[3:]))
        if args.summaries and text is not None:
            out = Path(args.summaries)
            out.mkdir(parents=True, exist_ok=True)
            (out / f"{doc_id}.txt").write_text(text + "\n", encoding="utf-8")
    for m in metrics:
        if sums[m]:
            means = [statistics.fmean(col) for col in zip(*sums[m])]
            rows.append((MEAN_ID, system, m, *(_fmt(x) for x in means)))
    _write_text(args.output, _csv_text(RESULT_FIELDS, rows))
    return 0


def read_results(path, metric: str, field: str = "f1") -> dict[str, float]:
    out = {}
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            if row["metric"] == metric and row["doc_id"] != MEAN_ID:
                out[row["doc_id"]] = float(row[field])
    return out


def cmd_compare(args) -> int:
    a = read_results(args.results_a, args.metric, args.field)
    b = read_results(args.results_b, args.metric, args.field)
    shared = sorted(set(a) & set(b))
    if not shared:
        raise ParameterError("the two result files share no doc_id for this metric")
    result = wilcoxon_signed_rank([a[d] for d in shared], [b[d] for d in shared], method=args.method)
    report = {"metric": args.metric, "field": args.field, "documents": len(shared), **result.to_dict()}
    _write_text(args.output, json.dumps(report, indent=2, sort_keys=True) + "\n")
    return 0


def cmd_distribution(args) -> int:
    config = config_from_args(args)
    lexicon = resolve_lexicon(config)
    source = {"bodies": "body", "abstracts": "abstract"}[args.source]
    annotations = []
    for path in corpus_files(args.corpus):
        try:
            doc = read_document(path)
        except (SumlensError, OSError) as exc:
            log.warning("skipping %s: %s", path, exc)
            continue
        if source == "abstract" and not doc.has_abstract:
            continue
        annotations.append(extract_concepts(doc, lexicon, source))
    table = zipf_table(annotations)
    _write_text(args.output, _csv_text(("rank", "concept_id", "occurrence_count"), table))
    return 0


def cmd_mine(args) -> int:
    config = config_from_args(args)
    lexicon = resolve_lexicon(config)
    ann = filter_generic(extract_concepts(read_document(args.input), lexicon), lexicon.generic_semantic_types)
    itemsets = mine_frequent_itemsets(TransactionSet.from_annotations(ann), config.phi)
    rows = [(items, count, _fmt(support)) for items, count, support in itemsets_to_rows(itemsets)]
    _write_text(args.output, _csv_text(("items", "support_count", "support"), rows))
    return 0


# -- parser ------------------------------------------------------------------


def _add_common(p, *, pipeline=True):
    p.add_argument("--config", help="JSON config file (default: $SUMLENS_CONFIG)")
    p.add_argument("--lexicon", help="TSV lexicon (default: bundled demo lexicon)")
    p.add_argument("--stoplist", help="generic semantic types, one per line")
    p.add_argument("--compression-rate", type=float)
    p.add_argument("--seed", type=int)
    if pipeline:
        p.add_argument("--strategy", choices=STRATEGIES)
        p.add_argument("--threshold-kind", choices=("theta1", "theta2", "theta3"))
        p.add_argument("--epsilon", type=float)
        p.add_argument("--phi", type=float)
        p.add_argument("--no-coefficients", action="store_true")
        p.add_argument("--no-redundancy-reduction", action="store_true")
        p.add_argument("--fallback-all", action="store_true", help="use all concepts when a strategy selects none")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sumlens", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("summarize", help="summarize one document")
    p.add_argument("--input", required=True)
    p.add_argument("--output", help="summary text file (default: stdout)")
    p.add_argument("--report", help="write a JSON report here")
    _add_common(p)
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("baseline", help="lead or random baseline summary")
    p.add_argument("--input", required=True)
    p.add_argument("--kind", choices=("lead", "random"), default="lead")
    p.add_argument("--output")
    _add_common(p, pipeline=False)
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("batch", help="summarize and score a corpus against its abstracts")
    p.add_argument("--corpus", required=True)
    p.add_argument("--output", help="results CSV (default: stdout)")
    p.add_argument("--system", choices=("bayes", "lead", "random"), default="bayes")
    p.add_argument("--metrics", nargs="+", choices=METRICS)
    p.add_argument("--summaries", help="directory for per-document summaries")
    p.add_argument("--jobs", type=int, default=1)
    _add_common(p)
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("compare", help="Wilcoxon signed-rank test between two results CSVs")
    p.add_argument("results_a")
    p.add_argument("results_b")
    p.add_argument("--metric", "--metrics", dest="metric", choices=METRICS, default="r2")
    p.add_argument("--field", choices=("recall", "precision", "f1"), default="f1")
    p.add_argument("--method", choices=("auto", "normal", "exact"), default="auto")
    p.add_argument("--output")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("distribution", help="rank-frequency table of corpus concepts")
    p.add_argument("--corpus", required=True)
    p.add_argument("--source", choices=("bodies", "abstracts"), default="bodies")
    p.add_argument("--output")
    _add_common(p, pipeline=False)
    p.set_defaults(func=cmd_distribution)

    p = sub.add_parser("mine", help="frequent concept itemsets of one document")
    p.add_argument("--input", required=True)
    p.add_argument("--phi", type=float)
    p.add_argument("--output")
    _add_common(p, pipeline=False)
    p.set_defaults(func=cmd_mine)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except SumlensError as exc:
        sys.stderr.write(json.dumps(exc.to_dict()) + "\n")
        return 2
    except OSError as exc:
        sys.stderr.write(json.dumps({"error": "IOError", "message": str(exc)}) + "\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(json.dumps({"error": "ValueError", "message": str(exc)}) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
