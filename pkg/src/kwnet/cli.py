"""``kwnet`` command line interface."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from ._io import read_csv, write_csv, write_json
from .analytics import community_report, degree_centrality, louvain, node_strength
from .corpus import CorpusError, dump_corpus, load_corpus
from .network import (
    ArtifactRules,
    build_author_network,
    build_cooccurrence,
    default_artifacts_path,
    prune_min_doc_freq,
    prune_single_occurrence,
    read_network,
    write_network,
)
from .rake import LengthSetting, extract_corpus, load_stopwords, read_extracted, write_extracted
from .ranking import RboParams, rbo_matrix
from .sentiment import label_documents, load_lexicon
from .sweep import (
    REPORT_KINDS,
    ReportError,
    SweepError,
    compare_report,
    load_sweep,
    network_metrics,
    read_ranking,
    report_dict,
    run,
    write_cdf,
    write_ranking,
)
from .synth import generate_corpus


def _rules(args) -> ArtifactRules:
    if args.artifacts:
        return ArtifactRules.load(args.artifacts)
    if args.profile:
        return ArtifactRules.load(default_artifacts_path(args.profile))
    return ArtifactRules()


def _extracted_docs(args):
    docs = read_extracted(args.extracted)
    if getattr(args, "subset", None) in ("positive", "negative", "neutral"):
        if not args.sentiment:
            raise SystemExit("--subset needs --sentiment <csv>")
        labels = {r["id"]: r["label"] for r in read_csv(args.sentiment)}
        docs = [d for d in docs if labels.get(d.id) == args.subset]
    return docs


def cmd_load(args):
    corpus = load_corpus(args.corpus, strict=args.strict)
    print(f"{len(corpus)} documents" + (f" ({corpus.skipped} malformed lines skipped)" if corpus.skipped else ""))


def cmd_extract(args):
    corpus = load_corpus(args.corpus, strict=args.strict)
    docs = extract_corpus(corpus, load_stopwords(args.stopwords), LengthSetting(args.min_len, args.max_len))
    write_extracted(docs, args.out)
    print(f"wrote {len(docs)} documents to {args.out}")


def cmd_sentiment(args):
    corpus = load_corpus(args.corpus, strict=args.strict)
    scored = label_documents(corpus, load_lexicon(args.lexicon))
    write_csv(args.out, ["id", "compound", "label"], ((i, c, lab.value) for i, (c, lab) in scored.items()))


def cmd_build_cooc(args):
    net = build_cooccurrence(_extracted_docs(args), _rules(args) if args.strip_noise else None)
    net = prune_single_occurrence(net, args.threshold)
    net = prune_min_doc_freq(net, args.min_doc_freq)
    write_network(net, args.out)
    print(f"{net.num_nodes} nodes, {net.num_edges} edges")


def cmd_build_author(args):
    net = build_author_network(_extracted_docs(args), args.strip_noise, _rules(args))
    write_network(net, args.out)
    msg = f"{net.num_nodes} authors, {net.num_edges} edges"
    if net.skipped_docs:
        msg += f"; {net.skipped_docs} documents without author skipped"
    print(msg)


def cmd_metrics(args):
    net = read_network(args.network)
    out = Path(args.out or args.network)
    out.mkdir(parents=True, exist_ok=True)
    write_json(out / "metrics.json", network_metrics(net))
    for name, vec in (("node_strength", node_strength(net)), ("degree_centrality", degree_centrality(net))):
        write_cdf(out / f"cdf_{name}.csv", vec)
        write_ranking(out / f"ranking_{name}.csv", vec)
    print(json.dumps(network_metrics(net)["properties"]))


def cmd_communities(args):
    net = read_network(args.network)
    part = louvain(net, seed=args.seed)
    rep = report_dict(community_report(net, part, args.coverage, args.top_k), part)
    out = Path(args.out) if args.out else Path(args.network) / "communities.json"
    write_json(out, rep)
    print(f"{rep['num_communities']} communities, modularity {rep['modularity']:.4f}; wrote {out}")


def cmd_rbo(args):
    rankings = {}
    for path in args.inputs:
        path = Path(path)
        # sweep rankings are named by metric, so label them by config directory
        label = path.parent.name if path.stem.startswith("ranking_") else path.stem
        if label in rankings:
            label = str(path)
        rankings[label] = read_ranking(path)
    if len(rankings) < 2:
        raise SystemExit("rbo needs at least two distinct ranked lists")
    rows = []
    for p in args.p or [0.9]:
        labels, mat = rbo_matrix(rankings, RboParams(p, args.variant))
        for i, a in enumerate(labels):
            for j in range(i, len(labels)):
                rows.append([p, args.variant, a, labels[j], mat[i][j]])
    if args.out:
        write_csv(args.out, ["p", "variant", "list_a", "list_b", "rbo"], rows)
    for p, variant, a, b, v in rows:
        if a != b:
            print(f"p={p:g} {a} vs {b}: {v:.3f}")


def cmd_sweep(args):
    sweep = load_sweep(args.config)
    manifest = run(sweep, args.out, jobs=args.jobs)
    failed = [e["slug"] for e in manifest["configs"] if e["status"] != "ok"]
    print(f"{len(manifest['configs'])} configurations, {len(failed)} failed; manifest at {Path(args.out) / 'manifest.json'}")
    for slug in failed:
        print(f"  failed: {slug}", file=sys.stderr)
    return 1 if failed else 0


def cmd_report(args):
    result = compare_report(args.artifacts, args.kind or REPORT_KINDS, args.out)
    for note in result["notices"]:
        print(f"notice: {note}", file=sys.stderr)
    for f in result["files"]:
        print(f)


def cmd_synth(args):
    dump_corpus(generate_corpus(args.docs, args.authors, args.seed), args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kwnet", description=__doc__)
    parser.add_argument("--version", action="version", version=f"kwnet {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("load", help="validate a JSON Lines corpus and print its size")
    p.add_argument("--corpus", required=True)
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_load)

    p = sub.add_parser("extract", help="RAKE keywords per document")
    p.add_argument("--corpus", required=True)
    p.add_argument("--stopwords", help="stopword file (default: bundled English list)")
    p.add_argument("--min-len", type=int, required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("sentiment", help="compound sentiment score and label per document")
    p.add_argument("--corpus", required=True)
    p.add_argument("--lexicon", help="token<TAB>valence file (default: bundled lexicon)")
    p.add_argument("--out", required=True)
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_sentiment)

    for name, func, strip_default in (("build-cooc", cmd_build_cooc, True), ("build-author", cmd_build_author, False)):
        p = sub.add_parser(name, help=f"build a {'co-occurrence' if name == 'build-cooc' else 'author'} network")
        p.add_argument("--extracted", required=True, help="output of `kwnet extract`")
        p.add_argument("--artifacts", help="artifact rules file")
        p.add_argument("--profile", choices=["twitter", "scopus"], help="use bundled artifact rules")
        p.add_argument("--sentiment", help="output of `kwnet sentiment`, needed with --subset")
        p.add_argument("--subset", choices=["positive", "negative", "neutral", "all"], default="all")
        p.add_argument("--strip-noise", action=argparse.BooleanOptionalAction, default=strip_default)
        p.add_argument("--out", required=True, help="output directory")
        if name == "build-cooc":
            p.add_argument("--threshold", type=float, default=0.0)
            p.add_argument("--min-doc-freq", type=int, default=1)
        p.set_defaults(func=func)

    p = sub.add_parser("metrics", help="properties, CDFs and rankings of a network")
    p.add_argument("--network", required=True, help="directory with nodes.csv and edges.csv")
    p.add_argument("--out", help="output directory (default: the network directory)")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("communities", help="Louvain communities and report")
    p.add_argument("--network", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--coverage", type=float, default=0.9)
    p.add_argument("--top-k", type=int, default=5)
    p.add_argument("--out")
    p.set_defaults(func=cmd_communities)

    p = sub.add_parser("rbo", help="rank-biased overlap between ranked lists")
    p.add_argument("--inputs", nargs="+", required=True)
    p.add_argument("--p", type=float, action="append")
    p.add_argument("--variant", choices=["ext", "min"], default="ext")
    p.add_argument("--out")
    p.set_defaults(func=cmd_rbo)

    p = sub.add_parser("sweep", help="run a configuration grid")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("report", help="comparison tables from a sweep")
    p.add_argument("--artifacts", required=True)
    p.add_argument("--kind", action="append", choices=REPORT_KINDS)
    p.add_argument("--out")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("synth", help="write a seeded synthetic corpus")
    p.add_argument("--docs", type=int, default=500)
    p.add_argument("--authors", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args) or 0
    except (CorpusError, SweepError, ReportError, ValueError, FileNotFoundError) as exc:
        print(f"kwnet: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
