"""Regenerate tests/golden/ from the oracle implementations.

    python tests/make_goldens.py

Keyword extraction, sentiment labels and the Louvain partition itself come
from kwnet (each is checked by its own tests); network construction, pruning,
properties, strengths, centralities, CDFs, rankings, RBO and modularity are
recomputed here by the oracles. Only the output formatting helpers are shared
so the files can be compared byte for byte.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import networkx as nx

HERE = Path(__file__).resolve().parent
sys.path.insert(0, str(HERE))

import oracles  # noqa: E402
from kwnet._io import round_float, write_csv, write_json  # noqa: E402
from kwnet.analytics import louvain  # noqa: E402
from kwnet.corpus import load_corpus  # noqa: E402
from kwnet.network import ArtifactRules, KeywordNetwork, NodeInfo, default_artifacts_path  # noqa: E402
from kwnet.rake import LengthSetting, extract_corpus, load_stopwords  # noqa: E402
from kwnet.sentiment import label_documents, load_lexicon  # noqa: E402

GOLDEN = HERE / "golden"
FIXTURE_SWEEP = HERE / "data" / "fixture_sweep.json"


def fixture_configs():
    cfg = json.loads(FIXTURE_SWEEP.read_text())
    out = []
    for length in cfg["axes"]["length_settings"]:
        for subset in ["positive", "negative", "neutral", "all", "none"]:
            if subset not in cfg["axes"]["sentiment_subsets"]:
                continue
            for thr in sorted(float(t) for t in cfg["axes"]["relevance_thresholds"]):
                slug = f"{subset}_{length}_t{thr:g}_m1_strip"
                out.append((slug, length, subset, thr))
    return cfg, out


def build_all():
    cfg, configs = fixture_configs()
    corpus = load_corpus(HERE / "data" / cfg["corpus"])
    rules = ArtifactRules.load(default_artifacts_path("twitter"))
    stopwords = load_stopwords()
    labels = {i: lab.value for i, (_, lab) in label_documents(corpus, load_lexicon()).items()}
    extracted = {}
    results = []
    for slug, length, subset, thr in configs:
        if length not in extracted:
            extracted[length] = extract_corpus(corpus, stopwords, LengthSetting.parse(length))
        docs = extracted[length]
        if subset not in ("all", "none"):
            docs = [d for d in docs if labels[d.id] == subset]
        sets = oracles.doc_keyword_sets(docs, rules.exact, rules.contains)
        counts, min_rel, edges = oracles.cooccurrence(sets)
        counts, min_rel, edges = oracles.prune(counts, min_rel, edges, threshold=thr)
        g = oracles.to_nx(counts, edges)
        results.append((slug, length, subset, thr, counts, min_rel, edges, g))
    return cfg, results


def main():
    cfg, results = build_all()
    GOLDEN.mkdir(exist_ok=True)
    analysis = cfg["analysis"]

    rows = []
    for slug, length, subset, thr, counts, _, edges, g in results:
        n, m, total, largest = oracles.graph_properties(g)
        rows.append([slug, "cooccurrence", length, subset, thr, 1, "true", n, m, round_float(total), largest])
    write_csv(GOLDEN / "properties.csv", [
        "setup", "mode", "length_setting", "sentiment_subset", "relevance_threshold",
        "min_doc_freq", "strip_noise", "num_nodes", "num_edges", "total_edge_weight", "largest_component",
    ], rows)

    metrics = {
        "node_strength": {r[0]: oracles.strengths(r[7]) for r in results},
        "degree_centrality": {r[0]: oracles.degree_centralities(r[7]) for r in results},
    }
    subsets = []
    for r in results:
        if r[2] not in subsets:
            subsets.append(r[2])
    for subset in subsets:
        slugs = [r[0] for r in results if r[2] == subset]
        for metric, per_slug in metrics.items():
            rankings = {s: oracles.ranking(per_slug[s]) for s in slugs}
            for p in sorted(analysis["rbo_p"]):
                mat_rows = []
                for i, a in enumerate(slugs):
                    row = [a]
                    for j, b in enumerate(slugs):
                        if j < i:
                            row.append("")
                        elif rankings[a] == rankings[b]:
                            row.append(1.0)
                        else:
                            row.append(oracles.rbo_ext(rankings[a], rankings[b], p))
                    mat_rows.append(row)
                write_csv(GOLDEN / f"rbo_{metric}_{subset}_p{p:g}.csv", ["rbo_ext"] + slugs, mat_rows)

    combined, comm_rows = {}, []
    for slug, length, subset, thr, counts, min_rel, edges, g in results:
        net = KeywordNetwork(nodes={t: NodeInfo(t, counts[t], min_rel[t]) for t in sorted(counts)}, edges=dict(edges))
        part = louvain(net, seed=cfg["seed"])
        groups = {}
        for v, c in part.assignment.items():
            groups.setdefault(c, []).append(v)
        strength = oracles.strengths(g)
        q = nx.community.modularity(g, [set(v) for v in groups.values()], weight="weight") if edges else 0.0
        n = g.number_of_nodes()
        listed, covered = [], 0
        for c in sorted(groups, key=lambda c: (-len(groups[c]), c)):
            top = sorted(groups[c], key=lambda v: (-strength[v], v))[: analysis["top_k"]]
            listed.append({
                "community": c,
                "size": len(groups[c]),
                "top_nodes": top,
                "top_strengths": [round_float(strength[v]) for v in top],
            })
            covered += len(groups[c])
            if covered / n > analysis["coverage"]:
                break
        combined[slug] = {
            "seed": cfg["seed"],
            "resolution": 1.0,
            "coverage": analysis["coverage"],
            "top_k": analysis["top_k"],
            "modularity": round_float(q),
            "level_modularity": [round_float(x) for x in part.levels],
            "num_nodes": n,
            "num_communities": len(groups),
            "covered_fraction": round_float(covered / n if n else 0.0),
            "communities": listed,
        }
        for rank, c in enumerate(listed, start=1):
            comm_rows.append([slug, rank, c["community"], c["size"], "; ".join(c["top_nodes"])])
    write_json(GOLDEN / "communities.json", combined)
    write_csv(GOLDEN / "communities.csv", ["setup", "rank", "community", "size", "top_nodes"], comm_rows)

    for metric, per_slug in metrics.items():
        rows = []
        for slug in [r[0] for r in results]:
            for v, frac in oracles.cdf(per_slug[slug].values()):
                rows.append([slug, v, frac])
        write_csv(GOLDEN / f"cdf_{metric}.csv", ["setup", "value", "cumulative_fraction"], rows)

    print(f"wrote goldens to {GOLDEN}")


if __name__ == "__main__":
    main()
