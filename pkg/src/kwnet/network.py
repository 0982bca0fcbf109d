"""Keyword co-occurrence and author similarity networks.

Node ids are keyword texts (co-occurrence mode) or author ids (author mode).
Edges are stored once per unordered pair, keyed ``(u, v)`` with ``u < v``.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations
from pathlib import Path
from typing import Iterable

from ._io import read_csv, write_csv, write_json
from .rake import ExtractedDoc, ExtractedKeyword

COOCCURRENCE = "cooccurrence"
AUTHOR = "author"


@dataclass(frozen=True)
class NodeInfo:
    label: str
    count: int = 0
    min_relevance_seen: float | None = None
    # raw number of in-document occurrences, kept for comparison with ``count``
    occurrences: int = 0


@dataclass
class KeywordNetwork:
    nodes: dict[str, NodeInfo] = field(default_factory=dict)
    edges: dict[tuple[str, str], float] = field(default_factory=dict)
    mode: str = COOCCURRENCE
    skipped_docs: int = 0

    @property
    def num_nodes(self) -> int:
        return len(self.nodes)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def weight(self, u: str, v: str) -> float:
        return self.edges.get((u, v) if u < v else (v, u), 0)

    def induced(self, keep) -> "KeywordNetwork":
        keep = set(keep)
        return KeywordNetwork(
            nodes={k: v for k, v in self.nodes.items() if k in keep},
            edges={e: w for e, w in self.edges.items() if e[0] in keep and e[1] in keep},
            mode=self.mode,
            skipped_docs=self.skipped_docs,
        )

    def same_graph(self, other: "KeywordNetwork") -> bool:
        return self.nodes == other.nodes and self.edges == other.edges


@dataclass(frozen=True)
class ArtifactRules:
    exact: frozenset = frozenset()
    contains: tuple = ()

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> "ArtifactRules":
        exact, contains = set(), []
        for line in lines:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("contains:"):
                sub = line[len("contains:"):].strip().casefold()
                if sub and sub not in contains:
                    contains.append(sub)
            else:
                exact.add(" ".join(line.casefold().split()))
        return cls(frozenset(exact), tuple(contains))

    @classmethod
    def load(cls, path) -> "ArtifactRules":
        with Path(path).open(encoding="utf-8") as fh:
            return cls.from_lines(fh)

    def matches(self, text: str) -> bool:
        text = text.casefold()
        return text in self.exact or any(sub in text for sub in self.contains)

    def __bool__(self):
        return bool(self.exact or self.contains)


def default_artifacts_path(profile: str = "twitter") -> Path:
    return Path(str(resources.files("kwnet") / "data" / f"artifacts_{profile}.txt"))


def _text(item) -> str:
    return item.keyword_text if isinstance(item, ExtractedKeyword) else item


def remove_subsumed(keywords):
    """Drop keywords whose tokens appear contiguously inside a longer keyword."""
    keywords = list(keywords)
    if len(keywords) < 2:
        return keywords
    texts = [_text(k) for k in keywords]
    lengths = [t.count(" ") + 1 for t in texts]
    if min(lengths) == max(lengths):
        return keywords
    padded = [f" {t} " for t in texts]
    out = []
    for i, k in enumerate(keywords):
        p, n = padded[i], lengths[i]
        if any(lengths[j] > n and p in padded[j] for j in range(len(keywords))):
            continue
        out.append(k)
    return out


def strip_artifacts(keywords, rules: ArtifactRules | None):
    if not rules:
        return list(keywords)
    return [k for k in keywords if not rules.matches(_text(k))]


def document_keywords(doc: ExtractedDoc, rules: ArtifactRules | None) -> list[ExtractedKeyword]:
    return strip_artifacts(remove_subsumed(doc.keywords), rules)


def build_cooccurrence(docs: Iterable[ExtractedDoc], rules: ArtifactRules | None = None) -> KeywordNetwork:
    count: dict[str, int] = defaultdict(int)
    occ: dict[str, int] = defaultdict(int)
    min_rel: dict[str, float] = {}
    edges: dict[tuple[str, str], int] = defaultdict(int)
    for doc in docs:
        kws = document_keywords(doc, rules)
        texts = []
        for k in kws:
            t = k.keyword_text
            texts.append(t)
            count[t] += 1
            occ[t] += k.occurrences
            r = min_rel.get(t)
            if r is None or k.relevance < r:
                min_rel[t] = k.relevance
        if len(texts) > 1:
            texts.sort()
            for pair in combinations(texts, 2):
                edges[pair] += 1
    nodes = {t: NodeInfo(t, count[t], min_rel[t], occ[t]) for t in sorted(count)}
    return KeywordNetwork(nodes=nodes, edges=dict(edges), mode=COOCCURRENCE)


def _require_cooccurrence(net: KeywordNetwork):
    if net.mode != COOCCURRENCE:
        raise ValueError(f"operation requires a {COOCCURRENCE} network, got {net.mode}")


def prune_single_occurrence(net: KeywordNetwork, threshold: float) -> KeywordNetwork:
    """Remove count-1 nodes whose relevance is at or below ``threshold``."""
    _require_cooccurrence(net)
    if threshold < 0:
        raise ValueError("threshold must be nonnegative")
    keep = [
        k for k, info in net.nodes.items()
        if not (info.count == 1 and info.min_relevance_seen <= threshold)
    ]
    if len(keep) == len(net.nodes):
        return net
    return net.induced(keep)


def prune_min_doc_freq(net: KeywordNetwork, min_docs: int) -> KeywordNetwork:
    _require_cooccurrence(net)
    keep = [k for k, info in net.nodes.items() if info.count >= min_docs]
    if len(keep) == len(net.nodes):
        return net
    return net.induced(keep)


def jaccard(a: set, b: set) -> float:
    if not a and not b:
        return 0.0
    return len(a & b) / len(a | b)


def author_keyword_sets(
    docs: Iterable[ExtractedDoc], strip_noise: bool, rules: ArtifactRules | None
) -> tuple[dict[str, set], int]:
    sets: dict[str, set] = {}
    skipped = 0
    for doc in docs:
        if not doc.author_id:
            skipped += 1
            continue
        kws = remove_subsumed(doc.keywords)
        if strip_noise:
            kws = strip_artifacts(kws, rules)
        sets.setdefault(doc.author_id, set()).update(k.keyword_text for k in kws)
    return sets, skipped


def build_author_network(
    docs: Iterable[ExtractedDoc], strip_noise: bool, rules: ArtifactRules | None = None
) -> KeywordNetwork:
    """Authors linked by the Jaccard similarity of their keyword sets.

    Single-occurrence keywords are kept. Documents without an author are
    skipped and counted in ``skipped_docs``.
    """
    sets, skipped = author_keyword_sets(docs, strip_noise, rules)
    users: dict[str, list[str]] = defaultdict(list)
    for author in sorted(sets):
        for kw in sets[author]:
            users[kw].append(author)
    shared: dict[tuple[str, str], int] = defaultdict(int)
    for authors in users.values():
        if len(authors) > 1:
            for pair in combinations(authors, 2):
                shared[pair] += 1
    edges = {}
    for (a, b) in sorted(shared):
        inter = shared[(a, b)]
        edges[(a, b)] = inter / (len(sets[a]) + len(sets[b]) - inter)
    nodes = {a: NodeInfo(a) for a in sorted(sets)}
    return KeywordNetwork(nodes=nodes, edges=edges, mode=AUTHOR, skipped_docs=skipped)


def write_network(net: KeywordNetwork, out_dir) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    nodes_path, edges_path, meta_path = out_dir / "nodes.csv", out_dir / "edges.csv", out_dir / "network.json"
    write_csv(
        nodes_path,
        ["label", "count", "min_relevance_seen", "occurrences"],
        ([n.label, n.count, n.min_relevance_seen, n.occurrences] for _, n in sorted(net.nodes.items())),
    )
    write_csv(edges_path, ["source", "target", "weight"], ([u, v, w] for (u, v), w in sorted(net.edges.items())))
    write_json(meta_path, {"mode": net.mode, "skipped_docs": net.skipped_docs})
    return [nodes_path, edges_path, meta_path]


def read_network(in_dir) -> KeywordNetwork:
    in_dir = Path(in_dir)
    mode, skipped = COOCCURRENCE, 0
    meta = in_dir / "network.json"
    if meta.exists():
        info = json.loads(meta.read_text(encoding="utf-8"))
        mode, skipped = info.get("mode", mode), info.get("skipped_docs", 0)
    nodes = {}
    for row in read_csv(in_dir / "nodes.csv"):
        rel = row.get("min_relevance_seen") or None
        nodes[row["label"]] = NodeInfo(
            row["label"], int(row["count"] or 0), None if rel is None else float(rel), int(row.get("occurrences") or 0)
        )
    edges = {}
    for row in read_csv(in_dir / "edges.csv"):
        u, v = sorted((row["source"], row["target"]))
        w = float(row["weight"])
        edges[(u, v)] = int(w) if mode == COOCCURRENCE and w == int(w) else w
    return KeywordNetwork(nodes=nodes, edges=edges, mode=mode, skipped_docs=skipped)
