"""Experiment grids over preprocessing decisions, with on-disk artifacts and reports.

Sweep file grammar (JSON, or YAML for ``.yml``/``.yaml``)::

    corpus: path                     # required, JSON Lines
    profile: twitter | scopus        # optional defaults, see PROFILES
    mode: cooccurrence | author
    stopwords / lexicon / artifacts: path   # defaults: bundled files
    strict: bool                     # strict corpus parsing
    seed: int                        # Louvain seed; KWNET_SEED overrides
    axes:
      length_settings: ["1-1", "1-3", ...]
      sentiment_subsets: [positive, negative, neutral, all, none]
      relevance_thresholds: [0, 1.0, 4.0]    # co-occurrence only
      min_doc_freqs: [1]                     # co-occurrence only
      strip_noise: [true]
    analysis:
      communities: bool
      coverage: 0.9
      top_k: 5
      rbo_p: [0.9, 0.99]
      rbo_variant: ext | min

Relative paths are resolved against the sweep file's directory. Subset
``none`` skips sentiment scoring entirely (bibliographic corpora); it selects
the same documents as ``all``.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import os
import shutil
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

import yaml

from . import __version__
from ._io import read_csv, round_float, sha256_file, write_csv, write_json
from .analytics import cdf, community_report, degree_centrality, louvain, node_strength, properties
from .corpus import load_corpus
from .network import (
    AUTHOR,
    COOCCURRENCE,
    ArtifactRules,
    build_author_network,
    build_cooccurrence,
    default_artifacts_path,
    prune_min_doc_freq,
    prune_single_occurrence,
    write_network,
)
from .rake import (
    PAPER_LENGTH_SETTINGS,
    LengthSetting,
    default_stopwords_path,
    extract_corpus,
    load_stopwords,
    read_extracted,
    write_extracted,
)
from .ranking import RboParams, rank_nodes, rbo_matrix
from .sentiment import default_lexicon_path, label_documents, load_lexicon

SUBSETS = ("positive", "negative", "neutral", "all", "none")
METRICS = ("node_strength", "degree_centrality")
REPORT_KINDS = ("properties", "rbo", "communities", "cdf")

PROFILES = {
    "twitter": {
        "mode": COOCCURRENCE,
        "artifacts_profile": "twitter",
        "axes": {
            "length_settings": list(PAPER_LENGTH_SETTINGS),
            "sentiment_subsets": ["positive", "negative", "neutral", "all"],
            "relevance_thresholds": [0.0, 1.0, 4.0],
            "min_doc_freqs": [1],
            "strip_noise": [True],
        },
        "analysis": {"communities": False},
    },
    "scopus": {
        "mode": COOCCURRENCE,
        "artifacts_profile": "scopus",
        "axes": {
            "length_settings": list(PAPER_LENGTH_SETTINGS),
            "sentiment_subsets": ["none"],
            "relevance_thresholds": [0.0],
            "min_doc_freqs": [5],
            "strip_noise": [True],
        },
        "analysis": {"communities": True},
    },
    "author": {
        "mode": AUTHOR,
        "artifacts_profile": "twitter",
        "axes": {
            "length_settings": list(PAPER_LENGTH_SETTINGS),
            "sentiment_subsets": ["all"],
            "strip_noise": [False, True],
        },
        "analysis": {"communities": False},
    },
}


class SweepError(ValueError):
    pass


@dataclass(frozen=True)
class PipelineConfig:
    length_setting: LengthSetting
    sentiment_subset: str = "all"
    relevance_threshold: float = 0.0
    min_doc_freq: int = 1
    strip_noise: bool = True
    network_mode: str = COOCCURRENCE
    seed: int = 0

    @property
    def slug(self) -> str:
        noise = "strip" if self.strip_noise else "keep"
        if self.network_mode == AUTHOR:
            return f"author_{self.sentiment_subset}_{self.length_setting}_{noise}"
        return (
            f"{self.sentiment_subset}_{self.length_setting}"
            f"_t{self.relevance_threshold:g}_m{self.min_doc_freq}_{noise}"
        )

    def to_dict(self) -> dict:
        d = asdict(self)
        d["length_setting"] = str(self.length_setting)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "PipelineConfig":
        d = dict(d)
        d["length_setting"] = LengthSetting.parse(d["length_setting"])
        return cls(**d)


@dataclass
class SweepConfig:
    corpus: Path
    mode: str = COOCCURRENCE
    length_settings: tuple = tuple(LengthSetting.parse(s) for s in PAPER_LENGTH_SETTINGS)
    sentiment_subsets: tuple = ("all",)
    relevance_thresholds: tuple = (0.0,)
    min_doc_freqs: tuple = (1,)
    strip_noise: tuple = (True,)
    seed: int = 0
    stopwords: Path | None = None
    lexicon: Path | None = None
    artifacts: Path | None = None
    strict: bool = False
    communities: bool = True
    coverage: float = 0.9
    top_k: int = 5
    rbo_p: tuple = (0.9, 0.99)
    rbo_variant: str = "ext"
    profile: str | None = None

    def __post_init__(self):
        if self.mode not in (COOCCURRENCE, AUTHOR):
            raise SweepError(f"unknown network mode {self.mode!r}")
        self.length_settings = tuple(sorted({LengthSetting.parse(s) for s in self.length_settings}))
        bad = [s for s in self.sentiment_subsets if s not in SUBSETS]
        if bad:
            raise SweepError(f"unknown sentiment subset(s) {bad}")
        self.sentiment_subsets = tuple(s for s in SUBSETS if s in set(self.sentiment_subsets))
        self.relevance_thresholds = tuple(sorted({float(t) for t in self.relevance_thresholds}))
        self.min_doc_freqs = tuple(sorted({int(m) for m in self.min_doc_freqs}))
        self.strip_noise = tuple(sorted({bool(s) for s in self.strip_noise}))
        self.rbo_p = tuple(sorted({float(p) for p in self.rbo_p}))
        for name in ("length_settings", "sentiment_subsets", "relevance_thresholds", "min_doc_freqs", "strip_noise"):
            if not getattr(self, name):
                raise SweepError(f"axis {name!r} is empty")
        if any(t < 0 for t in self.relevance_thresholds):
            raise SweepError("relevance thresholds must be nonnegative")
        if any(m < 1 for m in self.min_doc_freqs):
            raise SweepError("min_doc_freqs must be >= 1")
        if self.mode == AUTHOR and (self.relevance_thresholds != (0.0,) or self.min_doc_freqs != (1,)):
            raise SweepError("relevance_thresholds and min_doc_freqs apply to co-occurrence sweeps only")
        for p in self.rbo_p or (0.9,):
            RboParams(p, self.rbo_variant)

    @property
    def needs_sentiment(self) -> bool:
        return any(s in ("positive", "negative", "neutral") for s in self.sentiment_subsets)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["length_settings"] = [str(s) for s in self.length_settings]
        for key in ("corpus", "stopwords", "lexicon", "artifacts"):
            d[key] = None if d[key] is None else str(d[key])
        for key in ("sentiment_subsets", "relevance_thresholds", "min_doc_freqs", "strip_noise", "rbo_p"):
            d[key] = list(d[key])
        return d


_TOP_KEYS = {"corpus", "profile", "mode", "stopwords", "lexicon", "artifacts", "strict", "seed", "axes", "analysis"}
_AXIS_KEYS = {"length_settings", "sentiment_subsets", "relevance_thresholds", "min_doc_freqs", "strip_noise"}
_ANALYSIS_KEYS = {"communities", "coverage", "top_k", "rbo_p", "rbo_variant"}


def sweep_from_dict(raw: dict, base_dir=None) -> SweepConfig:
    unknown = set(raw) - _TOP_KEYS
    if unknown:
        raise SweepError(f"unknown sweep key(s): {sorted(unknown)}")
    if "corpus" not in raw:
        raise SweepError("sweep file must name a corpus")
    base = Path(base_dir) if base_dir is not None else Path(".")

    def resolve(p):
        if p is None:
            return None
        p = Path(p)
        return p if p.is_absolute() else base / p

    profile = raw.get("profile")
    if profile is not None and profile not in PROFILES:
        raise SweepError(f"unknown profile {profile!r}; expected one of {sorted(PROFILES)}")
    defaults = PROFILES.get(profile, {})
    axes = dict(defaults.get("axes", {}))
    raw_axes = raw.get("axes") or {}
    if set(raw_axes) - _AXIS_KEYS:
        raise SweepError(f"unknown axis key(s): {sorted(set(raw_axes) - _AXIS_KEYS)}")
    axes.update(raw_axes)
    analysis = dict(defaults.get("analysis", {}))
    raw_analysis = raw.get("analysis") or {}
    if set(raw_analysis) - _ANALYSIS_KEYS:
        raise SweepError(f"unknown analysis key(s): {sorted(set(raw_analysis) - _ANALYSIS_KEYS)}")
    analysis.update(raw_analysis)

    artifacts = resolve(raw.get("artifacts"))
    if artifacts is None and "artifacts_profile" in defaults:
        artifacts = default_artifacts_path(defaults["artifacts_profile"])

    seed = int(raw.get("seed", 0))
    if os.environ.get("KWNET_SEED"):
        seed = int(os.environ["KWNET_SEED"])

    kwargs = dict(
        corpus=resolve(raw["corpus"]),
        mode=raw.get("mode", defaults.get("mode", COOCCURRENCE)),
        seed=seed,
        stopwords=resolve(raw.get("stopwords")),
        lexicon=resolve(raw.get("lexicon")),
        artifacts=artifacts,
        strict=bool(raw.get("strict", False)),
        profile=profile,
    )
    for key in _AXIS_KEYS:
        if key in axes:
            kwargs[key] = tuple(axes[key])
    for key in _ANALYSIS_KEYS:
        if key in analysis:
            kwargs[key] = tuple(analysis[key]) if key == "rbo_p" else analysis[key]
    return SweepConfig(**kwargs)


def load_sweep(path) -> SweepConfig:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    raw = yaml.safe_load(text) if path.suffix in (".yml", ".yaml") else json.loads(text)
    if not isinstance(raw, dict):
        raise SweepError("sweep file must contain a mapping")
    return sweep_from_dict(raw, base_dir=path.parent)


def expand(sweep: SweepConfig) -> list[PipelineConfig]:
    """Cross-product of the sweep axes, ordered lexicographically by axis."""
    thresholds = sweep.relevance_thresholds if sweep.mode == COOCCURRENCE else (0.0,)
    min_docs = sweep.min_doc_freqs if sweep.mode == COOCCURRENCE else (1,)
    return [
        PipelineConfig(length, subset, thr, mdf, strip, sweep.mode, sweep.seed)
        for length, subset, thr, mdf, strip in itertools.product(
            sweep.length_settings, sweep.sentiment_subsets, thresholds, min_docs, sweep.strip_noise
        )
    ]


def summarize(values) -> dict:
    vals = list(values)
    if not vals:
        return {"min": None, "max": None, "mean": None, "median": None}
    return {
        "min": round_float(min(vals)),
        "max": round_float(max(vals)),
        "mean": round_float(statistics.fmean(vals)),
        "median": round_float(statistics.median(vals)),
    }


def network_metrics(net) -> dict:
    props = properties(net)
    return {
        "properties": {
            "num_nodes": props.num_nodes,
            "num_edges": props.num_edges,
            "total_edge_weight": round_float(props.total_edge_weight),
            "largest_component": props.largest_component,
        },
        "degree_centrality": summarize(degree_centrality(net).values()),
        "node_strength": summarize(node_strength(net).values()),
    }


def write_cdf(path, values) -> None:
    write_csv(path, ["value", "cumulative_fraction"], cdf(values))


def write_ranking(path, values) -> None:
    write_csv(path, ["rank", "label", "value"], ((i, v, values[v]) for i, v in enumerate(rank_nodes(values), start=1)))


def read_ranking(path) -> list[str]:
    """Labels from a ranking CSV (``rank,label,value``) or a plain one-per-line file."""
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        first = fh.readline()
    if first.strip().split(",")[:2] == ["rank", "label"]:
        return [row["label"] for row in read_csv(path)]
    return [line.strip() for line in path.read_text(encoding="utf-8").splitlines() if line.strip()]


def report_dict(report, partition) -> dict:
    return {
        "seed": report.seed,
        "resolution": partition.resolution,
        "coverage": report.coverage,
        "top_k": report.top_k,
        "modularity": round_float(report.modularity),
        "level_modularity": [round_float(q) for q in partition.levels],
        "num_nodes": report.num_nodes,
        "num_communities": report.num_communities,
        "covered_fraction": round_float(report.covered_fraction),
        "communities": [
            {
                "community": c.community_id,
                "size": c.size,
                "top_nodes": list(c.top_nodes),
                "top_strengths": [round_float(s) for s in c.top_strengths],
            }
            for c in report.communities
        ],
    }


def analyse_network(net, config: PipelineConfig, out_dir: Path, analysis: dict) -> list[Path]:
    """Write network files, metrics, CDFs, rankings and (optionally) communities."""
    out_dir.mkdir(parents=True, exist_ok=True)
    files = write_network(net, out_dir)
    metrics = network_metrics(net)
    metrics["config"] = config.to_dict()
    write_json(out_dir / "metrics.json", metrics)
    files.append(out_dir / "metrics.json")
    values = {"node_strength": node_strength(net), "degree_centrality": degree_centrality(net)}
    for name, vec in values.items():
        write_cdf(out_dir / f"cdf_{name}.csv", vec)
        write_ranking(out_dir / f"ranking_{name}.csv", vec)
        files += [out_dir / f"cdf_{name}.csv", out_dir / f"ranking_{name}.csv"]
    if analysis.get("communities"):
        part = louvain(net, seed=config.seed)
        report = community_report(net, part, analysis["coverage"], analysis["top_k"])
        write_json(out_dir / "communities.json", report_dict(report, part))
        files.append(out_dir / "communities.json")
    return files


def _select(docs, subset, labels):
    if subset in ("all", "none"):
        return docs
    return [d for d in docs if labels[d.id] == subset]


def _run_group(job) -> list[dict]:
    """Build one base network and derive every pruned configuration from it."""
    configs, docs, rules, out_root, analysis = job
    head = configs[0]
    entries = []
    try:
        if head.network_mode == AUTHOR:
            base = build_author_network(docs, head.strip_noise, rules)
        else:
            base = build_cooccurrence(docs, rules if head.strip_noise else None)
    except Exception as exc:  # noqa: BLE001 - recorded in the manifest
        return [_failed(c, exc) for c in configs]
    for config in configs:
        try:
            net = base
            if config.network_mode == COOCCURRENCE:
                net = prune_single_occurrence(net, config.relevance_threshold)
                net = prune_min_doc_freq(net, config.min_doc_freq)
            cdir = Path(out_root) / "configs" / config.slug
            files = analyse_network(net, config, cdir, analysis)
            entries.append({
                "slug": config.slug,
                "config": config.to_dict(),
                "status": "ok",
                "error": None,
                "skipped_docs": net.skipped_docs,
                "files": {str(p.relative_to(out_root)): sha256_file(p) for p in sorted(files)},
            })
        except Exception as exc:  # noqa: BLE001
            entries.append(_failed(config, exc))
    return entries


def _failed(config, exc) -> dict:
    return {
        "slug": config.slug,
        "config": config.to_dict(),
        "status": "failed",
        "error": f"{type(exc).__name__}: {exc}",
        "skipped_docs": 0,
        "files": {},
    }


def _extract_job(args):
    docs, stopwords, setting = args
    return extract_corpus(docs, stopwords, setting)


def extraction_key(corpus_digest: str, stopwords_digest: str, setting: LengthSetting) -> str:
    return hashlib.sha256(f"{corpus_digest}:{stopwords_digest}:{setting}".encode()).hexdigest()[:16]


def run(sweep: SweepConfig, out_dir, jobs: int = 1) -> dict:
    """Execute every configuration of ``sweep`` and write the artifact tree.

    Layout under ``out_dir``: ``manifest.json``, ``sentiment.csv`` (when a
    sentiment subset is requested), ``extraction/`` (cache keyed by corpus,
    stopwords and length setting) and ``configs/<slug>/``.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for stale in ("configs", "reports"):
        if (out / stale).is_dir():
            shutil.rmtree(out / stale)

    corpus = load_corpus(sweep.corpus, strict=sweep.strict)
    stopwords_path = sweep.stopwords
    stopwords = load_stopwords(stopwords_path)
    rules = ArtifactRules.load(sweep.artifacts) if sweep.artifacts else ArtifactRules()
    digests = {
        "corpus": sha256_file(sweep.corpus),
        "stopwords": sha256_file(stopwords_path) if stopwords_path else "bundled:" + sha256_file(default_stopwords_path()),
        "artifacts": sha256_file(sweep.artifacts) if sweep.artifacts else None,
        "lexicon": None,
    }

    labels = {}
    sentiment_entry = None
    if sweep.needs_sentiment:
        lexicon = load_lexicon(sweep.lexicon)
        digests["lexicon"] = sha256_file(sweep.lexicon) if sweep.lexicon else "bundled:" + sha256_file(default_lexicon_path())
        scored = label_documents(corpus, lexicon)
        labels = {doc_id: label.value for doc_id, (_, label) in scored.items()}
        spath = out / "sentiment.csv"
        write_csv(spath, ["id", "compound", "label"], ((i, c, lab.value) for i, (c, lab) in scored.items()))
        sentiment_entry = {"file": "sentiment.csv", "sha256": sha256_file(spath)}

    # extraction cache, shared by every configuration with the same length setting
    cache_dir = out / "extraction"
    cache_dir.mkdir(exist_ok=True)
    extracted, extraction_entries, todo = {}, [], []
    for setting in sweep.length_settings:
        key = extraction_key(digests["corpus"], digests["stopwords"], setting)
        path = cache_dir / f"extract_{setting}_{key}.jsonl"
        if path.exists():
            extracted[setting] = read_extracted(path)
        else:
            todo.append((setting, path))
    if todo:
        jobs_args = [(corpus.documents, stopwords, s) for s, _ in todo]
        results = _map(_extract_job, jobs_args, jobs)
        for (setting, path), docs in zip(todo, results):
            write_extracted(docs, path)
            extracted[setting] = docs
    keep = set()
    for setting in sweep.length_settings:
        key = extraction_key(digests["corpus"], digests["stopwords"], setting)
        path = cache_dir / f"extract_{setting}_{key}.jsonl"
        keep.add(path.name)
        extraction_entries.append({
            "length_setting": str(setting),
            "key": key,
            "file": str(path.relative_to(out)),
            "sha256": sha256_file(path),
        })
    for stale in cache_dir.iterdir():
        if stale.name not in keep:
            stale.unlink()

    configs = expand(sweep)
    analysis = {"communities": sweep.communities, "coverage": sweep.coverage, "top_k": sweep.top_k}
    groups: dict[tuple, list[PipelineConfig]] = {}
    for c in configs:
        groups.setdefault((c.length_setting, c.sentiment_subset, c.strip_noise), []).append(c)
    group_jobs = [
        (cs, _select(extracted[k[0]], k[1], labels), rules, str(out), analysis)
        for k, cs in groups.items()
    ]
    entries = [e for batch in _map(_run_group, group_jobs, jobs) for e in batch]
    order = {c.slug: i for i, c in enumerate(configs)}
    entries.sort(key=lambda e: order[e["slug"]])

    manifest = {
        "tool": "kwnet",
        "version": __version__,
        "seed": sweep.seed,
        "rbo_variant": sweep.rbo_variant,
        "sweep": sweep.to_dict(),
        "inputs": digests,
        "corpus_documents": len(corpus),
        "corpus_skipped_lines": corpus.skipped,
        "sentiment": sentiment_entry,
        "extraction": extraction_entries,
        "configs": entries,
    }
    write_json(out / "manifest.json", manifest)
    return manifest


def _map(fn, items, jobs):
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


class ReportError(RuntimeError):
    pass


def _load_manifest(artifacts) -> dict:
    path = Path(artifacts) / "manifest.json"
    if not path.exists():
        raise ReportError(f"no manifest.json in {artifacts}")
    return json.loads(path.read_text(encoding="utf-8"))


def _need(root: Path, rel: str) -> Path:
    path = root / rel
    if not path.exists():
        raise ReportError(f"missing artifact {rel}")
    return path


def compare_report(artifacts, kinds=REPORT_KINDS, out_dir=None) -> dict:
    """Build comparison tables from a sweep's artifact tree.

    Returns ``{"files": [...], "notices": [...]}``; files land in
    ``<artifacts>/reports`` unless ``out_dir`` is given.
    """
    root = Path(artifacts)
    manifest = _load_manifest(root)
    out = Path(out_dir) if out_dir is not None else root / "reports"
    out.mkdir(parents=True, exist_ok=True)
    ok = [e for e in manifest["configs"] if e["status"] == "ok"]
    files, notices = [], []
    unknown = set(kinds) - set(REPORT_KINDS)
    if unknown:
        raise ReportError(f"unknown report kind(s) {sorted(unknown)}")

    if "properties" in kinds:
        rows = []
        for e in ok:
            m = json.loads(_need(root, f"configs/{e['slug']}/metrics.json").read_text(encoding="utf-8"))
            c, p = e["config"], m["properties"]
            rows.append([
                e["slug"], c["network_mode"], c["length_setting"], c["sentiment_subset"],
                c["relevance_threshold"], c["min_doc_freq"], str(c["strip_noise"]).lower(),
                p["num_nodes"], p["num_edges"], p["total_edge_weight"], p["largest_component"],
            ])
        path = out / "properties.csv"
        write_csv(path, [
            "setup", "mode", "length_setting", "sentiment_subset", "relevance_threshold",
            "min_doc_freq", "strip_noise", "num_nodes", "num_edges", "total_edge_weight", "largest_component",
        ], rows)
        files.append(path)

    if "rbo" in kinds:
        by_subset: dict[str, list[dict]] = {}
        for e in ok:
            by_subset.setdefault(e["config"]["sentiment_subset"], []).append(e)
        p_values = manifest["sweep"]["rbo_p"]
        variant = manifest.get("rbo_variant", "ext")
        for subset, group in by_subset.items():
            if len(group) < 2:
                notices.append(f"rbo: subset {subset!r} has a single configuration; skipped")
                continue
            for metric in METRICS:
                rankings = {e["slug"]: read_ranking(_need(root, f"configs/{e['slug']}/ranking_{metric}.csv")) for e in group}
                for p in p_values:
                    labels, mat = rbo_matrix(rankings, RboParams(p, variant))
                    path = out / f"rbo_{metric}_{subset}_p{p:g}.csv"
                    rows = [[lab] + [("" if j < i else mat[i][j]) for j in range(len(labels))] for i, lab in enumerate(labels)]
                    write_csv(path, [f"rbo_{variant}"] + labels, rows)
                    files.append(path)

    if "communities" in kinds:
        combined, rows = {}, []
        for e in ok:
            rel = f"configs/{e['slug']}/communities.json"
            if rel not in e["files"]:
                continue
            rep = json.loads(_need(root, rel).read_text(encoding="utf-8"))
            combined[e["slug"]] = rep
            for rank, c in enumerate(rep["communities"], start=1):
                rows.append([e["slug"], rank, c["community"], c["size"], "; ".join(c["top_nodes"])])
        if not combined:
            notices.append("communities: no configuration has community results; skipped")
        else:
            write_json(out / "communities.json", combined)
            write_csv(out / "communities.csv", ["setup", "rank", "community", "size", "top_nodes"], rows)
            files += [out / "communities.json", out / "communities.csv"]

    if "cdf" in kinds:
        for metric in METRICS:
            rows = []
            for e in ok:
                for r in read_csv(_need(root, f"configs/{e['slug']}/cdf_{metric}.csv")):
                    rows.append([e["slug"], r["value"], r["cumulative_fraction"]])
            path = out / f"cdf_{metric}.csv"
            write_csv(path, ["setup", "value", "cumulative_fraction"], rows)
            files.append(path)

    return {"files": [str(f) for f in files], "notices": notices}
