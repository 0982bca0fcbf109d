import json
from pathlib import Path

import pytest

from conftest import DATA
from kwnet import sweep as sw
from kwnet.corpus import load_corpus
from kwnet.rake import LengthSetting, extract_corpus, load_stopwords, read_extracted


def small_sweep(tmp_path, **over):
    raw = {
        "corpus": str(DATA / "fixture.jsonl"),
        "profile": "twitter",
        "axes": {"length_settings": ["1-1", "1-2"], "sentiment_subsets": ["all"], "relevance_thresholds": [0, 1.0]},
        "analysis": {"communities": True},
    }
    raw.update(over)
    return sw.sweep_from_dict(raw)


def tree(root):
    root = Path(root)
    return {str(p.relative_to(root)): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file()}


def test_expand_counts():
    twitter = sw.sweep_from_dict({"corpus": "c.jsonl", "profile": "twitter"})
    assert len(sw.expand(twitter)) == 72
    one = sw.sweep_from_dict({"corpus": "c.jsonl", "axes": {"length_settings": ["1-3"]}})
    assert len(sw.expand(one)) == 1
    author = sw.sweep_from_dict({"corpus": "c.jsonl", "profile": "author"})
    assert len(sw.expand(author)) == 12
    assert len({c.slug for c in sw.expand(twitter)}) == 72


def test_expand_order_and_normalisation():
    s = sw.sweep_from_dict({"corpus": "c", "axes": {
        "length_settings": ["1-2", "1-1", "1-2"], "sentiment_subsets": ["all", "positive"], "relevance_thresholds": [4, 0]}})
    slugs = [c.slug for c in sw.expand(s)]
    assert slugs[0] == "positive_1-1_t0_m1_strip"
    assert slugs[-1] == "all_1-2_t4_m1_strip"
    assert len(slugs) == 8


@pytest.mark.parametrize("raw,msg", [
    ({"corpus": "c", "bogus": 1}, "unknown sweep key"),
    ({"corpus": "c", "axes": {"lengths": ["1-1"]}}, "unknown axis"),
    ({"corpus": "c", "analysis": {"colour": 1}}, "unknown analysis"),
    ({"axes": {}}, "corpus"),
    ({"corpus": "c", "profile": "reddit"}, "profile"),
    ({"corpus": "c", "axes": {"sentiment_subsets": ["happy"]}}, "subset"),
    ({"corpus": "c", "axes": {"relevance_thresholds": [-1]}}, "nonnegative"),
    ({"corpus": "c", "axes": {"min_doc_freqs": [0]}}, "min_doc_freqs"),
    ({"corpus": "c", "profile": "author", "axes": {"relevance_thresholds": [1.0]}}, "co-occurrence"),
    ({"corpus": "c", "axes": {"length_settings": []}}, "empty"),
])
def test_sweep_validation(raw, msg):
    with pytest.raises(sw.SweepError, match=msg):
        sw.sweep_from_dict(raw)


def test_invalid_rbo_p():
    with pytest.raises(ValueError):
        sw.sweep_from_dict({"corpus": "c", "analysis": {"rbo_p": [0.9, 1.5]}})


def test_seed_env_override(monkeypatch):
    monkeypatch.setenv("KWNET_SEED", "42")
    assert sw.sweep_from_dict({"corpus": "c", "seed": 3}).seed == 42
    monkeypatch.delenv("KWNET_SEED")
    assert sw.sweep_from_dict({"corpus": "c", "seed": 3}).seed == 3


def test_yaml_and_json_equivalent(tmp_path):
    (tmp_path / "s.yaml").write_text("corpus: data.jsonl\nprofile: scopus\naxes:\n  length_settings: ['1-2']\n", encoding="utf-8")
    (tmp_path / "s.json").write_text(json.dumps({"corpus": "data.jsonl", "profile": "scopus", "axes": {"length_settings": ["1-2"]}}))
    a, b = sw.load_sweep(tmp_path / "s.yaml"), sw.load_sweep(tmp_path / "s.json")
    assert a == b
    assert a.corpus == tmp_path / "data.jsonl"
    assert a.min_doc_freqs == (5,) and a.sentiment_subsets == ("none",)


def test_run_deterministic_and_manifest_complete(tmp_path):
    s = small_sweep(tmp_path)
    m1 = sw.run(s, tmp_path / "a")
    sw.run(s, tmp_path / "b")
    assert tree(tmp_path / "a") == tree(tmp_path / "b")
    listed = []
    for e in m1["configs"]:
        assert e["status"] == "ok"
        listed += list(e["files"])
    listed += [e["file"] for e in m1["extraction"]]
    on_disk = sorted(k for k in tree(tmp_path / "a") if k not in ("manifest.json", "sentiment.csv"))
    assert sorted(listed) == on_disk
    assert len(listed) == len(set(listed))
    assert (tmp_path / "a" / "configs" / "all_1-1_t0_m1_strip" / "communities.json").exists()


def test_rerun_uses_cache_and_matches_fresh(tmp_path):
    s = small_sweep(tmp_path)
    first = sw.run(s, tmp_path / "out")
    before = tree(tmp_path / "out")
    second = sw.run(s, tmp_path / "out")
    assert first == second and tree(tmp_path / "out") == before
    corpus = load_corpus(DATA / "fixture.jsonl")
    fresh = extract_corpus(corpus.documents, load_stopwords(), LengthSetting(1, 2))
    cached = next(e for e in first["extraction"] if e["length_setting"] == "1-2")
    assert read_extracted(tmp_path / "out" / cached["file"]) == fresh


def test_sentiment_subsets_written(tmp_path):
    s = small_sweep(tmp_path, axes={"length_settings": ["1-1"], "sentiment_subsets": ["positive", "negative", "neutral", "all"]})
    m = sw.run(s, tmp_path / "out")
    assert m["sentiment"]["file"] == "sentiment.csv"
    nodes = {}
    for e in m["configs"]:
        nodes[e["config"]["sentiment_subset"]] = json.loads((tmp_path / "out" / "configs" / e["slug"] / "metrics.json").read_text())
    assert nodes["all"]["properties"]["num_nodes"] >= nodes["positive"]["properties"]["num_nodes"]


def test_zero_document_corpus(tmp_path):
    empty = tmp_path / "empty.jsonl"
    empty.write_text("")
    s = sw.sweep_from_dict({"corpus": str(empty), "axes": {"length_settings": ["1-1"]}})
    m = sw.run(s, tmp_path / "out")
    assert m["corpus_documents"] == 0
    (entry,) = m["configs"]
    assert entry["status"] == "ok"
    metrics = json.loads((tmp_path / "out" / "configs" / entry["slug"] / "metrics.json").read_text())
    assert metrics["properties"]["num_nodes"] == 0


def test_failed_config_recorded_others_proceed(tmp_path, monkeypatch):
    real = sw.analyse_network

    def flaky(net, config, out_dir, analysis):
        if config.relevance_threshold == 1.0:
            raise RuntimeError("boom")
        return real(net, config, out_dir, analysis)

    monkeypatch.setattr(sw, "analyse_network", flaky)
    m = sw.run(small_sweep(tmp_path), tmp_path / "out")
    status = {e["slug"]: e["status"] for e in m["configs"]}
    assert sorted(status.values()) == ["failed", "failed", "ok", "ok"]
    failed = [e for e in m["configs"] if e["status"] == "failed"]
    assert all("boom" in e["error"] for e in failed)


def test_compare_report_two_configs(tmp_path):
    s = small_sweep(tmp_path, axes={"length_settings": ["1-2"], "sentiment_subsets": ["all"], "relevance_thresholds": [0, 1.0]})
    sw.run(s, tmp_path / "out")
    res = sw.compare_report(tmp_path / "out")
    reports = tmp_path / "out" / "reports"
    assert len((reports / "properties.csv").read_text().splitlines()) == 3
    rbo = (reports / "rbo_node_strength_all_p0.9.csv").read_text().splitlines()
    assert len(rbo) == 3 and rbo[0].startswith("rbo_ext,")
    assert rbo[1].split(",")[1] == "1"
    assert res["notices"] == []


def test_compare_report_single_config_notice(tmp_path):
    s = small_sweep(tmp_path, axes={"length_settings": ["1-1"], "sentiment_subsets": ["all"], "relevance_thresholds": [0]})
    sw.run(s, tmp_path / "out")
    res = sw.compare_report(tmp_path / "out", kinds=("properties", "rbo"))
    assert len(res["files"]) == 1
    assert any("single configuration" in n for n in res["notices"])


def test_compare_report_missing_artifact(tmp_path):
    s = small_sweep(tmp_path, axes={"length_settings": ["1-1"], "sentiment_subsets": ["all"], "relevance_thresholds": [0]})
    m = sw.run(s, tmp_path / "out")
    (tmp_path / "out" / "configs" / m["configs"][0]["slug"] / "metrics.json").unlink()
    with pytest.raises(sw.ReportError, match="metrics.json"):
        sw.compare_report(tmp_path / "out", kinds=("properties",))
    with pytest.raises(sw.ReportError):
        sw.compare_report(tmp_path / "nowhere")


def test_parallel_matches_serial(tmp_path):
    s = small_sweep(tmp_path)
    sw.run(s, tmp_path / "serial", jobs=1)
    sw.run(s, tmp_path / "par", jobs=2)
    assert tree(tmp_path / "serial") == tree(tmp_path / "par")
