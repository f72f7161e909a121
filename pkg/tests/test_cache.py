import json

import pytest

from evictlab import families
from evictlab.bounds import bound_report
from evictlab.cache import Cache, CacheRecord, resolve_path
from evictlab.graph import Graph6Error, emit_graph6


def fill(cache, *graphs):
    for g in graphs:
        cache.put(CacheRecord.from_report(g, bound_report(g)))


def test_put_lookup_and_canonical_alias(tmp_path):
    cache = Cache(tmp_path / "c.jsonl")
    c7 = families.cycle(7)
    fill(cache, c7)
    rec = cache.lookup(c7)
    assert rec.eviction == 4 and rec.graph6 == emit_graph6(c7)
    relabelled = c7.relabel([3, 0, 6, 1, 5, 2, 4])
    assert emit_graph6(relabelled) != rec.graph6
    assert cache.lookup(relabelled) is not None
    assert cache.lookup(families.path(3)) is None


def test_record_keys_must_parse(tmp_path):
    p = tmp_path / "c.jsonl"
    fill(Cache(p), families.path(2))
    obj = json.loads(p.read_text())
    obj["graph6"] = ":bad"
    p.write_text(json.dumps(obj) + "\n")
    with pytest.raises(Graph6Error):
        list(Cache(p).records())


def test_verify_detects_tampering(tmp_path):
    p = tmp_path / "c.jsonl"
    cache = Cache(p)
    fill(cache, families.cycle(5), families.path(4), families.spider(2))
    assert cache.verify(5) == []
    lines = p.read_text().splitlines()
    obj = json.loads(lines[0])
    obj["eviction"] += 1
    lines[0] = json.dumps(obj)
    p.write_text("\n".join(lines) + "\n")
    bad = Cache(p).verify(5)
    assert len(bad) == 1


def test_other_versions_are_ignored(tmp_path):
    cache = Cache(tmp_path / "c.jsonl")
    rec = CacheRecord.from_report(families.cycle(5), bound_report(families.cycle(5)))
    rec.solver_version = "0.0.0"
    cache.put(rec)
    assert cache.lookup(families.cycle(5)) is None


def test_clear(tmp_path):
    cache = Cache(tmp_path / "c.jsonl")
    fill(cache, families.path(2), families.path(3))
    assert cache.clear() == 2
    assert list(cache.records()) == []


def test_path_resolution(monkeypatch, tmp_path):
    monkeypatch.setenv("EVICTLAB_CACHE", str(tmp_path / "env.jsonl"))
    assert resolve_path(None) == tmp_path / "env.jsonl"
    assert resolve_path(str(tmp_path / "flag.jsonl")) == tmp_path / "flag.jsonl"
    monkeypatch.delenv("EVICTLAB_CACHE")
    assert resolve_path(None).name.endswith(".jsonl")
