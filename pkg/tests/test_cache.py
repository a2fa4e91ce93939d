from __future__ import annotations

import json
import threading

from zetaforge.cache import SumCache, default_cache_dir
from zetaforge.precision import ctx_new
from zetaforge.sums import eval_basis, lam, mu, truncation_bound


def test_hits_are_bit_identical(tmp_path):
    cache = SumCache(tmp_path)
    ctx = ctx_new(60)
    terms = [lam(5), lam(3, 2), mu(2, 2)]
    fresh = eval_basis(terms, ctx, cache)
    assert len(cache.entries()) == 3
    cached = eval_basis(terms, ctx, cache)
    plain = eval_basis(terms, ctx)
    assert [str(v) for v in cached.values] == [str(v) for v in fresh.values] == \
        [str(v) for v in plain.values]


def test_cache_file_format(tmp_path):
    cache = SumCache(tmp_path)
    ctx = ctx_new(30)
    eval_basis([lam(3, 4, 2)], ctx, cache)
    (path,) = tmp_path.glob("*.json")
    doc = json.loads(path.read_text())
    assert doc["term"] == "lambda(3,[4,2])"
    assert doc["digits"] == 30
    assert doc["truncation_k"] == truncation_bound(ctx)
    assert isinstance(doc["value"], str)


def test_partial_hits_mix_with_computation(tmp_path):
    cache = SumCache(tmp_path)
    ctx = ctx_new(40)
    eval_basis([lam(7)], ctx, cache)
    mixed = eval_basis([lam(7), lam(3, 4)], ctx, cache)
    plain = eval_basis([lam(7), lam(3, 4)], ctx)
    assert mixed.values == plain.values


def test_mismatched_file_is_ignored(tmp_path):
    cache = SumCache(tmp_path)
    ctx = ctx_new(30)
    K = truncation_bound(ctx)
    path = cache.put(lam(3), 30, K, ctx.decimal.plus(1))
    doc = json.loads(path.read_text())
    doc["term"] = "lambda(5,[])"
    path.write_text(json.dumps(doc))
    assert cache.get(lam(3), 30, K) is None
    path.write_text("{not json")
    assert cache.get(lam(3), 30, K) is None


def test_clear_and_rerun_reproduces(tmp_path):
    cache = SumCache(tmp_path)
    ctx = ctx_new(50)
    first = eval_basis([lam(5), lam(3, 2)], ctx, cache).values
    assert cache.clear() == 2
    assert cache.entries() == []
    second = eval_basis([lam(5), lam(3, 2)], ctx, cache).values
    assert first == second


def test_concurrent_writes_are_atomic(tmp_path):
    cache = SumCache(tmp_path)
    ctx = ctx_new(40)
    value = eval_basis([lam(3)], ctx).values[0]
    K = truncation_bound(ctx)
    errors = []

    def writer():
        try:
            for _ in range(20):
                cache.put(lam(3), 40, K, value)
                got = cache.get(lam(3), 40, K)
                assert got is None or got == value
        except Exception as exc:  # pragma: no cover - reported below
            errors.append(exc)

    threads = [threading.Thread(target=writer) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors
    assert not list(tmp_path.glob(".tmp-*"))
    assert cache.get(lam(3), 40, K) == value


def test_env_var_overrides_directory(tmp_path, monkeypatch):
    monkeypatch.setenv("ZETAFORGE_CACHE", str(tmp_path / "elsewhere"))
    assert default_cache_dir() == tmp_path / "elsewhere"
    assert SumCache().directory == tmp_path / "elsewhere"


def test_missing_directory_is_empty(tmp_path):
    cache = SumCache(tmp_path / "absent")
    assert cache.entries() == []
    assert cache.clear() == 0
