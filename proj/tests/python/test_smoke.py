import numpy as np
import pytest

import ppart


def random_keys(n, seed=0):
    return np.random.default_rng(seed).integers(-1000, 1000, size=n, dtype=np.int64)


@pytest.mark.parametrize("algorithm", ppart.algorithms())
def test_partition_every_algorithm(algorithm):
    keys = random_keys(5000, seed=len(algorithm))
    before = np.sort(keys)
    report = ppart.partition(keys, 0, algorithm=algorithm, b=4)
    k = report["split"]
    assert k == int(np.count_nonzero(before < 0))
    assert (keys[:k] < 0).all() and (keys[k:] >= 0).all()
    assert np.array_equal(np.sort(keys), before)
    assert ppart.is_partitioned(keys, 0, k)
    assert 0 < report["span"] <= report["work"]


def test_partition_with_observers():
    keys = random_keys(4096, seed=3)
    report = ppart.partition(keys, 0, algorithm="low", audit=True, cache_lines=64)
    assert report["audit_conflicts"] == 0
    assert report["misses"] >= report["lines_touched"] > 0


def test_parallel_mode_matches_serial():
    a = random_keys(20000, seed=5)
    b = a.copy()
    ra = ppart.partition(a, 0, algorithm="smoothed-hybrid", b=8)
    rb = ppart.partition(b, 0, algorithm="smoothed-hybrid", b=8, mode="parallel", workers=2)
    assert np.array_equal(a, b)
    assert ra["work"] == rb["work"] and ra["span"] == rb["span"]


def test_quicksort():
    keys = random_keys(30000, seed=9)
    expect = np.sort(keys)
    ppart.quicksort(keys, impl="bps", workers=4)
    assert np.array_equal(keys, expect)
    same = np.full(1000, 7, dtype=np.int64)
    ppart.quicksort(same)
    assert (same == 7).all()


def test_codec_round_trip():
    n = 255
    length = ppart.block_length(n)
    for value in (0, 1, 128, 255):
        block = random_keys(length, seed=value) % 5
        before = np.sort(block)
        ppart.encode_block(block, value, n)
        assert ppart.decode_block(block, n) == value
        assert np.array_equal(np.sort(block), before)


def test_helpers():
    assert ppart.block_start_index([3, 1], 4, 2, 1, 1) == 1
    assert ppart.block_start_index([3, 1], 4, 2, 1, 2) == 13
    assert ppart.brent_bound(100, 10, 4) == (25, 35)
    keys, pivot = ppart.generate_input(10000, mu=0.3, seed=2)
    assert keys.dtype == np.int64
    assert abs(np.count_nonzero(keys < pivot) / 10000 - 0.3) < 0.03
    assert ppart.count_predecessors(keys, pivot) == np.count_nonzero(keys < pivot)


def test_rejects_bad_input():
    with pytest.raises(Exception):
        ppart.partition(np.zeros(10, dtype=np.int32), 0)
    with pytest.raises(Exception):
        ppart.partition(np.zeros(10, dtype=np.int64), 0, algorithm="nope")
    with pytest.raises(IndexError):
        ppart.block_start_index([3, 1], 4, 2, 5, 1)
