import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opbar.exact_seq import (
    CacheFormatError,
    OverpartitionCache,
    distinct_partition_numbers,
    load_cache,
    overpartition,
    overpartition_range,
    partition_numbers,
    save_cache,
)
from oracles import overpartition_count_by_enumeration, overpartitions_explicit, overpartitions_theta


@pytest.mark.parametrize("n, expected", [(0, 1), (3, 8), (5, 24), (2, 4)])
def test_small_values(n, expected):
    assert overpartition(n) == expected


def test_three_listed_explicitly():
    listed = overpartitions_explicit(3)
    assert len(listed) == 8 == overpartition(3)
    assert len(set(listed)) == 8


@pytest.mark.parametrize("n", [2, 5])
def test_small_values_match_enumeration(n):
    assert overpartition(n) == overpartition_count_by_enumeration(n) == len(overpartitions_explicit(n))


def test_matches_enumeration_to_60(enumerated_0_to_60):
    assert overpartition_range(0, 60, OverpartitionCache()) == enumerated_0_to_60


def test_matches_theta_recurrence():
    assert overpartition_range(0, 1500) == overpartitions_theta(1500)


def test_convolution_of_factor_sequences():
    p = partition_numbers(300)
    q = distinct_partition_numbers(300)
    assert p[:11] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    assert q[:13] == [1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10, 12, 15]
    for n in (0, 1, 17, 100, 300):
        assert overpartition(n) == sum(q[k] * p[n - k] for k in range(n + 1))


def test_range():
    assert overpartition_range(0, 4) == [1, 2, 4, 8, 14]
    assert overpartition_range(3, 3) == [8]
    with pytest.raises(ValueError):
        overpartition_range(5, 4)


def test_negative_index_is_an_error():
    with pytest.raises(ValueError):
        overpartition(-1)
    with pytest.raises(ValueError):
        overpartition_range(-2, 3)


def test_strictly_increasing():
    vals = overpartition_range(0, 2000)
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_cache_extends_densely():
    c = OverpartitionCache()
    assert c.n_max == 0
    c.get(10)
    assert c.n_max >= 10
    assert len(c.values) == c.n_max + 1
    before = c.values
    c.get(200)
    assert c.values[: len(before)] == before


@given(st.integers(min_value=0, max_value=400), st.integers(min_value=0, max_value=400))
@settings(max_examples=50, deadline=None)
def test_fresh_caches_agree_regardless_of_growth_order(a, b):
    c1, c2 = OverpartitionCache(), OverpartitionCache()
    c1.get(a)
    c1.get(b)
    c2.get(max(a, b))
    m = max(a, b)
    assert c1.range(0, m) == c2.range(0, m)


def test_rejects_non_increasing_seed():
    with pytest.raises(ValueError):
        OverpartitionCache([1, 2, 1])
    with pytest.raises(ValueError):
        OverpartitionCache([2])


class TestPersistence:
    def test_round_trip(self, tmp_path):
        c = OverpartitionCache()
        c.get(10)
        c = OverpartitionCache(c.values[:11])
        path = tmp_path / "cache.txt"
        save_cache(c, path)
        loaded = load_cache(path)
        assert loaded == c
        assert loaded.values == [1, 2, 4, 8, 14, 24, 40, 64, 100, 154, 232]

    def test_exact_file_layout(self, tmp_path):
        path = tmp_path / "cache.txt"
        save_cache(OverpartitionCache([1, 2, 4, 8]), path)
        assert path.read_bytes() == b"OPBAR-CACHE v1\ncount=4\n1\n2\n4\n8"

    @pytest.mark.parametrize(
        "content",
        [
            b"",
            b"OPBAR-CACHE v1\ncount=3\n1\n2",
            b"OPBAR-CACHE v2\ncount=2\n1\n2",
            b"OPBAR-CACHE v1\ncount=x\n1",
            b"OPBAR-CACHE v1\ncount=2\n1\n+2",
            b"OPBAR-CACHE v1\ncount=2\n1\n2\n",
            b"OPBAR-CACHE v1\r\ncount=2\r\n1\r\n2",
            b"OPBAR-CACHE v1\ncount=2\n1\n1_0",
            b"OPBAR-CACHE v1\ncount=0",
            b"OPBAR-CACHE v1",
        ],
    )
    def test_malformed(self, tmp_path, content):
        path = tmp_path / "bad.txt"
        path.write_bytes(content)
        with pytest.raises(CacheFormatError):
            load_cache(path)
