"""Exact values of the overpartition function.

The sequence is produced as the convolution of two classical sequences,
partitions into distinct parts and ordinary partitions, since

    prod (1 + q^n) / (1 - q^n) = prod (1 + q^n) * prod 1 / (1 - q^n).

Both factors come from pentagonal-number recurrences, so every value is an
exact Python integer.
"""

from __future__ import annotations

import os
import threading
from operator import mul
from pathlib import Path
from typing import Iterator

__all__ = [
    "CacheFormatError",
    "OverpartitionCache",
    "default_cache",
    "distinct_partition_numbers",
    "load_cache",
    "overpartition",
    "overpartition_range",
    "partition_numbers",
    "save_cache",
    "set_default_cache",
]

CACHE_HEADER = "OPBAR-CACHE v1"


class CacheFormatError(ValueError):
    """Raised when a cache file does not follow the ``OPBAR-CACHE v1`` layout."""


def _generalized_pentagonals(limit: int) -> Iterator[tuple[int, int, int]]:
    # (sign, k(3k-1)/2, k(3k+1)/2) for k = 1, 2, ... while the smaller one is <= limit
    k = 1
    while k * (3 * k - 1) // 2 <= limit:
        yield (1 if k % 2 else -1), k * (3 * k - 1) // 2, k * (3 * k + 1) // 2
        k += 1


def partition_numbers(n_max: int) -> list[int]:
    """Return ``[p(0), ..., p(n_max)]`` by Euler's pentagonal recurrence."""
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max}")
    p = [1] + [0] * n_max
    for m in range(1, n_max + 1):
        total = 0
        for sign, g1, g2 in _generalized_pentagonals(m):
            term = p[m - g1]
            if g2 <= m:
                term += p[m - g2]
            total += term if sign > 0 else -term
        p[m] = total
    return p


def distinct_partition_numbers(n_max: int) -> list[int]:
    """Return ``[q(0), ..., q(n_max)]``, partitions into distinct parts.

    Uses ``Q(x) * prod(1 - x^n) = prod(1 - x^(2n))``: the right side is the
    pentagonal series in ``x^2``, which contributes ``(-1)^j`` whenever
    ``m = j(3j -/+ 1)``.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max}")
    doubled = {}
    for sign, g1, g2 in _generalized_pentagonals(n_max // 2 + 1):
        doubled[2 * g1] = -sign
        doubled[2 * g2] = -sign
    q = [1] + [0] * n_max
    for m in range(1, n_max + 1):
        total = doubled.get(m, 0)
        for sign, g1, g2 in _generalized_pentagonals(m):
            term = q[m - g1]
            if g2 <= m:
                term += q[m - g2]
            total += term if sign > 0 else -term
        q[m] = total
    return q


class OverpartitionCache:
    """Dense, append-only table of exact overpartition numbers.

    Reads of already computed indices need no locking; growing the table is
    serialized by an internal lock.
    """

    def __init__(self, values: list[int] | None = None):
        if values is None:
            values = [1]
        _check_values(values)
        self._values = list(values)
        self._p: list[int] = []
        self._q: list[int] = []
        self._lock = threading.Lock()

    @property
    def n_max(self) -> int:
        return len(self._values) - 1

    @property
    def values(self) -> list[int]:
        return list(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OverpartitionCache):
            return NotImplemented
        return self._values == other._values

    def __repr__(self) -> str:
        return f"OverpartitionCache(n_max={self.n_max})"

    def extend_to(self, n: int) -> None:
        """Make sure every index ``0..n`` is present."""
        if n <= self.n_max:
            return
        with self._lock:
            if n <= self.n_max:
                return
            # grow geometrically so repeated single-step requests stay cheap
            target = max(n, 2 * self.n_max, 64)
            if len(self._p) <= target:
                self._p = partition_numbers(target)
                self._q = distinct_partition_numbers(target)
            p, q = self._p, self._q
            values = self._values
            for m in range(len(values), target + 1):
                values.append(sum(map(mul, q[: m + 1], reversed(p[: m + 1]))))

    def get(self, n: int) -> int:
        if n < 0:
            raise ValueError(f"overpartition index must be nonnegative, got {n}")
        if n > self.n_max:
            self.extend_to(n)
        return self._values[n]

    __getitem__ = get

    def range(self, lo: int, hi: int) -> list[int]:
        if lo < 0:
            raise ValueError(f"lower index must be nonnegative, got {lo}")
        if lo > hi:
            raise ValueError(f"empty range: lo={lo} > hi={hi}")
        self.extend_to(hi)
        return self._values[lo : hi + 1]


def _check_values(values: list[int]) -> None:
    if not values or values[0] != 1:
        raise ValueError("cache must start with pbar(0) = 1")
    for i in range(1, len(values)):
        if values[i] < values[i - 1]:
            raise ValueError(f"cache entries decrease at index {i}")


_default_cache = OverpartitionCache()


def default_cache() -> OverpartitionCache:
    """The process-wide cache used when callers do not pass one."""
    return _default_cache


def set_default_cache(cache: OverpartitionCache) -> None:
    global _default_cache
    _default_cache = cache


def overpartition(n: int, cache: OverpartitionCache | None = None) -> int:
    """Exact number of overpartitions of ``n``.

    >>> overpartition(3)
    8
    """
    return (cache or default_cache()).get(n)


def overpartition_range(lo: int, hi: int, cache: OverpartitionCache | None = None) -> list[int]:
    """Exact values for ``n = lo..hi`` inclusive."""
    return (cache or default_cache()).range(lo, hi)


def save_cache(cache: OverpartitionCache, path: str | os.PathLike) -> None:
    lines = [CACHE_HEADER, f"count={len(cache)}"]
    lines.extend(str(v) for v in cache._values)
    Path(path).write_bytes("\n".join(lines).encode("ascii"))


def load_cache(path: str | os.PathLike) -> OverpartitionCache:
    raw = Path(path).read_bytes()
    try:
        text = raw.decode("ascii")
    except UnicodeDecodeError as exc:
        raise CacheFormatError("cache file is not ASCII") from exc
    if not text:
        raise CacheFormatError("cache file is empty")
    if "\r" in text:
        raise CacheFormatError("cache file must use LF line endings")
    lines = text.split("\n")
    if lines[0] != CACHE_HEADER:
        raise CacheFormatError(f"bad header {lines[0]!r}")
    if len(lines) < 2 or not lines[1].startswith("count="):
        raise CacheFormatError("missing count line")
    count_text = lines[1][len("count=") :]
    if not count_text.isdigit():
        raise CacheFormatError(f"bad count {count_text!r}")
    count = int(count_text)
    body = lines[2:]
    if len(body) != count:
        raise CacheFormatError(f"header says count={count} but file has {len(body)} value lines")
    values = []
    for i, line in enumerate(body):
        if not line.isdigit() or not line.isascii():
            raise CacheFormatError(f"value line {i} is not a decimal integer: {line!r}")
        values.append(int(line))
    try:
        return OverpartitionCache(values)
    except ValueError as exc:
        raise CacheFormatError(str(exc)) from exc
