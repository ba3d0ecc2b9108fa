"""Independent reference computations used only by the tests."""

from __future__ import annotations

import itertools
from fractions import Fraction


def partitions(n: int, largest: int | None = None):
    """Yield every partition of ``n`` as a nonincreasing tuple."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def overpartition_count_by_enumeration(n: int) -> int:
    """Walk every partition of ``n``; each contributes 2^(number of distinct part sizes).

    Partitions are visited as multiplicity choices for part sizes n, n-1, ..., 1
    without materializing tuples (no memoization, so this is a true enumeration).
    """
    if n == 0:
        return 1
    return _weighted_walk(n, n)


def _weighted_walk(rem: int, j: int) -> int:
    if rem == 0:
        return 1
    if j == 1:
        return 2
    total = _weighted_walk(rem, j - 1)
    left = rem - j
    while left >= 0:
        total += 2 * _weighted_walk(left, j - 1) if left else 2
        left -= j
    return total


def overpartitions_explicit(n: int) -> list[tuple]:
    """All overpartitions of ``n`` listed explicitly as (part, overlined) tuples."""
    out = []
    for p in partitions(n):
        sizes = sorted(set(p), reverse=True)
        for flags in itertools.product((False, True), repeat=len(sizes)):
            marks = dict(zip(sizes, flags))
            seen = set()
            parts = []
            for part in p:
                over = marks[part] and part not in seen
                seen.add(part)
                parts.append((part, over))
            out.append(tuple(parts))
    return out


def overpartitions_theta(n_max: int) -> list[int]:
    """``pbar(n) = 2 * sum_{k>=1} (-1)^(k+1) pbar(n - k^2)``.

    Comes from ``prod (1 - q^n)/(1 + q^n) = sum_k (-1)^k q^(k^2)``.
    """
    vals = [1] + [0] * n_max
    for m in range(1, n_max + 1):
        total = 0
        k = 1
        while k * k <= m:
            total += vals[m - k * k] if k % 2 else -vals[m - k * k]
            k += 1
        vals[m] = 2 * total
    return vals


def leibniz_det(matrix) -> int:
    size = len(matrix)
    total = 0
    for perm in itertools.permutations(range(size)):
        inversions = sum(1 for i in range(size) for j in range(i + 1, size) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for i, j in enumerate(perm):
            term *= matrix[i][j]
        total += term
    return total


def fraction_det(matrix) -> Fraction:
    """Plain Gaussian elimination over the rationals."""
    m = [[Fraction(v) for v in row] for row in matrix]
    size = len(m)
    det = Fraction(1)
    for c in range(size):
        pivot = next((r for r in range(c, size) if m[r][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, size):
            factor = m[r][c] / m[c][c]
            for j in range(c, size):
                m[r][j] -= factor * m[c][j]
    return det
