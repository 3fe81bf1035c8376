"""
Index sets for the bases of all complexes: surjections, compositions and
partitions, plus the Stirling / Bell / partition counts.

Surjections are tuples ``a`` of length n with values in 1..k hitting every
value; they are listed lexicographically so matrix bases are reproducible.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial

from .errors import IndexOutOfRange, InvalidParameter

Surjection = tuple
Composition = tuple


def _check_nonneg(*xs):
    for x in xs:
        if not isinstance(x, int) or x < 0:
            raise InvalidParameter(f"expected a non-negative integer, got {x!r}")


@lru_cache(maxsize=None)
def surjections(n: int, k: int) -> tuple[Surjection, ...]:
    """All surjections {1..n} -> {1..k} in lexicographic order."""
    _check_nonneg(n, k)
    if k > n or (k == 0 and n > 0):
        return ()
    if n == 0:
        return ((),)
    out = []

    def rec(prefix, missing):
        remaining = n - len(prefix)
        if remaining == 0:
            if not missing:
                out.append(tuple(prefix))
            return
        if len(missing) > remaining:
            return
        for v in range(1, k + 1):
            prefix.append(v)
            rec(prefix, missing - {v})
            prefix.pop()

    rec([], frozenset(range(1, k + 1)))
    return tuple(out)


def is_surjection(a, k: int) -> bool:
    return set(a) == set(range(1, k + 1))


def merge(a: Surjection, i: int) -> Surjection:
    """Identify the values i and i+1 of a surjection onto {1..k}.

    Values above i+1 move down by one, so the result is onto {1..k-1}.
    """
    k = max(a, default=0)
    if not 1 <= i <= k - 1:
        raise IndexOutOfRange(f"merge index {i} outside 1..{k - 1}")
    return tuple(v if v <= i else v - 1 for v in a)


@lru_cache(maxsize=None)
def compositions(n: int, m: int) -> tuple[Composition, ...]:
    """Ordered tuples of m positive integers summing to n, lexicographic."""
    _check_nonneg(n, m)
    if m == 0:
        return ((),) if n == 0 else ()
    if m == 1:
        return ((n,),) if n >= 1 else ()
    return tuple(
        (first,) + rest for first in range(1, n - m + 2) for rest in compositions(n - first, m - 1)
    )


def composition_of(a: Surjection, m: int) -> Composition:
    """The fibre sizes of a surjection, i.e. its Sigma_n orbit in Comp(n, m)."""
    return tuple(sum(1 for v in a if v == j) for j in range(1, m + 1))


@lru_cache(maxsize=None)
def partitions(n: int, m: int) -> tuple[tuple[int, ...], ...]:
    """Partitions of the number n into exactly m parts, as non-increasing tuples."""
    _check_nonneg(n, m)

    def rec(n, m, cap):
        if m == 0:
            return [()] if n == 0 else []
        out = []
        for first in range(min(n - m + 1, cap), 0, -1):
            for rest in rec(n - first, m - 1, first):
                out.append((first,) + rest)
        return out

    return tuple(rec(n, m, n))


def partitions_count(n: int, m: int) -> int:
    """Part(n, m): partitions of n into exactly m positive parts."""
    _check_nonneg(n, m)
    return _part(n, m)


@lru_cache(maxsize=None)
def _part(n, m):
    if n == 0 and m == 0:
        return 1
    if n <= 0 or m <= 0 or m > n:
        return 0
    # either some part equals 1, or subtract 1 from every part
    return _part(n - 1, m - 1) + _part(n - m, m)


def partition_number(n: int) -> int:
    """Total number of partitions of the number n."""
    _check_nonneg(n)
    return sum(_part(n, m) for m in range(0, n + 1))


@lru_cache(maxsize=None)
def stirling(n: int, m: int) -> int:
    """Stirling number of the second kind S(n, m)."""
    _check_nonneg(n, m)
    if n == m:
        return 1
    if m == 0 or m > n:
        return 0
    return m * stirling(n - 1, m) + stirling(n - 1, m - 1)


def bell(n: int) -> int:
    _check_nonneg(n)
    return sum(stirling(n, m) for m in range(n + 1))


def surjection_count(n: int, k: int) -> int:
    """|sur(n, k)| = k! S(n, k) without enumerating."""
    return factorial(k) * stirling(n, k)


def composition_count(n: int, m: int) -> int:
    _check_nonneg(n, m)
    if m == 0:
        return int(n == 0)
    return comb(n - 1, m - 1) if n >= 1 else 0


def set_partitions(n: int):
    """Brute-force enumeration of set partitions of {1..n} as restricted growth strings."""
    _check_nonneg(n)

    def rec(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(top + 2):
            prefix.append(v)
            yield from rec(prefix, max(top, v))
            prefix.pop()

    yield from rec([], -1)


def composition_orbits(n: int, d: int):
    """Orbits of Sigma_d permuting the entries of Comp(n, d).

    Returns pairs (representative, stabilizer block sizes); the stabilizer is
    the product of Sigma_k over the multiplicities k of the distinct values.
    Representatives are the non-increasing compositions, i.e. Part(n, d).
    """
    out = []
    for p in partitions(n, d):
        mult = {}
        for v in p:
            mult[v] = mult.get(v, 0) + 1
        out.append((p, tuple(sorted((k for k in mult.values() if k > 1), reverse=True))))
    return out
