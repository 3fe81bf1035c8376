from itertools import permutations, product
from math import comb, factorial

import pytest

from polyext.combinatorics import (
    bell,
    composition_count,
    composition_of,
    composition_orbits,
    compositions,
    merge,
    partition_number,
    partitions,
    partitions_count,
    set_partitions,
    stirling,
    surjection_count,
    surjections,
)
from polyext.errors import IndexOutOfRange, InvalidParameter


def brute_surjections(n, k):
    return [a for a in product(range(1, k + 1), repeat=n) if set(a) == set(range(1, k + 1))]


def test_surjection_examples():
    assert surjections(2, 2) == ((1, 2), (2, 1))
    assert len(surjections(3, 2)) == 6
    assert len(brute_surjections(3, 2)) == 6
    for n in range(1, 6):
        assert surjections(n, 1) == ((1,) * n,)
    assert surjections(0, 0) == ((),)
    assert surjections(2, 3) == ()
    assert surjections(2, 0) == ()


def test_surjections_match_brute_force_and_are_sorted():
    for n in range(0, 7):
        for k in range(0, n + 2):
            got = surjections(n, k)
            assert list(got) == sorted(brute_surjections(n, k))
            assert len(got) == surjection_count(n, k)


def test_surjection_count_is_factorial_times_stirling():
    for n in range(0, 9):
        for m in range(0, 9):
            assert len(surjections(n, m)) == factorial(m) * stirling(n, m)


def test_merge_examples():
    assert merge((1, 2), 1) == (1, 1)
    assert merge((1, 3, 2), 2) == (1, 2, 2)
    with pytest.raises(IndexOutOfRange):
        merge((1, 2), 2)
    with pytest.raises(IndexOutOfRange):
        merge((1, 1), 1)


def test_merge_simplicial_identity():
    for n in range(3, 6):
        for k in range(3, n + 1):
            for a in surjections(n, k):
                for i in range(1, k - 1):
                    assert merge(merge(a, i), i) == merge(merge(a, i + 1), i)
                    assert set(merge(a, i)) == set(range(1, k))


def test_compositions_and_partitions():
    assert compositions(4, 2) == ((1, 3), (2, 2), (3, 1))
    assert partitions(4, 2) == ((3, 1), (2, 2))
    assert partitions_count(4, 2) == 2
    for n in range(0, 9):
        for m in range(0, 9):
            comps = compositions(n, m)
            assert len(comps) == composition_count(n, m)
            if n >= 1 and m >= 1:
                assert len(comps) == comb(n - 1, m - 1)
            # partitions = Sigma_m orbits on compositions
            orbits = {tuple(sorted(c, reverse=True)) for c in comps}
            assert len(orbits) == partitions_count(n, m) == len(partitions(n, m))


def test_composition_of_surjection():
    assert composition_of((1, 2, 2, 1, 3), 3) == (2, 2, 1)
    for a in surjections(4, 2):
        assert composition_of(a, 2) in compositions(4, 2)


def test_stirling_bell_examples():
    assert bell(3) == 5
    assert sum(1 for _ in set_partitions(3)) == 5
    for n in range(0, 9):
        assert stirling(n, n) == 1
        assert sum(stirling(n, m) for m in range(n + 1)) == bell(n)
        assert sum(1 for _ in set_partitions(n)) == bell(n)
        if n >= 1:
            assert partitions_count(n, 1) == 1


def test_stirling_counts_set_partitions_by_blocks():
    for n in range(0, 8):
        counts = {}
        for p in set_partitions(n):
            blocks = len(set(p))
            counts[blocks] = counts.get(blocks, 0) + 1
        for m in range(0, n + 1):
            assert counts.get(m, 0) == stirling(n, m)


def test_partition_numbers():
    assert [partition_number(n) for n in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]


def test_composition_orbit_stabilizers():
    for n in range(1, 8):
        for d in range(1, n + 1):
            orbits = composition_orbits(n, d)
            assert len(orbits) == partitions_count(n, d)
            total = 0
            for rep, blocks in orbits:
                stab = 1
                for k in blocks:
                    stab *= factorial(k)
                # brute-force stabilizer of rep under permuting its entries
                brute = sum(1 for p in permutations(range(d)) if tuple(rep[i] for i in p) == rep)
                assert stab == brute
                total += factorial(d) // stab
            assert total == composition_count(n, d)


def test_negative_inputs_rejected():
    with pytest.raises(InvalidParameter):
        surjections(-1, 1)
    with pytest.raises(InvalidParameter):
        stirling(3, -1)
