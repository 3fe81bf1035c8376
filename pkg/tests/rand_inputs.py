"""Random inputs shared by the property tests."""

import random

from hypothesis import strategies as st

from polyext.algebra import IntegerMatrix
from polyext.complexes import BoundedComplex, HOMOLOGICAL


def unimodular_pair(rng: random.Random, n: int, steps: int = 8):
    """A random unimodular n x n matrix together with its inverse."""
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    Q = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        # P <- E P with E = I + c e_ij ; Q <- Q E^{-1}
        P[i] = [a + c * b for a, b in zip(P[i], P[j])]
        for row in Q:
            row[j] -= c * row[i]
    if n and rng.random() < 0.5:
        k = rng.randrange(n)
        P[k] = [-a for a in P[k]]
        for row in Q:
            row[k] = -row[k]
    return IntegerMatrix.from_dense(P, n, n), IntegerMatrix.from_dense(Q, n, n)


def random_complex(rng: random.Random, max_rank=3, max_deg=3, orientation=HOMOLOGICAL):
    """A random complex with prescribed elementary pieces, disguised by a change of basis.

    Pieces are free generators and 'Z --a--> Z' blocks between adjacent
    degrees, so any torsion pattern can occur.
    """
    s = -1 if orientation is HOMOLOGICAL else 1
    degrees = list(range(0, max_deg + 1))
    rank = {d: 0 for d in degrees}
    pieces = []  # (source degree, scalar, source index, target index)
    for d in degrees:
        t = d + s
        if t in rank:
            for _ in range(rng.randint(0, 1)):
                if rank[d] < max_rank and rank[t] < max_rank:
                    pieces.append((d, rng.choice([1, 2, 3, 4, 6, -2]), rank[d], rank[t]))
                    rank[d] += 1
                    rank[t] += 1
    for d in degrees:
        rank[d] += rng.randint(0, max(0, max_rank - rank[d]))
    diffs = {}
    for d in degrees:
        t = d + s
        if t not in rank:
            continue
        entries = {(ti, si): a for (sd, a, si, ti) in pieces if sd == d}
        diffs[d] = IntegerMatrix(rank[t], rank[d], entries)
    changes = {d: unimodular_pair(rng, rank[d]) for d in degrees}
    new = {}
    for d, M in diffs.items():
        P, _ = changes[d + s]
        _, Qinv = changes[d]
        new[d] = P @ M @ Qinv
    basis = {d: list(range(rank[d])) for d in degrees}
    return BoundedComplex(orientation, basis, new)


seeds = st.integers(min_value=0, max_value=2**32 - 1)

small_matrices = st.integers(1, 6).flatmap(
    lambda m: st.integers(1, 6).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)
