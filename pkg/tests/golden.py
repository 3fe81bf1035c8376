"""Golden values shared by the test modules."""

from polyext.algebra import FgAbGroup, GradedAbGroup

# Ext^i(ab, S^n∘ab) for n <= 9, as {n: {i: torsion orders}}
SYMMETRIC_TABLE = {
    1: {0: None},
    2: {1: [2]},
    3: {1: [3], 2: [2]},
    4: {1: [2], 2: [3], 3: [2]},
    5: {1: [5], 2: [2], 4: [2]},
    6: {2: [10], 3: [6], 5: [2]},
    7: {1: [7], 3: [2], 4: [6], 6: [2]},
    8: {1: [2], 2: [7], 3: [2], 4: [2], 5: [2], 7: [2]},
    9: {1: [3], 2: [2], 4: [2], 5: [6], 6: [2], 8: [2]},
}

# H^k(Σ_3; Z) for k <= 5, from the unnormalized bar oracle in bar_oracle.py
SIGMA3_COHOMOLOGY = {0: (1, []), 1: (0, []), 2: (0, [2]), 3: (0, []), 4: (0, [6]), 5: (0, [])}


def symmetric_row(n: int) -> GradedAbGroup:
    row = SYMMETRIC_TABLE[n]
    return GradedAbGroup.from_dict(
        {i: FgAbGroup.free(1) if t is None else FgAbGroup.from_orders(0, t) for i, t in row.items()}
    )
