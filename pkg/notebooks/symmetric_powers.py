"""Ext groups from abelianization into symmetric powers.

Run with `python notebooks/symmetric_powers.py`. Cells are marked with `# %%`
so the file also opens as a notebook in editors that understand that format.
"""

# %%
from polyext.complexes import homology
from polyext.models import symmetric_power_complex, tensor_symmetric_complex
from polyext.algebra import direct_sum

# %% [markdown]
# The complex for S^n has one generator per subset of {1..n-1}, written as the
# increasing chain ending in n. Its differentials for n = 4:

# %%
C = symmetric_power_complex(4)
for k in range(C.min_deg, C.max_deg):
    print(k, C.basis(k + 1), "->", C.basis(k))
    for row in C.differential(k).to_dense():
        print("   ", row)

# %% [markdown]
# Homology of these complexes fills the table row by row. Every group is torsion
# and the primes that show up stay at or below n.

# %%
for n in range(1, 10):
    print(n, homology(symmetric_power_complex(n)).format())

# %% [markdown]
# Tensor powers in the source split into one tensor product per composition of n.

# %%
parts = tensor_symmetric_complex(2, 4)
for C in parts:
    print(C.ranks(), homology(C).format())
print("total:", direct_sum(homology(C) for C in parts).format())
