"""Stable cohomology of aut(F_n) with polynomial coefficients."""

# %%
from polyext.api import stable_cohomology
from polyext.combinatorics import bell, partition_number

# %% [markdown]
# Rationally only the free parts survive. Tensor powers count set partitions
# and exterior powers count integer partitions.

# %%
for n in range(1, 7):
    t = stable_cohomology(f"T^{n}").format()
    l = stable_cohomology(f"Lambda^{n}").format()
    print(n, bell(n), partition_number(n), "|", t, "|", l)

# %%
print("Gamma^3:", stable_cohomology("Gamma^3").format())

# %% [markdown]
# Structural mode lists the summands as classifying spaces of stabilizers
# instead of collapsing them to ranks.

# %%
print(stable_cohomology("Lambda^3", mode="structural").format())
