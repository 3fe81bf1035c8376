"""Ext from the second exterior power, computed two ways.

The chain-level model is a homotopy pullback of small bar complexes for Σ2.
The closed form comes from the API. Both agree below the truncation edge.
"""

# %%
from polyext.api import lambda2_closed, ext
from polyext.models import lambda2_pullback_complex

D = 10

# %%
for n in range(2, 6):
    model = lambda2_pullback_complex(n, D)
    chain = model.ext()
    closed, period = lambda2_closed(n, D)
    agree = all(chain[d] == closed[d] for d in range(D - 1))
    print(f"n={n}  ranks={model.complex.ranks()}")
    print(f"   chain  {chain.format()}")
    print(f"   closed {closed.format()}  [{period}]  agree below {D - 1}: {agree}")

# %% [markdown]
# Odd n picks up a Z/2 in every second degree from RP^∞. Even n stays free
# and concentrated. Asking the API for both methods runs the comparison itself.

# %%
r = ext("Lambda^2", "Lambda^5", max_degree=D, method="both")
print(r.format())

# %% [markdown]
# n = 1 falls outside the range where the model is meant to be used, and the
# result carries a warning saying so.

# %%
print(lambda2_pullback_complex(1, 6).warnings)
