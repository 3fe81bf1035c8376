"""
Explicit complexes whose (co)homology computes Ext groups between
polynomial functors on free groups.

Each builder returns either a bare :class:`BoundedComplex` or a
:class:`ChainLevelModel`, which adds the affine rule turning an internal
degree d into an Ext degree ``sign * d + offset``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .algebra import GradedAbGroup, IntegerMatrix
from .combinatorics import compositions, merge, surjections
from .complexes import (
    COHOMOLOGICAL,
    HOMOLOGICAL,
    BoundedComplex,
    ChainMap,
    dualize,
    homology,
    homotopy_pullback,
    tensor,
)
from .errors import InvalidParameter
from .groupcoh import (
    GModule,
    bar_cochain_complex,
    homotopy_fixed_points,
    permutation_action,
    symmetric_group,
)


@dataclass
class ChainLevelModel:
    """A complex plus the rule reading Ext off its homology.

    ``dualize`` means take cohomology of Hom(complex, Z) instead of the
    homology of the complex itself.
    """

    complex: BoundedComplex
    sign: int = 1
    offset: int = 0
    dualize: bool = False
    provenance: str = ""
    warnings: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InvalidParameter("grading map must have slope +1 or -1")

    def ext_degree(self, d: int) -> int:
        return self.sign * d + self.offset

    def internal_homology(self) -> GradedAbGroup:
        C = dualize(self.complex) if self.dualize else self.complex
        return homology(C)

    def ext(self) -> GradedAbGroup:
        H = self.internal_homology()
        comps = {self.ext_degree(d): g for d, g in H}
        trunc = None
        if H.truncated_above is not None:
            if self.sign != 1:
                raise InvalidParameter("truncated models need an increasing grading map")
            trunc = self.ext_degree(H.truncated_above)
        return GradedAbGroup.from_dict(comps, trunc)


def _check_pos(name, n, least=1):
    if not isinstance(n, int) or n < least:
        raise InvalidParameter(f"{name} must be an integer >= {least}, got {n!r}")


# ---------------------------------------------------------------------------
# symmetric powers


def symmetric_power_chains(n: int, k: int) -> list[tuple[int, ...]]:
    """Chains 1 <= n_0 < ... < n_k = n, in lexicographic order."""
    return [c + (n,) for c in combinations(range(1, n), k)]


def symmetric_power_complex(n: int) -> BoundedComplex:
    """Cohomological complex in degrees 0..n-1 computing Ext^*(ab, S^n∘ab).

    A column chain refines a row chain by inserting one new value x at
    position j, between n_{j-1} and n_j (with n_{-1} = 0).  The matrix entry
    is (-1)^j C(n_j - n_{j-1}, x - n_{j-1}).
    """
    _check_pos("n", n)
    basis = {k: symmetric_power_chains(n, k) for k in range(n)}
    diffs = {}
    for k in range(n - 1):
        tgt = {c: i for i, c in enumerate(basis[k + 1])}
        entries = {}
        for col, c in enumerate(basis[k]):
            prev = 0
            for j, nj in enumerate(c):
                for x in range(prev + 1, nj):
                    refined = c[:j] + (x,) + c[j:]
                    v = comb(nj - prev, x - prev)
                    entries[(tgt[refined], col)] = -v if j % 2 else v
                prev = nj
        diffs[k] = IntegerMatrix(len(basis[k + 1]), len(basis[k]), entries)
    return BoundedComplex(COHOMOLOGICAL, basis, diffs)


def tensor_symmetric_complex(m: int, n: int) -> list[BoundedComplex]:
    """One tensor product of symmetric-power complexes per composition of n into m parts.

    Ext^*(T^m∘ab, S^n∘ab) is the direct sum of their cohomology.
    """
    _check_pos("m", m)
    _check_pos("n", n)
    out = []
    for comp in compositions(n, m):
        C = symmetric_power_complex(comp[0])
        for part in comp[1:]:
            C = tensor(C, symmetric_power_complex(part))
        out.append(C)
    return out


# ---------------------------------------------------------------------------
# Passi functors


def surjection_complex(n: int, m: int) -> ChainLevelModel:
    """Homological complex on sur(n, k), 1 <= k <= min(m, n).

    ∂a = Σ_{i=1}^{k-1} (-1)^i merge(a, i).  Ext^i(Pa_m, T^n∘ab) is the
    homology in degree n - i.
    """
    _check_pos("n", n)
    _check_pos("m", m, least=0)
    top = min(m, n)
    basis = {k: surjections(n, k) for k in range(1, top + 1)}
    diffs = {}
    for k in range(2, top + 1):
        tgt = {a: i for i, a in enumerate(basis[k - 1])}
        entries = {}
        for col, a in enumerate(basis[k]):
            for i in range(1, k):
                row = tgt[merge(a, i)]
                entries[(row, col)] = entries.get((row, col), 0) + (-1 if i % 2 else 1)
        diffs[k] = IntegerMatrix(len(basis[k - 1]), len(basis[k]), entries)
    C = BoundedComplex(HOMOLOGICAL, basis, diffs)
    return ChainLevelModel(C, sign=-1, offset=n, provenance="surjection complex of the m-fold diagonal in the n-fold smash power of a circle")


def rbar_complex(n: int) -> ChainLevelModel:
    """Reduced cellular chains with one cell in each dimension 0..n-1.

    The boundary from an odd dimension is 1, from an even one 0, so the
    space is a sphere S^{n-1} for n odd and contractible for n even.
    Ext^*(ab, Pa_n) is the cohomology of the dual.
    """
    _check_pos("n", n)
    basis = {j: [f"e{j}"] for j in range(n)}
    diffs = {j: IntegerMatrix.from_dense([[1]]) for j in range(1, n) if j % 2}
    C = BoundedComplex(HOMOLOGICAL, basis, diffs)
    return ChainLevelModel(C, sign=1, offset=0, dualize=True, provenance="cellular cochains of the Passi cell complex")


# ---------------------------------------------------------------------------
# exterior square


def _swap(S2, g, comp):
    return comp if g == S2.identity else (comp[1], comp[0])


def lambda2_pullback_complex(n: int, D: int = 8) -> ChainLevelModel:
    """Complex whose cohomology gives Ext^*(Λ^2∘ab, Λ^n∘ab) through degree D.

    Homotopy pullback of Z[Comp(n,2)]^{hΣ_2} -> C^*(Σ_2; Z) <- Z, where the
    left map is the augmentation on coefficients and the right one is the
    unit.  Ext^i is the cohomology in degree i - n + 2.
    """
    _check_pos("n", n)
    if D < 0:
        raise InvalidParameter("degree bound must be non-negative")
    S2 = symmetric_group(2)
    offset = n - 2
    D_int = D - offset
    warnings = []
    if n == 1:
        warnings.append("n = 1 lies outside the range where the closed form is established")
    if D_int < 0:
        raise InvalidParameter(f"degree bound {D} is below the first possible degree {offset}")

    comps = list(compositions(n, 2))
    A0 = BoundedComplex(COHOMOLOGICAL, {0: comps}, {})
    A = homotopy_fixed_points(S2, A0, permutation_action(S2, A0, lambda g, c: _swap(S2, g, c)), D_int)
    C = bar_cochain_complex(S2, GModule.trivial(S2), D_int)
    B = BoundedComplex(COHOMOLOGICAL, {0: ["unit"]}, {})

    # augmentation on coefficients: (s, 0, comp) -> s
    aug = {}
    for d in C.degrees():
        pos = {s: i for i, (s, _) in enumerate(C.basis(d))}
        aug[d] = IntegerMatrix(C.rank(d), A.rank(d), {(pos[s], j): 1 for j, (s, _, _) in enumerate(A.basis(d))})
    a = ChainMap(A, C, aug)
    b = ChainMap(B, C, {0: IntegerMatrix.from_dense([[1]])})
    P = homotopy_pullback(a, b)
    return ChainLevelModel(P, sign=1, offset=offset, provenance="exterior-square pullback square", warnings=warnings)
