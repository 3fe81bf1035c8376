"""
Cohomology of small finite groups with integer coefficients.

Everything goes through the normalized bar cochain complex.  A degree-k
cochain is a function on k-tuples of non-identity elements with values in a
free module M; its basis is indexed by ``(tuple, i)`` with i a basis index of
M.  The coboundary is

    (δf)(g1, ..., g_{k+1}) = g1·f(g2, ..., g_{k+1})
                             + Σ_{i=1}^{k} (-1)^i f(..., g_i g_{i+1}, ...)
                             + (-1)^{k+1} f(g1, ..., g_k)

where terms whose merged tuple contains the identity vanish.

Closed forms for Σ_2 and Σ_3 are provided as fast paths and are checked
against the bar computation in the tests.
"""

from __future__ import annotations

from itertools import permutations, product
from typing import Callable, Mapping, Sequence

from .algebra import FgAbGroup, GradedAbGroup, IntegerMatrix, TRIVIAL, Z
from .complexes import (
    COHOMOLOGICAL,
    BoundedComplex,
    ChainMap,
    fiber,
    homology,
)
from .errors import InvalidParameter, NotAnAction


class FiniteGroup:
    """A group given by its multiplication table.

    ``table[a][b]`` is the index of the product a*b.  Associativity, the
    identity and inverses are verified on construction.
    """

    def __init__(self, table: Sequence[Sequence[int]], identity: int = 0, labels=None, name=None):
        n = len(table)
        self.table = tuple(tuple(r) for r in table)
        self.order = n
        self.identity = identity
        self.labels = tuple(labels) if labels is not None else tuple(range(n))
        self.name = name or f"G{n}"
        if any(len(r) != n or not all(0 <= x < n for x in r) for r in self.table):
            raise InvalidParameter("multiplication table is not square or has bad entries")
        for a in range(n):
            if self.table[identity][a] != a or self.table[a][identity] != a:
                raise InvalidParameter("identity element does not act as identity")
            if identity not in self.table[a]:
                raise InvalidParameter(f"element {a} has no inverse")
        t = self.table
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                for c in range(n):
                    if t[ab][c] != t[a][t[b][c]]:
                        raise InvalidParameter("multiplication is not associative")
        self.inverse = tuple(t[a].index(identity) for a in range(n))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def elements(self) -> range:
        return range(self.order)

    def non_identity(self) -> list[int]:
        return [g for g in range(self.order) if g != self.identity]

    def subgroup_embedding(self, generators: Sequence[int]) -> list[int]:
        """Elements of the subgroup generated by ``generators``, identity first."""
        seen = [self.identity]
        frontier = [self.identity]
        while frontier:
            new = []
            for a in frontier:
                for g in generators:
                    b = self.mul(a, g)
                    if b not in seen:
                        seen.append(b)
                        new.append(b)
            frontier = new
        return seen

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], 0, ["e"], "1")


def symmetric_group(n: int) -> FiniteGroup:
    """Σ_n on {1..n}; elements are permutation tuples, identity first.

    Composition is ``(a*b)(x) = a(b(x))``.
    """
    if n < 1:
        raise InvalidParameter("symmetric group needs n >= 1")
    perms = sorted(permutations(range(1, n + 1)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(a[b[x] - 1] for x in range(n))] for b in perms] for a in perms]
    return FiniteGroup(table, 0, perms, f"S{n}")


def permutation_sign(p: Sequence[int]) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


class GModule:
    """A free Z-module of finite rank with a G-action by integer matrices."""

    def __init__(self, group: FiniteGroup, rank: int, action: Mapping[int, IntegerMatrix], name=""):
        self.group = group
        self.rank = rank
        self.name = name
        self.action = {g: action[g] for g in group.elements()}
        for g, M in self.action.items():
            if M.shape != (rank, rank):
                raise NotAnAction(f"action matrix of element {g} has shape {M.shape}")
        if self.action[group.identity] != IntegerMatrix.identity(rank):
            raise NotAnAction("identity does not act as the identity matrix")
        for a in group.elements():
            for b in group.elements():
                if self.action[a] @ self.action[b] != self.action[group.mul(a, b)]:
                    raise NotAnAction(f"action is not multiplicative at ({a}, {b})")

    @classmethod
    def trivial(cls, group: FiniteGroup, rank: int = 1) -> GModule:
        I = IntegerMatrix.identity(rank)
        return cls(group, rank, {g: I for g in group.elements()}, "trivial")

    @classmethod
    def from_character(cls, group: FiniteGroup, chi: Callable[[int], int], name="") -> GModule:
        return cls(group, 1, {g: IntegerMatrix.from_dense([[chi(g)]]) for g in group.elements()}, name)

    @classmethod
    def sign(cls, group: FiniteGroup) -> GModule:
        """Z with symmetric-group elements acting by their sign."""
        return cls.from_character(group, lambda g: permutation_sign(group.labels[g]), "sign")

    @classmethod
    def permutation(cls, group: FiniteGroup, points: Sequence, act: Callable) -> GModule:
        """Z[points] with g·e_x = e_{act(g, x)}."""
        pos = {x: i for i, x in enumerate(points)}
        n = len(points)
        action = {}
        for g in group.elements():
            action[g] = IntegerMatrix(n, n, {(pos[act(g, x)], pos[x]): 1 for x in points})
        return cls(group, n, action, "permutation")

    def is_trivial(self) -> bool:
        I = IntegerMatrix.identity(self.rank)
        return all(M == I for M in self.action.values())


# ---------------------------------------------------------------------------
# normalized bar cochains


def _bar_coboundary(G: FiniteGroup, M: GModule, k: int) -> IntegerMatrix:
    """δ: C^k(G; M) -> C^{k+1}(G; M) as a sparse matrix."""
    nonid = G.non_identity()
    N = len(nonid)
    pos = {g: i for i, g in enumerate(nonid)}
    r = M.rank
    e = G.identity
    t = G.table
    act_rows = {g: M.action[g].row_dicts() for g in nonid}
    rows = {}

    def idx(tup):
        v = 0
        for g in tup:
            v = v * N + pos[g]
        return v

    ri = 0
    for s in product(nonid, repeat=k + 1):
        tail = idx(s[1:])
        # merged tuples for the inner faces
        inner = []
        for i in range(1, k + 1):
            p = t[s[i - 1]][s[i]]
            if p != e:
                inner.append((idx(s[: i - 1] + (p,) + s[i + 1 :]), -1 if i % 2 else 1))
        last = idx(s[:k])
        last_sign = -1 if (k + 1) % 2 else 1
        g1_rows = act_rows[s[0]]
        for c in range(r):
            row = {}
            for b, v in g1_rows.get(c, {}).items():
                row[tail * r + b] = v
            for j, sg in inner:
                col = j * r + c
                row[col] = row.get(col, 0) + sg
            col = last * r + c
            row[col] = row.get(col, 0) + last_sign
            row = {j: v for j, v in row.items() if v}
            if row:
                rows[ri] = row
            ri += 1
    return IntegerMatrix._from_rows(N ** (k + 1) * r, N ** k * r, rows)


def bar_basis(G: FiniteGroup, M: GModule, k: int) -> list:
    return [(s, i) for s in product(G.non_identity(), repeat=k) for i in range(M.rank)]


def bar_cochain_complex(G: FiniteGroup, M: GModule | None = None, D: int = 8, reduced=False) -> BoundedComplex:
    """Normalized bar cochains C^k(G; M) for k = 0..D+1, marked truncated at D.

    With ``reduced=True`` (trivial coefficients only) degree 0 is dropped,
    giving reduced cochains of BG.
    """
    if D < 0:
        raise InvalidParameter("degree bound must be non-negative")
    if M is None:
        M = GModule.trivial(G)
    if reduced and not M.is_trivial():
        raise InvalidParameter("reduced cochains need trivial coefficients")
    lo = 1 if reduced else 0
    basis = {k: bar_basis(G, M, k) for k in range(lo, D + 2)}
    diffs = {k: _bar_coboundary(G, M, k) for k in range(lo, D + 1)}
    return BoundedComplex(COHOMOLOGICAL, basis, diffs, truncated_above=D, check=False)


def group_cohomology(G: FiniteGroup, M: GModule | None = None, D: int = 8) -> GradedAbGroup:
    """H^k(G; M) for k <= D from the bar complex."""
    return homology(bar_cochain_complex(G, M, D))


def restriction_map(G: FiniteGroup, H_elements: Sequence[int], D: int) -> ChainMap:
    """Restriction of reduced trivial-coefficient bar cochains from G to a subgroup.

    ``H_elements`` lists the subgroup's elements as indices in G with the
    identity first; the subgroup is rebuilt from G's table.
    """
    H = _subgroup(G, H_elements)
    CG = bar_cochain_complex(G, None, D, reduced=True)
    CH = bar_cochain_complex(H, None, D, reduced=True)
    nonid_G = G.non_identity()
    posG = {g: i for i, g in enumerate(nonid_G)}
    N = len(nonid_G)
    comps = {}
    for k in range(1, D + 2):
        entries = {}
        for row, s in enumerate(product(H.non_identity(), repeat=k)):
            col = 0
            for h in s:
                col = col * N + posG[H_elements[h]]
            entries[(row, col)] = 1
        comps[k] = IntegerMatrix(CH.rank(k), CG.rank(k), entries)
    return ChainMap(CG, CH, comps, check=False)


def _subgroup(G: FiniteGroup, elements: Sequence[int]) -> FiniteGroup:
    pos = {g: i for i, g in enumerate(elements)}
    if elements[0] != G.identity:
        raise InvalidParameter("subgroup element list must start with the identity")
    try:
        table = [[pos[G.mul(a, b)] for b in elements] for a in elements]
    except KeyError:
        raise InvalidParameter("elements are not closed under multiplication") from None
    return FiniteGroup(table, 0, [G.labels[g] for g in elements], f"sub({G.name})")


def sigma2_in_sigma3() -> tuple[FiniteGroup, list[int]]:
    """Σ_3 with its subgroup generated by the transposition (1 2)."""
    S3 = symmetric_group(3)
    swap = S3.labels.index((2, 1, 3))
    return S3, S3.subgroup_embedding([swap])


# ---------------------------------------------------------------------------
# homotopy fixed points


def _module_at(G: FiniteGroup, action: Mapping[int, ChainMap], C: BoundedComplex, q: int) -> GModule:
    return GModule(G, C.rank(q), {g: action[g].component(q) for g in G.elements()})


def homotopy_fixed_points(G: FiniteGroup, C: BoundedComplex, action: Mapping[int, ChainMap], D: int) -> BoundedComplex:
    """Total complex of C^p(G; C^q) with differential δ + (-1)^p d_C.

    ``C`` is cohomological and ``action[g]`` is a chain automorphism for each
    element g.  Terms with p + q <= D + 1 are built, so the result is valid
    through degree D.
    """
    if C.orientation is not COHOMOLOGICAL:
        raise InvalidParameter("homotopy fixed points need a cohomological complex")
    for g in G.elements():
        f = action.get(g)
        if f is None or f.source is not C or f.target is not C:
            raise NotAnAction(f"element {g} has no chain automorphism of the complex")
    modules = {q: _module_at(G, action, C, q) for q in C.degrees()}
    qmin = C.min_deg
    top = D + 1
    nonid = G.non_identity()
    N = len(nonid)

    layout = {}
    basis = {}
    for n in range(qmin, top + 1):
        off = 0
        layout[n] = {}
        basis[n] = []
        for q in C.degrees():
            p = n - q
            if p < 0 or C.rank(q) == 0:
                continue
            layout[n][(p, q)] = off
            basis[n].extend((s, q, b) for s in product(nonid, repeat=p) for b in C.basis(q))
            off += N ** p * C.rank(q)

    bar_cache = {}

    def bar(q, p):
        if (q, p) not in bar_cache:
            bar_cache[(q, p)] = _bar_coboundary(G, modules[q], p)
        return bar_cache[(q, p)]

    diffs = {}
    for n in range(qmin, top):
        rows = {}
        tgt = layout.get(n + 1, {})
        for (p, q), off in layout[n].items():
            rq = C.rank(q)
            if (p + 1, q) in tgt:
                toff = tgt[(p + 1, q)]
                for i, row in bar(q, p).row_dicts().items():
                    r = rows.setdefault(toff + i, {})
                    for j, v in row.items():
                        r[off + j] = r.get(off + j, 0) + v
            dC = C.nonzero_differentials().get(q)
            if dC is not None and (p, q + 1) in tgt:
                toff = tgt[(p, q + 1)]
                rq1 = C.rank(q + 1)
                sign = -1 if p % 2 else 1
                dC_rows = dC.row_dicts()
                for t in range(N ** p):
                    for i, row in dC_rows.items():
                        r = rows.setdefault(toff + t * rq1 + i, {})
                        for j, v in row.items():
                            col = off + t * rq + j
                            r[col] = r.get(col, 0) + sign * v
        rows = {i: {j: v for j, v in r.items() if v} for i, r in rows.items()}
        diffs[n] = IntegerMatrix._from_rows(len(basis[n + 1]), len(basis[n]), rows)
    return BoundedComplex(COHOMOLOGICAL, basis, diffs, truncated_above=D, check=False)


def trivial_action(G: FiniteGroup, C: BoundedComplex) -> dict[int, ChainMap]:
    idm = ChainMap.identity(C)
    return {g: idm for g in G.elements()}


def permutation_action(G: FiniteGroup, C: BoundedComplex, act: Callable) -> dict[int, ChainMap]:
    """Act on every degree by permuting basis labels via ``act(g, label)``."""
    out = {}
    for g in G.elements():
        comps = {}
        for q in C.degrees():
            labels = C.basis(q)
            pos = {x: i for i, x in enumerate(labels)}
            comps[q] = IntegerMatrix(len(labels), len(labels), {(pos[act(g, x)], pos[x]): 1 for x in labels})
        out[g] = ChainMap(C, C, comps)
    return out


# ---------------------------------------------------------------------------
# the two spaces used by the exterior-power formulas


def rp_infinity_reduced_cohomology(D: int = 8, method: str = "closed") -> GradedAbGroup:
    """Reduced H^*(RP^∞; Z) = reduced H^*(Σ_2; Z): Z/2 in positive even degrees."""
    if D < 0:
        raise InvalidParameter("degree bound must be non-negative")
    if method == "closed":
        return GradedAbGroup.from_dict({k: FgAbGroup.cyclic(2) for k in range(2, D + 1, 2)}, D)
    if method == "bar":
        return homology(bar_cochain_complex(symmetric_group(2), None, D, reduced=True))
    raise InvalidParameter(f"unknown method {method!r}")


def bsigma3_mod_bsigma2_complex(D: int) -> BoundedComplex:
    """Cochains of BΣ_3/BΣ_2 as the fibre of restriction on reduced bar cochains."""
    G, H = sigma2_in_sigma3()
    return fiber(restriction_map(G, H, D))


def bsigma3_mod_bsigma2(D: int = 8, method: str = "closed") -> GradedAbGroup:
    """Reduced H^*(BΣ_3/BΣ_2; Z): Z/3 in degrees 4, 8, 12, ..."""
    if D < 0:
        raise InvalidParameter("degree bound must be non-negative")
    if method == "closed":
        return GradedAbGroup.from_dict({k: FgAbGroup.cyclic(3) for k in range(4, D + 1, 4)}, D)
    if method == "bar":
        return homology(bsigma3_mod_bsigma2_complex(D)).truncate(D)
    raise InvalidParameter(f"unknown method {method!r}")


def closed_form_cohomology(group: str, coeff: str = "trivial", D: int = 8) -> GradedAbGroup | None:
    """Known answers for Σ_2 and Σ_3; None when no closed form is wired in."""
    comps: dict[int, FgAbGroup] = {}
    if group == "S2" and coeff == "trivial":
        comps[0] = Z
        comps.update({k: FgAbGroup.cyclic(2) for k in range(2, D + 1, 2)})
    elif group == "S2" and coeff == "sign":
        comps.update({k: FgAbGroup.cyclic(2) for k in range(1, D + 1, 2)})
    elif group == "S3" and coeff == "trivial":
        comps[0] = Z
        for k in range(2, D + 1, 2):
            comps[k] = FgAbGroup.cyclic(6 if k % 4 == 0 else 2)
    elif group == "S3" and coeff == "sign":
        # 2-part from the Sylow subgroup, 3-part from the twisted invariants of Z/3
        for k in range(1, D + 1):
            if k % 2:
                comps[k] = FgAbGroup.cyclic(2)
            elif k % 4 == 2:
                comps[k] = FgAbGroup.cyclic(3)
    else:
        return None
    return GradedAbGroup.from_dict({k: g for k, g in comps.items() if k <= D}, D)


def named_group(name: str) -> FiniteGroup:
    name = name.upper()
    if name in ("S1", "1"):
        return symmetric_group(1)
    if name == "S2":
        return symmetric_group(2)
    if name == "S3":
        return symmetric_group(3)
    raise InvalidParameter(f"unknown group {name!r}; expected S2 or S3")


def named_module(G: FiniteGroup, coeff: str) -> GModule:
    if coeff == "trivial":
        return GModule.trivial(G)
    if coeff == "sign":
        return GModule.sign(G)
    raise InvalidParameter(f"unknown coefficients {coeff!r}; expected trivial or sign")


__all__ = [
    "FiniteGroup",
    "GModule",
    "symmetric_group",
    "trivial_group",
    "permutation_sign",
    "bar_cochain_complex",
    "group_cohomology",
    "homotopy_fixed_points",
    "trivial_action",
    "permutation_action",
    "restriction_map",
    "sigma2_in_sigma3",
    "rp_infinity_reduced_cohomology",
    "bsigma3_mod_bsigma2",
    "bsigma3_mod_bsigma2_complex",
    "closed_form_cohomology",
    "named_group",
    "named_module",
    "TRIVIAL",
]
