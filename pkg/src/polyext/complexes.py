"""
Bounded (co)chain complexes of finitely generated free abelian groups.

A complex carries an explicit orientation.  Homological complexes have
differentials ``C_d -> C_{d-1}``, cohomological ones ``C^d -> C^{d+1}``;
``step`` is -1 or +1 accordingly.  Every differential is an
:class:`IntegerMatrix` in column-vector convention, shaped
``(rank of target, rank of source)``.

Sign conventions, fixed once:

* tensor product: ``d(c ⊗ x) = dc ⊗ x + (-1)^|c| c ⊗ dx``;
* mapping cone of ``f: C -> D``: degree ``n`` is ``C_{n+step} ⊕ D_n`` with
  differential ``[[-d_C, 0], [f, d_D]]``;
* shift by ``k`` multiplies every differential by ``(-1)^k``.

With these conventions the cone of a homological map sits in the long exact
sequence ``H_n(C) -> H_n(D) -> H_n(cone f) -> H_{n-1}(C)``, and the
cohomological fibre ``fib(f)^k = C^k ⊕ D^{k-1}`` sits in
``H^{k-1}(D) -> H^k(fib f) -> H^k(C) -> H^k(D)``.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .algebra import FgAbGroup, GradedAbGroup, IntegerMatrix, invariant_factors
from .errors import CompositionNotZero, NotAChainMap, OrientationMismatch


class Orientation(enum.Enum):
    HOMOLOGICAL = "homological"
    COHOMOLOGICAL = "cohomological"

    @property
    def step(self) -> int:
        return -1 if self is Orientation.HOMOLOGICAL else 1

    @property
    def flipped(self) -> Orientation:
        if self is Orientation.HOMOLOGICAL:
            return Orientation.COHOMOLOGICAL
        return Orientation.HOMOLOGICAL


HOMOLOGICAL = Orientation.HOMOLOGICAL
COHOMOLOGICAL = Orientation.COHOMOLOGICAL


class BoundedComplex:
    """A finite complex of free abelian groups with labelled bases.

    ``differentials[d]`` maps degree d to degree ``d + step``.  Missing
    differentials are zero.  d∘d = 0 and all shapes are verified on
    construction unless ``check=False`` is passed by a trusted builder.

    ``truncated_above`` (cohomological complexes only) records that the
    complex models something infinite and its cohomology is only meaningful
    in degrees <= that value; :func:`homology` honours it.
    """

    __slots__ = ("orientation", "_basis", "_diff", "truncated_above", "_factor_cache")

    def __init__(
        self,
        orientation: Orientation,
        basis: Mapping[int, Sequence],
        differentials: Mapping[int, IntegerMatrix] | None = None,
        truncated_above: int | None = None,
        check: bool = True,
    ):
        self.orientation = Orientation(orientation)
        self._basis = {int(d): tuple(b) for d, b in basis.items() if len(b)}
        self._diff = {}
        if truncated_above is not None and self.orientation is not COHOMOLOGICAL:
            raise ValueError("only cohomological complexes carry a truncation marker")
        self.truncated_above = truncated_above
        self._factor_cache: dict[int, list[int]] = {}
        s = self.orientation.step
        for d, M in (differentials or {}).items():
            d = int(d)
            n_src, n_tgt = self.rank(d), self.rank(d + s)
            if M.shape != (n_tgt, n_src):
                raise ValueError(
                    f"differential from degree {d} has shape {M.shape}, expected {(n_tgt, n_src)}"
                )
            if not M.is_zero():
                self._diff[d] = M
        if check:
            for d in self._diff:
                if d + s in self._diff and not (self._diff[d + s] @ self._diff[d]).is_zero():
                    raise CompositionNotZero(f"d∘d != 0 starting in degree {d}")

    @property
    def step(self) -> int:
        return self.orientation.step

    @property
    def min_deg(self) -> int:
        return min(self._basis) if self._basis else 0

    @property
    def max_deg(self) -> int:
        return max(self._basis) if self._basis else -1

    def degrees(self) -> range:
        return range(self.min_deg, self.max_deg + 1)

    def basis(self, d: int) -> tuple:
        return self._basis.get(d, ())

    def rank(self, d: int) -> int:
        return len(self._basis.get(d, ()))

    def ranks(self) -> dict[int, int]:
        return {d: self.rank(d) for d in self.degrees()}

    def differential(self, d: int) -> IntegerMatrix:
        M = self._diff.get(d)
        if M is None:
            return IntegerMatrix.zeros(self.rank(d + self.step), self.rank(d))
        return M

    def nonzero_differentials(self) -> dict[int, IntegerMatrix]:
        return dict(self._diff)

    def is_zero(self) -> bool:
        return not self._basis

    def euler_characteristic(self) -> int:
        return sum((-1) ** (d % 2) * self.rank(d) for d in self.degrees())

    def _factors(self, d: int) -> list[int]:
        if d not in self._factor_cache:
            M = self._diff.get(d)
            self._factor_cache[d] = invariant_factors(M) if M is not None else []
        return self._factor_cache[d]

    def check_d_squared(self) -> bool:
        s = self.step
        return all(
            (self._diff[d + s] @ self._diff[d]).is_zero() for d in self._diff if d + s in self._diff
        )

    def __eq__(self, other):
        if not isinstance(other, BoundedComplex):
            return NotImplemented
        return (
            self.orientation is other.orientation
            and self.ranks() == other.ranks()
            and self._diff == other._diff
            and self.truncated_above == other.truncated_above
        )

    def __repr__(self):
        ranks = ", ".join(f"{d}: {self.rank(d)}" for d in self.degrees())
        return f"BoundedComplex({self.orientation.value}, ranks={{{ranks}}})"


@dataclass(frozen=True)
class ChainMap:
    """A degreewise matrix map f: C -> D commuting with the differentials."""

    source: BoundedComplex
    target: BoundedComplex
    components: Mapping[int, IntegerMatrix] = field(default_factory=dict)
    check: bool = True

    def __post_init__(self):
        C, D = self.source, self.target
        if C.orientation is not D.orientation:
            raise OrientationMismatch("chain map between complexes of different orientation")
        comps = {}
        for d, M in self.components.items():
            if M.shape != (D.rank(d), C.rank(d)):
                raise ValueError(f"component in degree {d} has shape {M.shape}")
            if not M.is_zero():
                comps[d] = M
        object.__setattr__(self, "components", comps)
        if self.check:
            s = C.step
            for d in set(C.degrees()) | set(D.degrees()):
                lhs = self.component(d + s) @ C.differential(d)
                rhs = D.differential(d) @ self.component(d)
                if lhs != rhs:
                    raise NotAChainMap(f"f∘d != d∘f starting in degree {d}")

    def component(self, d: int) -> IntegerMatrix:
        M = self.components.get(d)
        if M is None:
            return IntegerMatrix.zeros(self.target.rank(d), self.source.rank(d))
        return M

    @classmethod
    def identity(cls, C: BoundedComplex) -> ChainMap:
        return cls(C, C, {d: IntegerMatrix.identity(C.rank(d)) for d in C.degrees()})

    @classmethod
    def zero(cls, C: BoundedComplex, D: BoundedComplex) -> ChainMap:
        return cls(C, D, {})

    def compose(self, other: ChainMap) -> ChainMap:
        """self ∘ other."""
        degs = set(other.source.degrees())
        return ChainMap(
            other.source,
            self.target,
            {d: self.component(d) @ other.component(d) for d in degs},
        )


# ---------------------------------------------------------------------------


def homology(C: BoundedComplex) -> GradedAbGroup:
    """Degreewise ker/im.

    Uses that ker(out) is a saturated sublattice, so the torsion of ker/im is
    the torsion of coker(in), read off the invariant factors of ``in``.
    """
    s = C.step
    comps = {}
    for d in C.degrees():
        n = C.rank(d)
        if n == 0:
            continue
        out_f = C._factors(d)
        in_f = C._factors(d - s)
        free = n - len(out_f) - len(in_f)
        comps[d] = FgAbGroup.from_orders(free, [x for x in in_f if x > 1])
    D = C.truncated_above
    if D is not None:
        comps = {d: g for d, g in comps.items() if d <= D}
    return GradedAbGroup.from_dict(comps, D)


def dualize(C: BoundedComplex) -> BoundedComplex:
    """Hom(C, Z): transpose every differential and flip the orientation."""
    if C.truncated_above is not None:
        raise ValueError("cannot dualize a truncated complex")
    s = C.step
    diffs = {d + s: M.T for d, M in C.nonzero_differentials().items()}
    basis = {d: C.basis(d) for d in C.degrees()}
    return BoundedComplex(C.orientation.flipped, basis, diffs, check=False)


def reindex(C: BoundedComplex) -> BoundedComplex:
    """Swap orientation by negating degrees (cohomological k <-> homological -k)."""
    if C.truncated_above is not None:
        raise ValueError("cannot reindex a truncated complex")
    basis = {-d: C.basis(d) for d in C.degrees()}
    diffs = {-d: M for d, M in C.nonzero_differentials().items()}
    return BoundedComplex(C.orientation.flipped, basis, diffs, check=False)


def shift_complex(C: BoundedComplex, k: int) -> BoundedComplex:
    """Move degree d to degree d + k; differentials pick up the sign (-1)^k."""
    sign = -1 if k % 2 else 1
    basis = {d + k: C.basis(d) for d in C.degrees()}
    diffs = {d + k: M.scale(sign) for d, M in C.nonzero_differentials().items()}
    trunc = None if C.truncated_above is None else C.truncated_above + k
    return BoundedComplex(C.orientation, basis, diffs, trunc, check=False)


def _min_trunc(*ts):
    ts = [t for t in ts if t is not None]
    return min(ts) if ts else None


def tensor(C: BoundedComplex, D: BoundedComplex) -> BoundedComplex:
    """Tensor product with basis labels (c, x) and the Koszul sign on D."""
    if C.orientation is not D.orientation:
        raise OrientationMismatch("tensor product of complexes of different orientation")
    s = C.step
    trunc = None
    if C.truncated_above is not None or D.truncated_above is not None:
        tc = C.truncated_above if C.truncated_above is not None else C.max_deg
        td = D.truncated_above if D.truncated_above is not None else D.max_deg
        trunc = min(tc + D.min_deg, td + C.min_deg)
    if C.is_zero() or D.is_zero():
        return BoundedComplex(C.orientation, {}, {}, trunc, check=False)

    # block layout of each total degree
    layout: dict[int, dict[tuple[int, int], int]] = {}
    basis: dict[int, list] = {}
    for n in range(C.min_deg + D.min_deg, C.max_deg + D.max_deg + 1):
        off = 0
        layout[n] = {}
        basis[n] = []
        for p in C.degrees():
            q = n - p
            if D.rank(q) == 0 or C.rank(p) == 0:
                continue
            layout[n][(p, q)] = off
            basis[n].extend((a, b) for a in C.basis(p) for b in D.basis(q))
            off += C.rank(p) * D.rank(q)

    diffs = {}
    for n, blocks in layout.items():
        entries = {}
        tgt = layout.get(n + s, {})
        for (p, q), off in blocks.items():
            rq = D.rank(q)
            dc = C._diff.get(p)
            if dc is not None and (p + s, q) in tgt:
                toff = tgt[(p + s, q)]
                for (i, j), v in dc.items():
                    # c_j ⊗ x_b -> v * c_i ⊗ x_b
                    for b in range(rq):
                        entries[(toff + i * rq + b, off + j * rq + b)] = v
            dd = D._diff.get(q)
            if dd is not None and (p, q + s) in tgt:
                toff = tgt[(p, q + s)]
                rq2 = D.rank(q + s)
                sign = -1 if p % 2 else 1
                for a in range(C.rank(p)):
                    for (i, j), v in dd.items():
                        entries[(toff + a * rq2 + i, off + a * rq + j)] = sign * v
        if entries:
            diffs[n] = IntegerMatrix(len(basis.get(n + s, ())), len(basis[n]), entries)
    if trunc is not None:
        basis = {n: b for n, b in basis.items() if n <= trunc + 1}
        diffs = {n: M for n, M in diffs.items() if n <= trunc and n + s <= trunc + 1}
    return BoundedComplex(C.orientation, basis, diffs, trunc, check=False)


def complex_direct_sum(*Cs: BoundedComplex) -> BoundedComplex:
    if not Cs:
        raise ValueError("need at least one complex")
    orient = Cs[0].orientation
    if any(C.orientation is not orient for C in Cs):
        raise OrientationMismatch("direct sum of complexes of different orientation")
    s = orient.step
    lo = min(C.min_deg for C in Cs)
    hi = max(C.max_deg for C in Cs)
    basis = {}
    diffs = {}
    for d in range(lo, hi + 1):
        basis[d] = [(k, b) for k, C in enumerate(Cs) for b in C.basis(d)]
        blocks = [
            [C.differential(d) if k == l else IntegerMatrix.zeros(Cl.rank(d + s), C.rank(d)) for k, C in enumerate(Cs)]
            for l, Cl in enumerate(Cs)
        ]
        diffs[d] = IntegerMatrix.block(blocks)
    return BoundedComplex(orient, basis, diffs, _min_trunc(*(C.truncated_above for C in Cs)), check=False)


def _map_block_sum(maps: Sequence[ChainMap], source: BoundedComplex, signs) -> ChainMap:
    """[sign_1 f_1, sign_2 f_2, ...]: source (a direct sum) -> common target."""
    target = maps[0].target
    comps = {}
    for d in source.degrees():
        row = [f.component(d).scale(sg) for f, sg in zip(maps, signs)]
        comps[d] = IntegerMatrix.block([row])
    return ChainMap(source, target, comps, check=False)


def cone(f: ChainMap) -> BoundedComplex:
    """Mapping cone: degree n is C_{n+step} ⊕ D_n, differential [[-d_C, 0], [f, d_D]]."""
    C, D = f.source, f.target
    s = C.step
    degs = set(d - s for d in C.degrees()) | set(D.degrees())
    if not degs:
        return BoundedComplex(C.orientation, {}, {}, check=False)
    basis = {}
    diffs = {}
    for n in range(min(degs), max(degs) + 1):
        basis[n] = [("src", b) for b in C.basis(n + s)] + [("tgt", b) for b in D.basis(n)]
    for n in range(min(degs), max(degs) + 1):
        m = n + s
        blocks = [
            [C.differential(n + s).scale(-1), IntegerMatrix.zeros(C.rank(m + s), D.rank(n))],
            [f.component(n + s), D.differential(n)],
        ]
        diffs[n] = IntegerMatrix.block(blocks)
    trunc = None
    if C.orientation is COHOMOLOGICAL:
        # H^n(cone) needs both inputs valid through degree n + 1
        tc = None if C.truncated_above is None else C.truncated_above - 1
        td = None if D.truncated_above is None else D.truncated_above - 1
        trunc = _min_trunc(tc, td)
        if trunc is not None:
            basis = {n: b for n, b in basis.items() if n <= trunc + 1}
            diffs = {n: M for n, M in diffs.items() if n + s <= trunc + 1}
    return BoundedComplex(C.orientation, basis, diffs, trunc, check=False)


def fiber(f: ChainMap) -> BoundedComplex:
    """Homotopy fibre: the cone moved one step along the differential."""
    return shift_complex(cone(f), f.source.step)


def homotopy_pullback(a: ChainMap, b: ChainMap) -> BoundedComplex:
    """Pullback of A -a-> X <-b- B, realised as the fibre of (a, -b): A ⊕ B -> X."""
    if a.target is not b.target and a.target != b.target:
        raise ValueError("the two maps must share a target")
    src = complex_direct_sum(a.source, b.source)
    return fiber(_map_block_sum([a, b], src, [1, -1]))


def truncate(C: BoundedComplex, lo: int, hi: int) -> BoundedComplex:
    """Brutal truncation keeping degrees lo..hi.

    For a cohomological complex cut from above, the top kept degree no longer
    has the right cohomology, so the result is marked truncated at hi - 1.
    """
    if lo > hi:
        raise ValueError("truncate needs lo <= hi")
    s = C.step
    basis = {d: C.basis(d) for d in C.degrees() if lo <= d <= hi}
    diffs = {
        d: M for d, M in C.nonzero_differentials().items() if lo <= d <= hi and lo <= d + s <= hi
    }
    trunc = C.truncated_above
    if C.orientation is COHOMOLOGICAL and hi < C.max_deg:
        trunc = _min_trunc(trunc, hi - 1)
    if trunc is not None and basis and trunc < min(basis):
        trunc = min(basis) - 1
    return BoundedComplex(C.orientation, basis, diffs, trunc, check=False)


# ---------------------------------------------------------------------------
# JSON form: {"orientation", "degrees": [{"degree", "rank", "labels"}],
#             "differentials": [{"from", "to", "matrix"}], "truncated_above"}


def complex_to_json(C: BoundedComplex, labels: bool = True) -> dict:
    out = {
        "orientation": C.orientation.value,
        "degrees": [],
        "differentials": [],
        "truncated_above": C.truncated_above,
    }
    for d in C.degrees():
        entry = {"degree": d, "rank": C.rank(d)}
        if labels:
            entry["labels"] = [str(b) for b in C.basis(d)]
        out["degrees"].append(entry)
    for d, M in sorted(C.nonzero_differentials().items()):
        out["differentials"].append({"from": d, "to": d + C.step, "matrix": M.to_dense()})
    return out


def complex_from_json(data: dict | str) -> BoundedComplex:
    if isinstance(data, str):
        data = json.loads(data)
    orient = Orientation(data["orientation"])
    basis = {}
    for entry in data["degrees"]:
        labels = entry.get("labels") or list(range(entry["rank"]))
        if len(labels) != entry["rank"]:
            raise ValueError(f"degree {entry['degree']}: rank and labels disagree")
        basis[entry["degree"]] = labels
    diffs = {}
    for entry in data["differentials"]:
        if entry["to"] - entry["from"] != orient.step:
            raise ValueError("differential direction does not match the orientation")
        d = entry["from"]
        rows = len(basis.get(d + orient.step, ()))
        cols = len(basis.get(d, ()))
        diffs[d] = IntegerMatrix.from_dense(entry["matrix"], rows, cols)
    return BoundedComplex(orient, basis, diffs, data.get("truncated_above"))
