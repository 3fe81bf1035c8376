"""
Exact integer linear algebra.

Matrices hold arbitrary-precision Python integers and are stored sparsely,
so the large but very sparse bar-complex differentials fit in memory.  The
Smith normal form is computed by fraction-free elimination, always pivoting
on an entry of minimal absolute value.

>>> M = IntegerMatrix.from_dense([[2, 4], [6, 8]])
>>> S, U, V = smith_normal_form(M)
>>> S.to_dense()
[[2, 0], [0, 4]]
>>> U @ M @ V == S
True
>>> subquotient_group(IntegerMatrix.zeros(1, 1), IntegerMatrix.from_dense([[2]]))
FgAbGroup(rank=0, torsion=(2,))
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Mapping

from .errors import CompositionNotZero


class IntegerMatrix:
    """An immutable rows x cols matrix of Python integers.

    Column-vector convention: a matrix with ``cols`` columns maps
    ``Z^cols`` to ``Z^rows``.  Zero rows or columns are allowed.
    """

    __slots__ = ("rows", "cols", "_data", "row_labels", "col_labels")

    def __init__(self, rows: int, cols: int, entries=(), row_labels=None, col_labels=None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.rows = rows
        self.cols = cols
        data: dict[int, dict[int, int]] = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for (i, j), v in items:
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols} matrix")
            v = int(v)
            if v:
                data.setdefault(i, {})[j] = v
            elif i in data:
                data[i].pop(j, None)
        self._data = {i: r for i, r in data.items() if r}
        if row_labels is not None and len(row_labels) != rows:
            raise ValueError("row_labels has the wrong length")
        if col_labels is not None and len(col_labels) != cols:
            raise ValueError("col_labels has the wrong length")
        self.row_labels = tuple(row_labels) if row_labels is not None else None
        self.col_labels = tuple(col_labels) if col_labels is not None else None

    @classmethod
    def _from_rows(cls, rows, cols, data, row_labels=None, col_labels=None):
        # trusted constructor: data already sparse and in range
        m = cls.__new__(cls)
        m.rows, m.cols = rows, cols
        m._data = {i: r for i, r in data.items() if r}
        m.row_labels = tuple(row_labels) if row_labels is not None else None
        m.col_labels = tuple(col_labels) if col_labels is not None else None
        return m

    @classmethod
    def from_dense(cls, data, rows=None, cols=None, row_labels=None, col_labels=None):
        data = [list(r) for r in data]
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("ragged or mis-sized dense matrix")
        entries = {(i, j): v for i, r in enumerate(data) for j, v in enumerate(r) if v}
        return cls(rows, cols, entries, row_labels, col_labels)

    @classmethod
    def zeros(cls, rows, cols, row_labels=None, col_labels=None):
        return cls._from_rows(rows, cols, {}, row_labels, col_labels)

    @classmethod
    def identity(cls, n, labels=None):
        return cls._from_rows(n, n, {i: {i: 1} for i in range(n)}, labels, labels)

    @classmethod
    def diagonal(cls, values, rows=None, cols=None):
        values = list(values)
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        return cls(rows, cols, {(i, i): v for i, v in enumerate(values)})

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i}, {j}) out of bounds for {self.rows}x{self.cols}")
        return self._data.get(i, {}).get(j, 0)

    def items(self):
        for i in sorted(self._data):
            row = self._data[i]
            for j in sorted(row):
                yield (i, j), row[j]

    def row_dict(self, i) -> dict[int, int]:
        return dict(self._data.get(i, {}))

    def row_dicts(self) -> dict[int, dict[int, int]]:
        """A fresh mutable copy of the sparse rows."""
        return {i: dict(r) for i, r in self._data.items()}

    @property
    def nnz(self):
        return sum(len(r) for r in self._data.values())

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for i, r in self._data.items():
            for j, v in r.items():
                out[i][j] = v
        return out

    def is_zero(self):
        return not self._data

    def transpose(self) -> IntegerMatrix:
        data: dict[int, dict[int, int]] = {}
        for i, r in self._data.items():
            for j, v in r.items():
                data.setdefault(j, {})[i] = v
        return IntegerMatrix._from_rows(self.cols, self.rows, data, self.col_labels, self.row_labels)

    T = property(transpose)

    def __matmul__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        odata = other._data
        data = {}
        for i, r in self._data.items():
            acc: dict[int, int] = {}
            for k, a in r.items():
                orow = odata.get(k)
                if orow:
                    for j, b in orow.items():
                        acc[j] = acc.get(j, 0) + a * b
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                data[i] = acc
        return IntegerMatrix._from_rows(self.rows, other.cols, data, self.row_labels, other.col_labels)

    def _combine(self, other, sign):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        data = self.row_dicts()
        for i, r in other._data.items():
            row = data.setdefault(i, {})
            for j, v in r.items():
                w = row.get(j, 0) + sign * v
                if w:
                    row[j] = w
                else:
                    row.pop(j, None)
        return IntegerMatrix._from_rows(self.rows, self.cols, data, self.row_labels, self.col_labels)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c: int) -> IntegerMatrix:
        if c == 0:
            return IntegerMatrix.zeros(self.rows, self.cols, self.row_labels, self.col_labels)
        data = {i: {j: c * v for j, v in r.items()} for i, r in self._data.items()}
        return IntegerMatrix._from_rows(self.rows, self.cols, data, self.row_labels, self.col_labels)

    def submatrix(self, row_idx, col_idx) -> IntegerMatrix:
        row_idx = list(row_idx)
        col_pos = {j: n for n, j in enumerate(col_idx)}
        data = {}
        for new_i, i in enumerate(row_idx):
            r = self._data.get(i)
            if r:
                nr = {col_pos[j]: v for j, v in r.items() if j in col_pos}
                if nr:
                    data[new_i] = nr
        return IntegerMatrix._from_rows(len(row_idx), len(col_pos), data)

    @staticmethod
    def block(blocks) -> IntegerMatrix:
        """Assemble a block matrix from a 2D list of IntegerMatrix values."""
        heights = [b[0].rows for b in blocks]
        widths = [b.cols for b in blocks[0]] if blocks else []
        data: dict[int, dict[int, int]] = {}
        r0 = 0
        for bi, brow in enumerate(blocks):
            if len(brow) != len(widths):
                raise ValueError("ragged block matrix")
            c0 = 0
            for bj, b in enumerate(brow):
                if b.rows != heights[bi] or b.cols != widths[bj]:
                    raise ValueError("block shapes do not line up")
                for i, r in b._data.items():
                    row = data.setdefault(r0 + i, {})
                    for j, v in r.items():
                        row[c0 + j] = v
                c0 += b.cols
            r0 += heights[bi]
        return IntegerMatrix._from_rows(sum(heights), sum(widths), data)

    def __eq__(self, other):
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.shape, tuple(self.items())))

    def __repr__(self):
        if self.rows * self.cols <= 64:
            return f"IntegerMatrix({self.to_dense()!r})"
        return f"IntegerMatrix(<{self.rows}x{self.cols}, nnz={self.nnz}>)"


# ---------------------------------------------------------------------------
# Smith normal form


def _snf_dense(A, track=True):
    """In-place SNF of a dense list-of-lists.

    Returns (U, V, Vinv) as dense lists when ``track`` is set, so that
    U * A_original * V equals the reduced A.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if track else None
    Vi = [[int(i == j) for j in range(n)] for i in range(n)] if track else None

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        if track:
            U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        if track:
            for row in V:
                row[j], row[k] = row[k], row[j]
            Vi[j], Vi[k] = Vi[k], Vi[j]

    def add_row(dst, src, q):
        # row_dst -= q * row_src
        rs, rd = A[src], A[dst]
        for c in range(n):
            if rs[c]:
                rd[c] -= q * rs[c]
        if track:
            us, ud = U[src], U[dst]
            for c in range(m):
                if us[c]:
                    ud[c] -= q * us[c]

    def add_col(dst, src, q):
        # col_dst -= q * col_src
        for row in A:
            if row[src]:
                row[dst] -= q * row[src]
        if track:
            for row in V:
                if row[src]:
                    row[dst] -= q * row[src]
            vs, vd = Vi[src], Vi[dst]
            for c in range(n):
                if vd[c]:
                    vs[c] += q * vd[c]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, A[i][t] // p)
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, A[t][j] // p)
                    if A[t][j]:
                        dirty = True
            if dirty:
                best = None
                for i in range(t, m):
                    if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                        best = (abs(A[i][t]), i, t)
                for j in range(t, n):
                    if A[t][j] and (best is None or abs(A[t][j]) < best[0]):
                        best = (abs(A[t][j]), t, j)
                _, i, j = best
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            # pivot isolated; enforce divisibility of the remaining block
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, -1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if track:
                U[t] = [-x for x in U[t]]
        t += 1
    return U, V, Vi


def smith_normal_form(M: IntegerMatrix):
    """Return (S, U, V) with U @ M @ V == S and U, V unimodular.

    S is diagonal with positive entries s_1 | s_2 | ... followed by zeros.
    """
    A = M.to_dense()
    m, n = M.shape
    U, V, _ = _snf_dense(A)
    if m == 0 or n == 0:
        U = [[int(i == j) for j in range(m)] for i in range(m)]
        V = [[int(i == j) for j in range(n)] for i in range(n)]
    return (
        IntegerMatrix.from_dense(A, m, n),
        IntegerMatrix.from_dense(U, m, m),
        IntegerMatrix.from_dense(V, n, n),
    )


def _eliminate_unit_pivots(rows: dict[int, dict[int, int]]) -> int:
    """Sparse Gaussian elimination on +-1 pivots, in place.

    Each eliminated pivot contributes an invariant factor 1 and removes one
    row and one column.  Pivots are chosen to keep fill-in low.
    """
    cols: dict[int, set[int]] = {}
    for i, r in rows.items():
        for j in r:
            cols.setdefault(j, set()).add(i)
    count = 0
    progress = True
    while progress:
        progress = False
        for j in sorted(cols, key=lambda c: len(cols[c])):
            colset = cols.get(j)
            if not colset:
                continue
            piv = None
            plen = 0
            for i in colset:
                v = rows[i][j]
                if v == 1 or v == -1:
                    ln = len(rows[i])
                    if piv is None or ln < plen:
                        piv, plen = i, ln
                        if ln == 1:
                            break
            if piv is None:
                continue
            prow = rows.pop(piv)
            u = prow[j]
            for k in prow:
                cols[k].discard(piv)
            for i in list(colset):
                r = rows[i]
                f = r[j] * u
                for k, w in prow.items():
                    nv = r.get(k, 0) - f * w
                    if nv:
                        if k not in r:
                            cols[k].add(i)
                        r[k] = nv
                    elif k in r:
                        del r[k]
                        cols[k].discard(i)
                if not r:
                    del rows[i]
            for k in prow:
                if not cols[k]:
                    del cols[k]
            cols.pop(j, None)
            count += 1
            progress = True
    return count


def invariant_factors(M: IntegerMatrix) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form, in divisibility order.

    The length of the list is the rank of M.  Unit pivots are eliminated
    sparsely before the dense reduction of whatever is left.
    """
    rows = M.row_dicts()
    ones = _eliminate_unit_pivots(rows)
    if not rows:
        return [1] * ones
    ridx = sorted(rows)
    cidx = sorted({j for r in rows.values() for j in r})
    cpos = {j: n for n, j in enumerate(cidx)}
    A = [[0] * len(cidx) for _ in ridx]
    for a, i in enumerate(ridx):
        for j, v in rows[i].items():
            A[a][cpos[j]] = v
    _snf_dense(A, track=False)
    diag = [A[t][t] for t in range(min(len(ridx), len(cidx))) if A[t][t]]
    return [1] * ones + diag


def rank(M: IntegerMatrix) -> int:
    return len(invariant_factors(M))


def determinant(M: IntegerMatrix) -> int:
    """Bareiss fraction-free determinant."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return 1
    A = M.to_dense()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Finitely generated abelian groups


def _normalize_orders(orders: Iterable[int]) -> tuple[int, ...]:
    ds = [abs(int(d)) for d in orders]
    if any(d == 0 for d in ds):
        raise ValueError("order 0 is not a torsion order; count it in the rank")
    ds = [d for d in ds if d != 1]
    for i in range(len(ds)):
        for j in range(i + 1, len(ds)):
            g = gcd(ds[i], ds[j])
            ds[i], ds[j] = g, ds[i] * ds[j] // g
    return tuple(d for d in ds if d != 1)


def _prime_powers(d: int) -> list[int]:
    out = []
    p = 2
    while p * p <= d:
        if d % p == 0:
            q = 1
            while d % p == 0:
                d //= p
                q *= p
            out.append(q)
        p += 1
    if d > 1:
        out.append(d)
    return out


@dataclass(frozen=True)
class FgAbGroup:
    """Z^rank + Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... and every d_i >= 2."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"invariant factor {d} must be at least 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"invariant factors {self.torsion} are not a divisibility chain")

    @classmethod
    def from_orders(cls, rank=0, orders=()):
        """Build from arbitrary cyclic orders, e.g. (2, 3) gives Z/6."""
        return cls(rank, _normalize_orders(orders))

    @classmethod
    def free(cls, rank):
        return cls(rank, ())

    @classmethod
    def cyclic(cls, d):
        if d == 0:
            return cls(1, ())
        return cls.from_orders(0, [d])

    @property
    def is_trivial(self):
        return self.rank == 0 and not self.torsion

    @property
    def torsion_order(self):
        out = 1
        for d in self.torsion:
            out *= d
        return out

    @property
    def exponent(self):
        return self.torsion[-1] if self.torsion else 1

    def primary_parts(self) -> tuple[int, ...]:
        """Torsion as sorted prime powers (display option)."""
        return tuple(sorted(q for d in self.torsion for q in _prime_powers(d)))

    def __add__(self, other: FgAbGroup) -> FgAbGroup:
        return FgAbGroup.from_orders(self.rank + other.rank, self.torsion + other.torsion)

    def __mul__(self, k: int) -> FgAbGroup:
        """Direct sum of k copies."""
        return FgAbGroup.from_orders(self.rank * k, self.torsion * k)

    __rmul__ = __mul__

    def tensor(self, other: FgAbGroup) -> FgAbGroup:
        orders = [gcd(a, b) for a in self.torsion for b in other.torsion]
        orders += list(self.torsion) * other.rank + list(other.torsion) * self.rank
        return FgAbGroup.from_orders(self.rank * other.rank, orders)

    def tor(self, other: FgAbGroup) -> FgAbGroup:
        return FgAbGroup.from_orders(0, [gcd(a, b) for a in self.torsion for b in other.torsion])

    def format(self, primary=False, unicode=True):
        plus = " ⊕ " if unicode else " + "
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        for d in self.primary_parts() if primary else self.torsion:
            parts.append(f"Z/{d}")
        return plus.join(parts) if parts else "0"

    def __str__(self):
        return self.format()


TRIVIAL = FgAbGroup()
Z = FgAbGroup(1)


# ---------------------------------------------------------------------------
# Graded groups


@dataclass(frozen=True)
class GradedAbGroup:
    """Degree -> FgAbGroup, trivial degrees omitted.

    ``truncated_above = D`` means the values are only known in degrees <= D;
    ``None`` means the data is complete.
    """

    items: tuple[tuple[int, FgAbGroup], ...] = ()
    truncated_above: int | None = None

    def __post_init__(self):
        comps = {}
        for d, g in self.items:
            d = int(d)
            if d in comps:
                raise ValueError(f"degree {d} given twice")
            if self.truncated_above is not None and d > self.truncated_above and not g.is_trivial:
                raise ValueError(f"degree {d} lies above the truncation {self.truncated_above}")
            if not g.is_trivial:
                comps[d] = g
        object.__setattr__(self, "items", tuple(sorted(comps.items())))

    @classmethod
    def from_dict(cls, components: Mapping[int, FgAbGroup], truncated_above=None):
        return cls(tuple(components.items()), truncated_above)

    @classmethod
    def trivial(cls):
        return cls()

    @property
    def components(self) -> dict[int, FgAbGroup]:
        return dict(self.items)

    def degrees(self) -> list[int]:
        return [d for d, _ in self.items]

    def __getitem__(self, d: int) -> FgAbGroup:
        for e, g in self.items:
            if e == d:
                return g
        return TRIVIAL

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)

    @property
    def is_trivial(self):
        return not self.items

    @property
    def is_complete(self):
        return self.truncated_above is None

    def truncate(self, D: int) -> GradedAbGroup:
        """Forget everything above degree D."""
        D = D if self.truncated_above is None else min(D, self.truncated_above)
        return GradedAbGroup(tuple((d, g) for d, g in self.items if d <= D), D)

    def restrict(self, lo=None, hi=None) -> GradedAbGroup:
        """Keep degrees in [lo, hi] without changing the truncation marker."""
        keep = tuple(
            (d, g) for d, g in self.items if (lo is None or d >= lo) and (hi is None or d <= hi)
        )
        return GradedAbGroup(keep, self.truncated_above)

    def rationalize(self) -> GradedAbGroup:
        """Rank-only view: drop all torsion."""
        return GradedAbGroup(
            tuple((d, FgAbGroup(g.rank)) for d, g in self.items), self.truncated_above
        )

    def format(self, unicode=True, primary=False):
        if not self.items:
            body = "0"
        else:
            body = ", ".join(f"{d}: {g.format(primary, unicode)}" for d, g in self.items)
        body = "{" + body + "}" if self.items else body
        if self.truncated_above is not None:
            body += f" (degrees <= {self.truncated_above})"
        return body

    def __str__(self):
        return self.format()


def direct_sum(gs: Iterable[GradedAbGroup]) -> GradedAbGroup:
    comps: dict[int, FgAbGroup] = {}
    trunc = None
    for g in gs:
        if g.truncated_above is not None:
            trunc = g.truncated_above if trunc is None else min(trunc, g.truncated_above)
        for d, a in g.items:
            comps[d] = comps.get(d, TRIVIAL) + a
    if trunc is not None:
        comps = {d: a for d, a in comps.items() if d <= trunc}
    return GradedAbGroup.from_dict(comps, trunc)


def shift(g: GradedAbGroup, k: int) -> GradedAbGroup:
    """Move the component in degree d to degree d + k."""
    trunc = None if g.truncated_above is None else g.truncated_above + k
    return GradedAbGroup(tuple((d + k, a) for d, a in g.items), trunc)


def concentrated(degree: int, group: FgAbGroup, truncated_above=None) -> GradedAbGroup:
    return GradedAbGroup(((degree, group),), truncated_above)


# ---------------------------------------------------------------------------


def kernel_basis(M: IntegerMatrix) -> IntegerMatrix:
    """Columns form a basis of the (saturated) kernel of M."""
    A = M.to_dense()
    m, n = M.shape
    _, V, _ = _snf_dense(A)
    if m == 0:
        return IntegerMatrix.identity(n)
    r = sum(1 for t in range(min(m, n)) if A[t][t])
    Vm = IntegerMatrix.from_dense(V, n, n) if n else IntegerMatrix.zeros(0, 0)
    return Vm.submatrix(range(n), range(r, n))


def subquotient_group(Z: IntegerMatrix, B: IntegerMatrix) -> FgAbGroup:
    """ker(Z) / im(B), where Z: Z^k -> Z^a and B: Z^b -> Z^k with Z @ B == 0."""
    if Z.cols != B.rows:
        raise ValueError(f"Z has {Z.cols} columns but B has {B.rows} rows")
    if not (Z @ B).is_zero():
        raise CompositionNotZero("Z @ B is not the zero matrix")
    k = Z.cols
    A = Z.to_dense()
    if Z.rows == 0:
        r = 0
        Vinv = IntegerMatrix.identity(k)
    else:
        _, _, Vi = _snf_dense(A)
        r = sum(1 for t in range(min(Z.rows, k)) if A[t][t])
        Vinv = IntegerMatrix.from_dense(Vi, k, k) if k else IntegerMatrix.zeros(0, 0)
    coords = Vinv @ B
    # B lies in ker Z, so the first r coordinates vanish.
    C = coords.submatrix(range(r, k), range(B.cols))
    factors = invariant_factors(C)
    return FgAbGroup.from_orders((k - r) - len(factors), factors)
