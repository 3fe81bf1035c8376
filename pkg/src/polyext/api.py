"""
Ext groups between polynomial functors on finitely generated free groups.

:func:`ext` dispatches a pair of functors to closed-form answers and/or
chain-level models.  Results are isomorphism types of graded abelian groups
in cohomological Ext grading; any group action twist is not recorded.

Answers containing an infinite torsion family are computed through a degree
bound D, marked as truncated there, and carry a text annotation describing
the pattern beyond D.  Answers without such a family are always complete,
whatever D is.
"""

from __future__ import annotations

import enum
import os
import re
from dataclasses import dataclass

from .algebra import FgAbGroup, GradedAbGroup, direct_sum, shift
from .combinatorics import (
    bell,
    composition_count,
    composition_orbits,
    partition_number,
    partitions_count,
    stirling,
    surjection_count,
)
from .complexes import homology
from .errors import (
    CrossCheckMismatch,
    InvalidParameter,
    OnlyOneMethod,
    ParseError,
    UnsupportedFunctor,
    UnsupportedPair,
)
from .groupcoh import bsigma3_mod_bsigma2, rp_infinity_reduced_cohomology
from .models import (
    lambda2_pullback_complex,
    rbar_complex,
    surjection_complex,
    tensor_symmetric_complex,
)

DEFAULT_MAX_DEGREE = 8


def default_max_degree() -> int:
    """Degree bound from POLYEXT_MAX_DEGREE, or 8."""
    raw = os.environ.get("POLYEXT_MAX_DEGREE")
    if raw is None or raw == "":
        return DEFAULT_MAX_DEGREE
    try:
        D = int(raw)
    except ValueError:
        raise InvalidParameter(f"POLYEXT_MAX_DEGREE must be an integer, got {raw!r}") from None
    if D < 0:
        raise InvalidParameter("POLYEXT_MAX_DEGREE must be non-negative")
    return D


class Kind(enum.Enum):
    TENSOR = "T"
    EXTERIOR = "Lambda"
    DIVIDED = "Gamma"
    SYMMETRIC = "S"
    PASSI = "Pa"


@dataclass(frozen=True)
class FunctorDescriptor:
    kind: Kind
    arity: int

    def __post_init__(self):
        if not isinstance(self.arity, int) or self.arity < 0:
            raise InvalidParameter("arity must be a non-negative integer")
        if self.kind is Kind.PASSI and self.arity < 1:
            raise InvalidParameter("Passi functors need arity >= 1")

    def __str__(self):
        if self.kind is Kind.TENSOR and self.arity == 1:
            return "ab"
        return f"{self.kind.value}^{self.arity}"


def T(n):
    return FunctorDescriptor(Kind.TENSOR, n)


def Lambda(n):
    return FunctorDescriptor(Kind.EXTERIOR, n)


def Gamma(n):
    return FunctorDescriptor(Kind.DIVIDED, n)


def S(n):
    return FunctorDescriptor(Kind.SYMMETRIC, n)


def Pa(n):
    return FunctorDescriptor(Kind.PASSI, n)


AB = T(1)

_KEYWORDS = [("lambda", Kind.EXTERIOR), ("gamma", Kind.DIVIDED), ("pa", Kind.PASSI), ("t", Kind.TENSOR), ("s", Kind.SYMMETRIC)]


def parse_functor(text: str) -> FunctorDescriptor:
    """Parse ``ab``, ``T^n``, ``Lambda^n``, ``Gamma^n``, ``S^n`` or ``Pa^n`` (case-insensitive)."""
    if not isinstance(text, str):
        raise ParseError(repr(text), 0, ["a functor name"])
    low = text.lower()
    pos = len(low) - len(low.lstrip())
    end = len(low.rstrip())
    if low[pos:end] == "ab":
        return AB
    kind = None
    for word, k in _KEYWORDS:
        if low.startswith(word, pos):
            kind = k
            pos += len(word)
            break
    if kind is None:
        raise ParseError(text, pos, ["ab", "T", "Lambda", "Gamma", "S", "Pa"])
    if pos >= end or low[pos] != "^":
        raise ParseError(text, pos, ["'^'"])
    pos += 1
    m = re.compile(r"\d+").match(low, pos, end)
    if m is None:
        raise ParseError(text, pos, ["a decimal number"])
    if m.end() != end:
        raise ParseError(text, m.end(), ["end of input"])
    n = int(m.group())
    if kind is Kind.PASSI and n < 1:
        raise ParseError(text, pos, ["a number >= 1"])
    return FunctorDescriptor(kind, n)


def _as_descriptor(F) -> FunctorDescriptor:
    return parse_functor(F) if isinstance(F, str) else F


# ---------------------------------------------------------------------------
# results


class Method(enum.Enum):
    CLOSED = "closed"
    CHAIN = "chain"
    BOTH = "both"


@dataclass(frozen=True)
class ExtResult:
    source: FunctorDescriptor
    target: FunctorDescriptor
    value: GradedAbGroup
    method: Method
    rational: bool = False
    periodicity: str | None = None
    warnings: tuple[str, ...] = ()

    def format(self, unicode=True) -> str:
        g = self.value
        if self.rational:
            body = ", ".join(f"{d}: Q^{a.rank}" if a.rank > 1 else f"{d}: Q" for d, a in g)
            text = "{" + body + "}" if body else "0"
            if g.truncated_above is not None:
                text += f" (degrees <= {g.truncated_above})"
            return text
        return g.format(unicode)

    def __str__(self):
        return self.format()


SUPPORTED = [
    "T^m, T^n      closed form",
    "T^m, Lambda^n closed form",
    "T^m, Gamma^n  closed form",
    "T^m, S^n      chain level (tensor products of symmetric-power complexes)",
    "Pa^m, T^n     closed form and chain level (surjection complex)",
    "ab, Pa^n      closed form and chain level (cell complex)",
    "Lambda^2, Lambda^n  closed form and chain level (pullback square)",
    "Lambda^3, Lambda^n  closed form",
    "Lambda^m, Lambda^n / T^n / S^n / Gamma^n  rational only",
    "all arities >= 1; Lambda^1, Gamma^1, S^1 are identified with ab as a source",
]


@dataclass
class _Plan:
    closed: object = None  # callable D -> (GradedAbGroup, periodicity)
    chain: object = None  # callable D -> (GradedAbGroup, warnings)


def _normalize_source(F: FunctorDescriptor) -> FunctorDescriptor:
    if F.arity == 1 and F.kind in (Kind.EXTERIOR, Kind.DIVIDED, Kind.SYMMETRIC):
        return AB
    return F


def _free(degree, rank):
    return GradedAbGroup.from_dict({degree: FgAbGroup.free(rank)}) if rank else GradedAbGroup()


def passi_closed_rank(m: int, n: int) -> int:
    """Free rank of Ext^{n-m}(Pa_m, T^n∘ab) for m < n, via the Euler characteristic."""
    return (-1) ** m * sum((-1) ** k * surjection_count(n, k) for k in range(1, m + 1))


def lambda2_closed(n: int, D: int):
    comps = {}
    if partitions_count(n, 2):
        comps[n - 2] = FgAbGroup.free(partitions_count(n, 2))
    if n % 2 == 0:
        return GradedAbGroup.from_dict(comps), None
    g = direct_sum([GradedAbGroup.from_dict(comps), shift(rp_infinity_reduced_cohomology(max(D - n + 1, 0)), n - 1)])
    return g.truncate(D), f"Z/2 in degrees {n - 1} + 2k for every k >= 1"


def lambda3_closed(n: int, D: int):
    parts = []
    if partitions_count(n, 3):
        parts.append(_free(n - 3, partitions_count(n, 3)))
    copies = n // 2
    lo = max(D - n + 2, 0)
    notes = []
    if copies:
        parts.append(_times(shift(rp_infinity_reduced_cohomology(lo), n - 2), copies))
        notes.append(f"(Z/2)^{copies} in degrees {n - 2} + 2k for every k >= 1" if copies > 1 else f"Z/2 in degrees {n - 2} + 2k for every k >= 1")
    if n % 3:
        parts.append(shift(bsigma3_mod_bsigma2(lo), n - 2))
        notes.append(f"Z/3 in degrees {n - 2} + 4k for every k >= 1")
    g = direct_sum(parts).truncate(D)
    return g, "; ".join(notes)


def _times(g: GradedAbGroup, k: int) -> GradedAbGroup:
    return direct_sum([g] * k)


def _plan(F: FunctorDescriptor, G: FunctorDescriptor) -> _Plan | None:
    F = _normalize_source(F)
    m, n = F.arity, G.arity
    if m < 1 or n < 1:
        return None
    p = _Plan()
    if F.kind is Kind.TENSOR:
        if G.kind is Kind.TENSOR:
            p.closed = lambda D: (_free(n - m, surjection_count(n, m)), None)
        elif G.kind is Kind.EXTERIOR:
            p.closed = lambda D: (_free(n - m, composition_count(n, m)), None)
        elif G.kind is Kind.DIVIDED:
            p.closed = lambda D: (_free(0, 1 if m == n else 0), None)
        elif G.kind is Kind.SYMMETRIC:
            p.chain = lambda D: (direct_sum(homology(C) for C in tensor_symmetric_complex(m, n)), [])
        elif G.kind is Kind.PASSI and m == 1:
            p.closed = lambda D: (_free(n - 1, n % 2), None)

            def chain(D):
                M = rbar_complex(n)
                return M.ext(), M.warnings

            p.chain = chain
        else:
            return None
    elif F.kind is Kind.PASSI and G.kind is Kind.TENSOR:
        p.closed = lambda D: (_free(0, 1) if m >= n else _free(n - m, passi_closed_rank(m, n)), None)

        def chain(D):
            M = surjection_complex(n, m)
            return M.ext(), M.warnings

        p.chain = chain
    elif F.kind is Kind.EXTERIOR and G.kind is Kind.EXTERIOR and m == 2:
        p.closed = lambda D: lambda2_closed(n, D)

        def chain(D):
            M = lambda2_pullback_complex(n, max(D, n - 2))
            return M.ext().truncate(D), M.warnings

        p.chain = chain
    elif F.kind is Kind.EXTERIOR and G.kind is Kind.EXTERIOR and m == 3:
        p.closed = lambda D: lambda3_closed(n, D)
    else:
        return None
    return p


def _rational_value(F: FunctorDescriptor, G: FunctorDescriptor) -> GradedAbGroup | None:
    """Rational Ext for source Λ^m from the Part / Stirling formulas, if covered."""
    F = FunctorDescriptor(Kind.EXTERIOR, 1) if F == AB else F
    if F.kind is not Kind.EXTERIOR:
        return None
    m, n = F.arity, G.arity
    if m < 1 or n < 1:
        return None
    if G.kind is Kind.EXTERIOR:
        return _free(n - m, partitions_count(n, m))
    if G.kind is Kind.TENSOR:
        return _free(n - m, stirling(n, m))
    if G.kind in (Kind.SYMMETRIC, Kind.DIVIDED):
        return _free(0, 1 if m == n == 1 else 0)
    return None


def _agree(a: GradedAbGroup, b: GradedAbGroup):
    """First degree where a and b differ within their common range, else None."""
    bounds = [t for t in (a.truncated_above, b.truncated_above) if t is not None]
    hi = min(bounds) if bounds else None
    degs = sorted(set(a.degrees()) | set(b.degrees()))
    for d in degs:
        if hi is not None and d > hi:
            break
        if a[d] != b[d]:
            return d
    return None


def ext(F, G, rational: bool = False, max_degree: int | None = None, method: str = "auto") -> ExtResult:
    """Ext^*(F∘ab, G∘ab) as a graded group.

    ``method`` is ``closed``, ``chain``, ``both`` (compute both and insist they
    agree) or ``auto`` (closed form when there is one).
    """
    F, G = _as_descriptor(F), _as_descriptor(G)
    D = default_max_degree() if max_degree is None else max_degree
    if D < 0:
        raise InvalidParameter("degree bound must be non-negative")
    if method not in ("auto", "closed", "chain", "both"):
        raise InvalidParameter(f"unknown method {method!r}")
    plan = _plan(F, G)
    if plan is None:
        if rational:
            value = _rational_value(F, G)
            if value is not None:
                if method in ("chain", "both"):
                    raise UnsupportedPair(str(F), str(G), SUPPORTED)
                return ExtResult(F, G, value, Method.CLOSED, rational=True)
        raise UnsupportedPair(str(F), str(G), SUPPORTED)

    warnings: list[str] = []
    periodicity = None
    if method == "auto":
        method = "closed" if plan.closed else "chain"
    if method == "closed" and not plan.closed or method == "chain" and not plan.chain:
        raise OnlyOneMethod(f"Ext({F}, {G}) has no {method} computation")
    if method == "both" and not (plan.closed and plan.chain):
        raise OnlyOneMethod(f"Ext({F}, {G}) has only one computation")

    if method in ("closed", "both"):
        value, periodicity = plan.closed(D)
        used = Method.CLOSED
    if method in ("chain", "both"):
        chain_value, w = plan.chain(D)
        warnings.extend(w)
        if method == "both":
            bad = _agree(value, chain_value)
            if bad is not None:
                raise CrossCheckMismatch(bad, value[bad], chain_value[bad])
            used = Method.BOTH
        else:
            value, used = chain_value, Method.CHAIN
    if _normalize_source(F) == Lambda(2) and G.arity == 1:
        warnings.append("n = 1 lies outside the range where the closed form is established")
    if rational:
        value = value.rationalize()
        periodicity = None
    negative = [d for d in value.degrees() if d < 0]
    if negative:
        raise AssertionError(f"negative Ext degrees {negative} for ({F}, {G})")
    return ExtResult(F, G, value, used, rational, periodicity, tuple(dict.fromkeys(warnings)))


# ---------------------------------------------------------------------------
# cross-checks


@dataclass
class CrossCheckReport:
    source: FunctorDescriptor
    target: FunctorDescriptor
    max_degree: int
    closed: GradedAbGroup
    chain: GradedAbGroup
    mismatch: int | None = None

    @property
    def ok(self) -> bool:
        return self.mismatch is None

    def lines(self) -> list[str]:
        bounds = [t for t in (self.closed.truncated_above, self.chain.truncated_above) if t is not None]
        hi = min(bounds) if bounds else max(self.closed.degrees() + self.chain.degrees() + [0])
        out = []
        for d in range(0, hi + 1):
            a, b = self.closed[d], self.chain[d]
            if a.is_trivial and b.is_trivial:
                continue
            mark = "ok" if a == b else "MISMATCH"
            out.append(f"  {d}: closed {a}  chain {b}  {mark}")
        return out


def cross_check(F, G, max_degree: int | None = None, strict: bool = True) -> CrossCheckReport:
    """Compare the closed form and the chain-level model degree by degree."""
    F, G = _as_descriptor(F), _as_descriptor(G)
    D = default_max_degree() if max_degree is None else max_degree
    plan = _plan(F, G)
    if plan is None:
        raise UnsupportedPair(str(F), str(G), SUPPORTED)
    if not (plan.closed and plan.chain):
        raise OnlyOneMethod(f"Ext({F}, {G}) has only one computation")
    closed, _ = plan.closed(D)
    chain, _ = plan.chain(D)
    report = CrossCheckReport(F, G, D, closed, chain, _agree(closed, chain))
    if strict and not report.ok:
        d = report.mismatch
        raise CrossCheckMismatch(d, closed[d], chain[d])
    return report


def cross_check_suite(max_n: int = 5, max_degree: int = 10):
    """All pairs with two computations, for small arities."""
    pairs = []
    for n in range(1, max_n + 1):
        pairs.append((AB, Pa(n)))
        pairs.append((Lambda(2), Lambda(n)))
        for m in range(1, max_n + 1):
            pairs.append((Pa(m), T(n)))
    return [cross_check(F, G, max_degree, strict=False) for F, G in pairs]


# ---------------------------------------------------------------------------
# stable cohomology of automorphism groups of free groups


@dataclass(frozen=True)
class StableSummand:
    """One summand H^{*-shift}(space; coefficients)."""

    shift: int
    space: str
    twist: str
    stabilizer: tuple[int, ...] = ()

    def __str__(self):
        return f"H^(*-{self.shift})({self.space}; {self.twist})"


@dataclass(frozen=True)
class StableResult:
    functor: FunctorDescriptor
    mode: str
    value: GradedAbGroup | None = None
    summands: tuple[StableSummand, ...] = ()

    def format(self) -> str:
        if self.mode == "rational":
            body = ", ".join(f"{d}: Q^{a.rank}" if a.rank > 1 else f"{d}: Q" for d, a in self.value)
            return "{" + body + "}" if body else "0"
        return "\n".join(str(s) for s in self.summands) if self.summands else "0"


def _space_label(blocks):
    return "BΣ∞" + "".join(f"×BΣ{k}" for k in blocks)


def stable_cohomology(F, mode: str = "rational", max_degree: int | None = None) -> StableResult:
    """Stable cohomology of aut(F_n) with coefficients in F∘ab.

    Rational mode gives graded Q-dimensions.  Structural mode lists summands
    H^{*-n}(BΣ∞ × B(stabilizer); R) without evaluating them.
    """
    F = _as_descriptor(F)
    n = F.arity
    if mode not in ("rational", "structural"):
        raise InvalidParameter(f"unknown mode {mode!r}")
    if n < 1:
        raise UnsupportedFunctor(f"stable cohomology needs arity >= 1, got {F}")
    if F.kind is Kind.PASSI:
        raise UnsupportedFunctor("Passi functors are not covered")
    if mode == "rational":
        if F.kind is Kind.TENSOR:
            value = _free(n, bell(n))
        elif F.kind is Kind.EXTERIOR:
            value = _free(n, partition_number(n))
        else:
            value = _free(1, 1) if n == 1 else GradedAbGroup()
        return StableResult(F, mode, value=value)
    if F.kind is Kind.TENSOR:
        summands = [StableSummand(n, "BΣ∞", "trivial")] * bell(n)
    elif F.kind is Kind.EXTERIOR:
        summands = []
        for d in range(1, n + 1):
            for _, blocks in composition_orbits(n, d):
                summands.append(StableSummand(n, _space_label(blocks), "trivial", blocks))
    elif F.kind is Kind.DIVIDED:
        summands = [StableSummand(n, f"BΣ∞×BΣ{n}", "sign", (n,))]
    else:
        raise UnsupportedFunctor("symmetric powers have a rational answer only")
    return StableResult(F, mode, summands=tuple(summands))
