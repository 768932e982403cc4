"""Ordered abelian groups of the form Z^(I) under (reverse-)lexicographic orders.

Elements are finitely supported integer vectors over a finite index chain.
Two significance conventions are supported: the least differing index decides
(plain lexicographic), or the greatest index of the support decides (the
reverse-lexicographic order used by the binary-tree construction).

Isolated subgroups are represented by index segments: under the least-index
convention the admissible segments are the upward-closed subsets of the index
chain, under the greatest-index convention the downward-closed ones.  The set
of all subgroups is infinite, so segment form plus the sampling check below is
the falsifiable surrogate for completeness.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Optional

from .config import DEFAULT_BOUND, DEFAULT_SEED, DEFAULT_TRIALS
from .errors import MalformedSegment, ZeroElement
from .order_core import FiniteLinOrder, OrderMap, order_iso
from . import order_core

LEAST = "least-index-significant"
GREATEST = "greatest-index-significant"


# ---------------------------------------------------------------------------
# Elements


@dataclass(frozen=True)
class GroupElement:
    """Finitely supported integer vector, stored as (label, value) pairs."""

    support: frozenset

    def __post_init__(self):
        object.__setattr__(self, "support", frozenset(tuple(p) for p in self.support))
        labels = [lbl for (lbl, _) in self.support]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate labels in support")
        if any(v == 0 for (_, v) in self.support):
            raise ValueError("zero values may not be stored")

    def as_dict(self) -> dict:
        return dict(self.support)

    def labels(self) -> frozenset:
        return frozenset(lbl for (lbl, _) in self.support)

    def value(self, label) -> int:
        for (lbl, v) in self.support:
            if lbl == label:
                return v
        return 0

    def is_zero(self) -> bool:
        return not self.support

    def __repr__(self):
        items = sorted(self.support, key=lambda p: repr(p[0]))
        body = ",".join(f"{lbl}:{v}" for (lbl, v) in items)
        return "{" + body + "}"


ZERO = GroupElement(frozenset())


def element(coords: dict) -> GroupElement:
    """Build an element from a coordinate map, dropping zero entries."""
    return GroupElement(frozenset((lbl, v) for (lbl, v) in coords.items() if v != 0))


def add(f: GroupElement, g: GroupElement) -> GroupElement:
    out = f.as_dict()
    for (lbl, v) in g.support:
        out[lbl] = out.get(lbl, 0) + v
    return element(out)


def neg(f: GroupElement) -> GroupElement:
    return GroupElement(frozenset((lbl, -v) for (lbl, v) in f.support))


def sub(f: GroupElement, g: GroupElement) -> GroupElement:
    return add(f, neg(g))


# ---------------------------------------------------------------------------
# Groups and comparison


@dataclass(frozen=True)
class LexGroup:
    """Z^(index) with a significance convention for the total order."""

    index: FiniteLinOrder
    convention: str = LEAST

    def __post_init__(self):
        if not len(self.index):
            raise ValueError("index chain must be nonempty")
        if self.convention not in (LEAST, GREATEST):
            raise ValueError(f"unknown convention {self.convention!r}")

    def check_element(self, f: GroupElement):
        for lbl in f.labels():
            if lbl not in self.index:
                raise ValueError(f"support label {lbl!r} outside the index chain")


def zlex(n: int) -> LexGroup:
    """Z^n under the plain lexicographic order, index 0 most significant."""
    if n < 1:
        raise ValueError("zlex(n) requires n >= 1")
    return LexGroup(FiniteLinOrder(tuple(range(n))), LEAST)


def cmp(g: LexGroup, f1: GroupElement, f2: GroupElement) -> int:
    """Total translation-invariant comparison; returns -1, 0, or 1."""
    g.check_element(f1)
    g.check_element(f2)
    d = sub(f1, f2)
    if d.is_zero():
        return 0
    positions = [g.index.position(lbl) for lbl in d.labels()]
    decisive = min(positions) if g.convention == LEAST else max(positions)
    v = d.value(g.index.elements[decisive])
    return 1 if v > 0 else -1


def abs_element(g: LexGroup, f: GroupElement) -> GroupElement:
    return neg(f) if cmp(g, f, ZERO) < 0 else f


# ---------------------------------------------------------------------------
# Isolated subgroups as index segments


@dataclass(frozen=True)
class IsolatedSubgroup:
    group: LexGroup
    segment: frozenset

    def __post_init__(self):
        object.__setattr__(self, "segment", frozenset(self.segment))
        for lbl in self.segment:
            if lbl not in self.group.index:
                raise ValueError(f"segment label {lbl!r} outside the index chain")

    def is_well_formed(self) -> bool:
        """Closure check: upward-closed under LEAST, downward-closed under GREATEST."""
        idx = self.group.index
        positions = sorted(idx.position(lbl) for lbl in self.segment)
        if not positions:
            return True
        if self.group.convention == LEAST:
            return positions == list(range(positions[0], len(idx)))
        return positions == list(range(0, positions[-1] + 1))

    def contains(self, f: GroupElement) -> bool:
        return f.labels() <= self.segment


def random_element(rng: random.Random, labels, bound: int) -> GroupElement:
    return element({lbl: rng.randint(-bound, bound) for lbl in labels})


def _coord_sign(convention: str, positions: dict, coords: dict) -> int:
    decisive_pos = None
    decisive_val = 0
    for lbl, v in coords.items():
        if v == 0:
            continue
        p = positions[lbl]
        if (
            decisive_pos is None
            or (convention == LEAST and p < decisive_pos)
            or (convention == GREATEST and p > decisive_pos)
        ):
            decisive_pos, decisive_val = p, v
    if decisive_pos is None:
        return 0
    return 1 if decisive_val > 0 else -1


def is_isolated_sample(
    g: LexGroup,
    h_sub: IsolatedSubgroup,
    trials: int = DEFAULT_TRIALS,
    bound: int = DEFAULT_BOUND,
    seed: Optional[int] = None,
) -> bool:
    """Sampling check of the interval property: |x| <= |h|, h in H forces x in H.

    Malformed segments are rejected deterministically before any sampling.
    The loop works on raw coordinate maps: a counterexample is a pair with
    |x| <= |h| (the difference of absolute values has nonnegative sign) whose
    x has support outside the segment.
    """
    if not h_sub.is_well_formed():
        raise MalformedSegment(f"segment {sorted(map(repr, h_sub.segment))} violates closure")
    rng = random.Random(DEFAULT_SEED if seed is None else seed)
    convention = g.convention
    positions = {lbl: i for i, lbl in enumerate(g.index.elements)}
    seg_labels = [lbl for lbl in g.index.elements if lbl in h_sub.segment]
    all_labels = g.index.elements
    segment = h_sub.segment
    for _ in range(trials):
        h = {lbl: rng.randint(-bound, bound) for lbl in seg_labels}
        x = {lbl: rng.randint(-bound, bound) for lbl in all_labels}
        if _coord_sign(convention, positions, h) < 0:
            h = {lbl: -v for lbl, v in h.items()}
        if _coord_sign(convention, positions, x) < 0:
            x = {lbl: -v for lbl, v in x.items()}
        diff = {lbl: h.get(lbl, 0) - x[lbl] for lbl in all_labels}
        if _coord_sign(convention, positions, diff) >= 0:
            if any(v != 0 and lbl not in segment for lbl, v in x.items()):
                return False
    return True


def isolated_hull(g: LexGroup, f: GroupElement) -> IsolatedSubgroup:
    """Smallest well-formed segment subgroup containing f."""
    if f.is_zero():
        raise ZeroElement("the hull of 0 is the trivial subgroup; pass a nonzero element")
    g.check_element(f)
    positions = [g.index.position(lbl) for lbl in f.labels()]
    if g.convention == LEAST:
        chosen = range(min(positions), len(g.index))
    else:
        chosen = range(0, max(positions) + 1)
    return IsolatedSubgroup(g, frozenset(g.index.elements[i] for i in chosen))


def segments(g: LexGroup) -> list:
    """All well-formed segments, ascending by inclusion (empty through full)."""
    n = len(g.index)
    out = []
    for size in range(n + 1):
        if g.convention == LEAST:
            out.append(frozenset(g.index.elements[n - size:]))
        else:
            out.append(frozenset(g.index.elements[:size]))
    return out


def _segment_label(g: LexGroup, seg: frozenset) -> tuple:
    return tuple(lbl for lbl in g.index.elements if lbl in seg)


def rank(g: LexGroup) -> FiniteLinOrder:
    """The chain of nontrivial segment subgroups, ascending by inclusion."""
    return FiniteLinOrder(tuple(_segment_label(g, s) for s in segments(g)[1:]))


def valuation_spectrum(g: LexGroup) -> FiniteLinOrder:
    """Prime chain of the valuation ring attached to g, smallest prime first.

    Primes correspond inclusion-reversingly to all segment subgroups, the
    trivial and full ones included; the ring itself is never constructed.
    """
    return FiniteLinOrder(tuple(f"P{i}" for i in range(len(segments(g)))))


def spectrum_segments(g: LexGroup) -> list:
    """(prime label, segment) pairs: P0 is the zero ideal, from the full segment."""
    segs = segments(g)
    return [
        (f"P{i}", _segment_label(g, seg))
        for i, seg in enumerate(reversed(segs))
    ]


# ---------------------------------------------------------------------------
# Concatenation theorem


def combine_groups(groups) -> LexGroup:
    """Lexicographic sum over the concatenated index, part 0 most significant."""
    labels = [(i, lbl) for i, g in enumerate(groups) for lbl in g.index.elements]
    return LexGroup(FiniteLinOrder(tuple(labels)), LEAST)


def embed_part(part_pos: int, f: GroupElement) -> GroupElement:
    return GroupElement(frozenset(((part_pos, lbl), v) for (lbl, v) in f.support))


def project_first_factor(f: GroupElement) -> GroupElement:
    """Forget all coordinates outside part 0 of a combined group."""
    return GroupElement(frozenset((lbl, v) for (lbl, v) in f.support if lbl[0] == 0))


@dataclass
class ConcatReport:
    lhs: FiniteLinOrder
    rhs: FiniteLinOrder
    witness: Optional[OrderMap]

    @property
    def ok(self) -> bool:
        return self.witness is not None

    def describe(self) -> str:
        status = "isomorphic" if self.ok else "NOT isomorphic"
        return f"rank of sum: fin({len(self.lhs)}); concatenated ranks: fin({len(self.rhs)}); {status}"


def check_concatenation_theorem(groups) -> ConcatReport:
    """Rank of a lexicographic sum against the reversed concatenation of ranks."""
    groups = list(groups)
    if not groups:
        raise ValueError("at least one group is required")
    if any(g.convention != LEAST for g in groups):
        raise ValueError("the concatenation theorem check expects the least-index convention")
    lhs = rank(combine_groups(groups))
    rhs = order_core.concat(*[rank(g) for g in reversed(groups)])
    return ConcatReport(lhs, rhs, order_iso(lhs, rhs))


# ---------------------------------------------------------------------------
# The binary-tree group


def tree_cmp(a: str, b: str) -> int:
    """Prefix-lexicographic order on binary strings: prefixes come first."""
    if a == b:
        return 0
    n = min(len(a), len(b))
    for i in range(n):
        if a[i] != b[i]:
            return -1 if a[i] < b[i] else 1
    return -1 if len(a) < len(b) else 1


@dataclass(frozen=True)
class TreeIndex:
    """All binary strings of length < depth under the prefix-lexicographic order."""

    depth: int

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("tree depth must be >= 1")

    def carrier(self) -> FiniteLinOrder:
        strings = [
            format(k, "b").zfill(length) if length else ""
            for length in range(self.depth)
            for k in range(2 ** length)
        ]
        return FiniteLinOrder(tuple(sorted(strings, key=cmp_to_key(tree_cmp))))

    def leaves(self) -> list:
        return sorted(
            (format(k, "b").zfill(self.depth) for k in range(2 ** self.depth)),
            key=cmp_to_key(tree_cmp),
        )


def tree_group(n: int):
    """The group Z^(2^<n) in reverse-lexicographic order, with its leaf subgroups.

    Returns (group, leaf map) where leaf map sends each length-n binary string
    x to the subgroup of elements supported strictly below x in the tree order.
    """
    idx = TreeIndex(n)
    group = LexGroup(idx.carrier(), GREATEST)
    carrier = group.index.elements
    leaf_map = {}
    for leaf in idx.leaves():
        seg = frozenset(y for y in carrier if tree_cmp(y, leaf) < 0)
        leaf_map[leaf] = IsolatedSubgroup(group, seg)
    return group, leaf_map
