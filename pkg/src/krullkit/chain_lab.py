"""Chains of subsets, the induced strict order, and the dense-order cuts.

A chain of subsets of a finite ground set induces a strict partial order
(x below y when some link contains x but not y).  A maximal separated subset
makes that order total and the link restriction injective; on top of the
restricted chain we build the cut collection over S' x Q that realizes the
chain inside a dense linear order.  Q is never materialized: cuts are the
symbolic descriptors cols(X) and seg(a, q) with exact rational q.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Optional

from .errors import IncompatibleCuts, TooLarge
from .order_core import FiniteLinOrder

# Exact rationals: normalized numerator/denominator with positive denominator.
Rational = Fraction

DEFAULT_PROBES = (Fraction(-1), Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2))


# ---------------------------------------------------------------------------
# Subset chains and the induced order


@dataclass(frozen=True)
class SubsetChain:
    """A strictly increasing sequence of subsets of a finite ground set."""

    ground: tuple
    links: tuple

    def __post_init__(self):
        ground = tuple(self.ground)
        links = tuple(frozenset(a) for a in self.links)
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "links", tuple(sorted(links, key=len)))
        if len(set(ground)) != len(ground):
            raise ValueError("ground labels must be distinct")
        gset = set(ground)
        for a in links:
            if not a <= gset:
                raise ValueError(f"link {sorted(map(repr, a))} outside the ground set")
        if len(set(links)) != len(links):
            raise ValueError("links must be pairwise distinct")
        for a, b in zip(self.links, self.links[1:]):
            if not a < b:
                raise ValueError("links must form a chain under strict inclusion")

    @property
    def containments(self) -> int:
        return max(len(self.links) - 1, 0)


@dataclass(frozen=True)
class COrder:
    """Strict order induced by a subset chain: x < y iff some link splits them."""

    ground: tuple
    pairs: frozenset

    def lt(self, x, y) -> bool:
        return (x, y) in self.pairs

    def is_irreflexive(self) -> bool:
        return all((x, x) not in self.pairs for x in self.ground)

    def is_transitive(self) -> bool:
        return all(
            (x, z) in self.pairs
            for (x, y) in self.pairs
            for (y2, z) in self.pairs
            if y == y2
        )

    def is_total_on(self, subset) -> bool:
        subset = list(subset)
        return all(
            x == y or self.lt(x, y) or self.lt(y, x) for x in subset for y in subset
        )


def c_order(chain: SubsetChain) -> COrder:
    pairs = frozenset(
        (x, y)
        for x in chain.ground
        for y in chain.ground
        if any(x in a and y not in a for a in chain.links)
    )
    order = COrder(chain.ground, pairs)
    assert order.is_irreflexive() and order.is_transitive()
    return order


def _separated(chain: SubsetChain, x, y) -> bool:
    return any((x in a) != (y in a) for a in chain.links)


def max_separated(chain: SubsetChain, order_hint: Optional[Iterable] = None) -> tuple:
    """Greedy maximal separated subset, returned in induced-order-ascending form.

    The greedy pass replaces the choice principle of the existence proof:
    once an element is rejected against the current set it stays rejected,
    so the final set is maximal, which is checked before returning.
    """
    hint = tuple(order_hint) if order_hint is not None else chain.ground
    if sorted(map(repr, hint)) != sorted(map(repr, chain.ground)):
        raise ValueError("order_hint must be a permutation of the ground set")
    chosen: list = []
    for x in hint:
        if all(_separated(chain, x, y) for y in chosen):
            chosen.append(x)
    for x in chain.ground:
        if x not in chosen:
            assert not all(_separated(chain, x, y) for y in chosen)
    order = c_order(chain)
    assert order.is_total_on(chosen)
    restricted = [frozenset(a & set(chosen)) for a in chain.links]
    assert len(set(restricted)) == len(restricted)
    return tuple(sorted(chosen, key=cmp_to_key(lambda a, b: -1 if order.lt(a, b) else 1)))


# ---------------------------------------------------------------------------
# Dense order -> chain


@dataclass
class DenseToChainResult:
    chain: SubsetChain
    collapsed: tuple
    links_by_element: dict


def dense_to_chain(b: FiniteLinOrder, d: Iterable) -> DenseToChainResult:
    """Links X_s = {x in d : x <= s} for s ascending, duplicates collapsed.

    If d right-separates b no collapse occurs and one link is produced per
    element of b.  Collapses are reported, not errored: non-dense inputs are
    legitimate exploratory inputs.
    """
    dset = set(d)
    if not dset <= set(b.elements):
        raise ValueError("d must be a subset of the order")
    links: list = []
    collapsed: list = []
    by_element: dict = {}
    for s in b.elements:
        x_s = frozenset(x for x in dset if b.le(x, s))
        by_element[s] = x_s
        if links and x_s == links[-1]:
            collapsed.append(s)
        else:
            links.append(x_s)
    ground = tuple(x for x in b.elements if x in dset)
    return DenseToChainResult(SubsetChain(ground, tuple(links)), tuple(collapsed), by_element)


# ---------------------------------------------------------------------------
# Chain -> dense order, via cuts of S' x Q


@dataclass(frozen=True)
class PreparedChain:
    """A subset chain with its separated subset and restricted links fixed."""

    chain: SubsetChain
    s_prime: tuple
    links: tuple
    order_pairs: frozenset

    def elem_lt(self, a, b) -> bool:
        return (a, b) in self.order_pairs

    def elem_cmp(self, a, b) -> int:
        if a == b:
            return 0
        return -1 if self.elem_lt(a, b) else 1


def prepare(chain: SubsetChain, order_hint: Optional[Iterable] = None) -> PreparedChain:
    s_prime = max_separated(chain, order_hint)
    sset = set(s_prime)
    restricted = tuple(frozenset(a & sset) for a in chain.links)
    order = c_order(chain)
    pairs = frozenset((x, y) for (x, y) in order.pairs if x in sset and y in sset)
    return PreparedChain(chain, s_prime, restricted, pairs)


@dataclass(frozen=True)
class Cut:
    """A downward-closed, no-greatest subset of S' x Q in symbolic form.

    kind "cols" is a full union of columns (a restricted link times Q);
    kind "seg" is everything strictly below the point (elem, q).
    """

    prep: PreparedChain
    kind: str
    link_index: Optional[int] = None
    elem: object = None
    q: Optional[Fraction] = None

    def link(self) -> frozenset:
        return self.prep.links[self.link_index]

    def no_greatest_certificate(self) -> str:
        if self.kind == "cols":
            return "every member (x, q) is followed by (x, q + 1) inside the cut"
        return "every member (s, r) is followed by a larger member: rationals below the bound are dense"


def cols_cut(prep: PreparedChain, link_index: int) -> Cut:
    return Cut(prep, "cols", link_index=link_index)


def seg_cut(prep: PreparedChain, elem, q) -> Cut:
    if elem not in prep.s_prime:
        raise ValueError(f"{elem!r} is not in the separated subset")
    return Cut(prep, "seg", elem=elem, q=Fraction(q))


def format_cut(c: Cut) -> str:
    if c.kind == "cols":
        members = [x for x in c.prep.s_prime if x in c.link()]
        return "cols(" + ",".join(str(x) for x in members) + ")"
    return f"seg({c.elem}, {c.q})"


def membership_oracle(c: Cut, point) -> bool:
    """Decide (s, q) in cut straight from the definitions."""
    s, q = point
    q = Fraction(q)
    if s not in c.prep.s_prime:
        raise ValueError(f"{s!r} is not in the separated subset")
    if c.kind == "cols":
        return s in c.link()
    return c.prep.elem_lt(s, c.elem) or (s == c.elem and q < c.q)


def cut_cmp(c1: Cut, c2: Cut) -> int:
    """-1 for proper subset, 0 for equal, 1 for proper superset."""
    if c1.prep is not c2.prep and c1.prep != c2.prep:
        raise IncompatibleCuts("cuts prepared over different chains")
    if c1.kind == "seg" and c2.kind == "seg":
        by_elem = c1.prep.elem_cmp(c1.elem, c2.elem)
        if by_elem:
            return by_elem
        return (c1.q > c2.q) - (c1.q < c2.q)
    if c1.kind == "cols" and c2.kind == "cols":
        a, b = c1.link(), c2.link()
        if a == b:
            return 0
        return -1 if a < b else 1
    if c1.kind == "seg":
        return -1 if c1.elem in c2.link() else 1
    return -cut_cmp(c2, c1)


def strictness_witness(small: Cut, big: Cut):
    """A point of big \\ small certifying that the containment is proper."""
    assert cut_cmp(small, big) < 0
    if small.kind == "seg":
        return (small.elem, small.q)
    if big.kind == "seg":
        return (big.elem, big.q - 1)
    diff = sorted(big.link() - small.link(), key=list(big.prep.s_prime).index)
    return (diff[0], Fraction(0))


def between(c1: Cut, c2: Cut) -> Cut:
    """A seg cut strictly between two cuts, extending the rational probes on demand."""
    if cut_cmp(c1, c2) > 0:
        c1, c2 = c2, c1
    assert cut_cmp(c1, c2) < 0
    prep = c1.prep
    if c1.kind == "seg" and c2.kind == "seg" and c1.elem == c2.elem:
        mid = seg_cut(prep, c1.elem, (c1.q + c2.q) / 2)
    elif c1.kind == "seg":
        mid = seg_cut(prep, c1.elem, c1.q + 1)
    elif c2.kind == "seg":
        mid = seg_cut(prep, c2.elem, c2.q - 1)
    else:
        diff = sorted(c2.link() - c1.link(), key=list(prep.s_prime).index)
        mid = seg_cut(prep, diff[0], Fraction(0))
    assert cut_cmp(c1, mid) < 0 and cut_cmp(mid, c2) < 0
    return mid


@dataclass
class CutSystem:
    prep: PreparedChain
    cuts: tuple
    dense: tuple

    def linorder(self) -> FiniteLinOrder:
        return FiniteLinOrder(self.cuts)

    def strict_pairs(self):
        for i, a in enumerate(self.cuts):
            for b in self.cuts[i + 1:]:
                yield a, b

    def betweenness_witnesses(self):
        for a, b in self.strict_pairs():
            yield a, b, between(a, b)


def chain_to_dense(
    chain: SubsetChain,
    probes: tuple = DEFAULT_PROBES,
    order_hint: Optional[Iterable] = None,
) -> CutSystem:
    """The cut collection embedding the chain into a dense linear order.

    Full-column cuts reproduce the restricted links order-isomorphically; the
    seg cuts over the probe rationals are the dense marker set.
    """
    prep = prepare(chain, order_hint)
    cuts = [cols_cut(prep, i) for i in range(len(prep.links))]
    dense = [seg_cut(prep, a, q) for a in prep.s_prime for q in probes]
    all_cuts = sorted(cuts + dense, key=cmp_to_key(cut_cmp))
    return CutSystem(prep, tuple(all_cuts), tuple(dense))


# ---------------------------------------------------------------------------
# Finite ded


def _witness_value(n: int) -> int:
    links = [frozenset(range(k)) for k in range(n + 1)]
    for a, b in zip(links, links[1:]):
        assert a < b
    assert len(links) <= n + 1  # sizes 0..n are strictly increasing
    SubsetChain(tuple(range(n)), tuple(links))
    return len(links)


def ded_finite(n: int, witness_only: bool = False) -> int:
    """Maximum number of links in a subset chain of an n-set (equals n + 1).

    Exhaustive mode searches every chain for n <= 4; witness mode checks the
    canonical prefix chain plus the size upper bound.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if witness_only:
        return _witness_value(n)
    if n > 4:
        raise TooLarge(f"exhaustive mode is capped at n = 4; rerun witness-only for n = {n}")
    best = {0: 1}
    masks = sorted(range(1, 2 ** n), key=lambda m: bin(m).count("1"))
    for m in masks:
        sub = (m - 1) & m
        longest = 1
        while True:
            longest = max(longest, 1 + best[sub])
            if sub == 0:
                break
            sub = (sub - 1) & m
        best[m] = longest
    value = max(best.values())
    assert value == _witness_value(n)
    return value
