"""Finite and symbolic linear orders, finite posets, and their constructors.

Finite chains and posets are explicit; the symbolic chains (omega, omega_op,
ints, rats, and concatenations of these with finite blocks) are compared on
finitely presented points only, so no completed infinite object is ever
materialized.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Optional, Union


# ---------------------------------------------------------------------------
# Finite orders


@dataclass(frozen=True)
class FiniteLinOrder:
    """A finite chain: distinct labels listed in ascending order."""

    elements: tuple

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("chain labels must be pairwise distinct")
        object.__setattr__(self, "_pos", {x: i for i, x in enumerate(self.elements)})

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._pos

    def position(self, x) -> int:
        return self._pos[x]

    def lt(self, a, b) -> bool:
        return self.position(a) < self.position(b)

    def le(self, a, b) -> bool:
        return self.position(a) <= self.position(b)

    def as_poset(self) -> "FinitePoset":
        pairs = frozenset(
            (a, b) for i, a in enumerate(self.elements) for b in self.elements[i:]
        )
        return FinitePoset(frozenset(self.elements), pairs)


@dataclass(frozen=True)
class FinitePoset:
    """A finite poset given by its full (reflexive) order relation."""

    elements: frozenset
    leq: frozenset

    def __post_init__(self):
        object.__setattr__(self, "elements", frozenset(self.elements))
        object.__setattr__(self, "leq", frozenset(tuple(p) for p in self.leq))
        els = self.elements
        rel = self.leq
        for (a, b) in rel:
            if a not in els or b not in els:
                raise ValueError(f"relation pair {(a, b)} outside the ground set")
        for a in els:
            if (a, a) not in rel:
                raise ValueError(f"relation not reflexive at {a!r}")
        for (a, b) in rel:
            if a != b and (b, a) in rel:
                raise ValueError(f"relation not antisymmetric on {a!r}, {b!r}")
            for c in els:
                if (b, c) in rel and (a, c) not in rel:
                    raise ValueError(f"relation not transitive via {a!r} <= {b!r} <= {c!r}")

    def __len__(self) -> int:
        return len(self.elements)

    def leq_holds(self, a, b) -> bool:
        return (a, b) in self.leq

    def lt_pairs(self) -> frozenset:
        return frozenset((a, b) for (a, b) in self.leq if a != b)

    def is_chain(self) -> bool:
        els = list(self.elements)
        return all(
            self.leq_holds(a, b) or self.leq_holds(b, a) for a in els for b in els
        )

    @classmethod
    def chain(cls, labels: Iterable) -> "FinitePoset":
        return FiniteLinOrder(tuple(labels)).as_poset()

    @classmethod
    def antichain(cls, labels: Iterable) -> "FinitePoset":
        labels = tuple(labels)
        return cls(frozenset(labels), frozenset((a, a) for a in labels))

    @classmethod
    def from_strict(cls, elements: Iterable, strict_pairs: Iterable) -> "FinitePoset":
        """Build from a strict relation, taking the reflexive-transitive closure."""
        els = frozenset(elements)
        rel = {(a, a) for a in els} | {tuple(p) for p in strict_pairs}
        changed = True
        while changed:
            changed = False
            for (a, b) in list(rel):
                for (c, d) in list(rel):
                    if b == c and (a, d) not in rel:
                        rel.add((a, d))
                        changed = True
        return cls(els, frozenset(rel))


@dataclass
class OrderMap:
    """A map between two finite orders, with checkable order properties."""

    source: Union[FiniteLinOrder, FinitePoset]
    target: Union[FiniteLinOrder, FinitePoset]
    mapping: dict

    def __post_init__(self):
        src = _element_tuple(self.source)
        for x in src:
            if x not in self.mapping:
                raise ValueError(f"mapping not total: missing {x!r}")
        tgt = set(_element_tuple(self.target))
        for v in self.mapping.values():
            if v not in tgt:
                raise ValueError(f"mapping value {v!r} outside target")

    def is_order_preserving(self) -> bool:
        return all(
            _leq(self.target, self.mapping[a], self.mapping[b])
            for (a, b) in _leq_pairs(self.source)
        )

    def is_order_reflecting(self) -> bool:
        src = _element_tuple(self.source)
        return all(
            _leq(self.source, a, b)
            for a in src
            for b in src
            if _leq(self.target, self.mapping[a], self.mapping[b])
        )

    def is_bijective(self) -> bool:
        values = list(self.mapping.values())
        return len(set(values)) == len(values) == len(_element_tuple(self.target))

    def is_isomorphism(self) -> bool:
        return self.is_bijective() and self.is_order_preserving() and self.is_order_reflecting()


def _element_tuple(order) -> tuple:
    if isinstance(order, FiniteLinOrder):
        return order.elements
    return tuple(sorted(order.elements, key=repr))


def _leq(order, a, b) -> bool:
    if isinstance(order, FiniteLinOrder):
        return order.le(a, b)
    return order.leq_holds(a, b)


def _leq_pairs(order):
    els = _element_tuple(order)
    return [(a, b) for a in els for b in els if _leq(order, a, b)]


# ---------------------------------------------------------------------------
# Symbolic chains


@dataclass(frozen=True)
class Fin:
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("fin(n) requires n >= 0")


@dataclass(frozen=True)
class Omega:
    pass


@dataclass(frozen=True)
class OmegaOp:
    pass


@dataclass(frozen=True)
class Ints:
    pass


@dataclass(frozen=True)
class Rats:
    pass


@dataclass(frozen=True)
class Concat:
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if len(self.parts) < 2:
            raise ValueError("concat requires at least 2 parts")


SymbolicChain = Union[Fin, Omega, OmegaOp, Ints, Rats, Concat]

OMEGA = Omega()
OMEGA_OP = OmegaOp()
INTS = Ints()
RATS = Rats()


def normalize(c: SymbolicChain) -> SymbolicChain:
    """Flatten nested concats, drop empty blocks, merge adjacent finite blocks."""
    if not isinstance(c, Concat):
        return c
    flat = []
    for p in c.parts:
        p = normalize(p)
        if isinstance(p, Concat):
            flat.extend(p.parts)
        else:
            flat.append(p)
    merged: list = []
    for p in flat:
        if isinstance(p, Fin) and p.n == 0:
            continue
        if merged and isinstance(p, Fin) and isinstance(merged[-1], Fin):
            merged[-1] = Fin(merged[-1].n + p.n)
        else:
            merged.append(p)
    if not merged:
        return Fin(0)
    if len(merged) == 1:
        return merged[0]
    return Concat(tuple(merged))


def reverse(c):
    """Order-reversal: the same elements with the comparisons flipped."""
    if isinstance(c, FiniteLinOrder):
        return FiniteLinOrder(tuple(reversed(c.elements)))
    if isinstance(c, Fin):
        return c
    if isinstance(c, Omega):
        return OMEGA_OP
    if isinstance(c, OmegaOp):
        return OMEGA
    if isinstance(c, (Ints, Rats)):
        return c
    if isinstance(c, Concat):
        return normalize(Concat(tuple(reverse(p) for p in reversed(c.parts))))
    raise TypeError(f"not an order: {c!r}")


def concat(*parts):
    """Concatenation: earlier parts sit entirely below later parts."""
    if len(parts) == 1 and isinstance(parts[0], (list, tuple)):
        parts = tuple(parts[0])
    if not parts:
        raise ValueError("concat requires at least one part")
    if all(isinstance(p, FiniteLinOrder) for p in parts):
        if len(parts) == 1:
            return parts[0]
        labels = [(i, x) for i, p in enumerate(parts) for x in p.elements]
        return FiniteLinOrder(tuple(labels))
    if all(_is_symbolic(p) for p in parts):
        if len(parts) == 1:
            return normalize(parts[0])
        return normalize(Concat(tuple(parts)))
    raise TypeError("concat parts must be all FiniteLinOrder or all SymbolicChain")


def lex_product(a: FiniteLinOrder, b: FiniteLinOrder) -> FiniteLinOrder:
    """Lexicographic product of two finite chains, most significant first."""
    return FiniteLinOrder(tuple((x, y) for x in a.elements for y in b.elements))


def _is_symbolic(c) -> bool:
    return isinstance(c, (Fin, Omega, OmegaOp, Ints, Rats, Concat))


def cmp_points(c: SymbolicChain, x, y) -> int:
    """Compare two finitely presented points of a symbolic chain (-1, 0, or 1)."""
    if isinstance(c, Fin):
        _check_fin_point(c, x)
        _check_fin_point(c, y)
        return (x > y) - (x < y)
    if isinstance(c, (Omega, Ints)):
        return (x > y) - (x < y)
    if isinstance(c, OmegaOp):
        return (x < y) - (x > y)
    if isinstance(c, Rats):
        x, y = Fraction(x), Fraction(y)
        return (x > y) - (x < y)
    if isinstance(c, Concat):
        (i, xs), (j, ys) = x, y
        if i != j:
            return (i > j) - (i < j)
        return cmp_points(c.parts[i], xs, ys)
    raise TypeError(f"not a symbolic chain: {c!r}")


def _check_fin_point(c: Fin, x):
    if not (isinstance(x, int) and 0 <= x < c.n):
        raise ValueError(f"{x!r} is not a point of fin({c.n})")


def sample_points(c: SymbolicChain, depth: int = 20) -> list:
    """A finite sample of points, suitable for truncated exhaustive checks."""
    if isinstance(c, Fin):
        return list(range(c.n))
    if isinstance(c, (Omega, OmegaOp)):
        return list(range(depth))
    if isinstance(c, Ints):
        return list(range(-depth, depth + 1))
    if isinstance(c, Rats):
        grid = {Fraction(p, q) for q in (1, 2, 3) for p in range(-depth, depth + 1)}
        return sorted(grid)
    if isinstance(c, Concat):
        return [(i, p) for i, part in enumerate(c.parts) for p in sample_points(part, depth)]
    raise TypeError(f"not a symbolic chain: {c!r}")


# ---------------------------------------------------------------------------
# Density and isomorphism


def is_dense(d: Iterable, b: FiniteLinOrder, variant: str = "strict") -> bool:
    """Density of d in the finite chain b.

    "strict" asks for x < m < y at every gap; "right-separating" asks for
    x < m <= y, the finite surrogate that keeps s -> X_s injective downstream.
    """
    dset = set(d)
    if not dset <= set(b.elements):
        raise ValueError("d must be a subset of the chain")
    if variant not in ("strict", "right-separating"):
        raise ValueError(f"unknown density variant {variant!r}")
    els = b.elements
    for i, x in enumerate(els):
        for y in els[i + 1:]:
            if variant == "strict":
                ok = any(m in dset for m in els[i + 1:b.position(y)])
            else:
                ok = any(m in dset for m in els[i + 1:b.position(y) + 1])
            if not ok:
                return False
    return True


def order_iso(a, b) -> Optional[OrderMap]:
    """An order-isomorphism witness between finite orders, or None.

    Chains are decided by length; anything involving a poset falls back to
    brute force over bijections.
    """
    if isinstance(a, FiniteLinOrder) and isinstance(b, FiniteLinOrder):
        if len(a) != len(b):
            return None
        return OrderMap(a, b, dict(zip(a.elements, b.elements)))
    pa = a.as_poset() if isinstance(a, FiniteLinOrder) else a
    pb = b.as_poset() if isinstance(b, FiniteLinOrder) else b
    if len(pa) != len(pb):
        return None
    src = sorted(pa.elements, key=repr)
    for perm in permutations(sorted(pb.elements, key=repr)):
        m = OrderMap(a, b, dict(zip(src, perm)))
        if m.is_order_preserving() and m.is_order_reflecting():
            return m
    return None


# ---------------------------------------------------------------------------
# Text grammar: fin(n), omega, omega_op, ints, rats, concat(a, b, ...)


def format_chain(c: SymbolicChain) -> str:
    if isinstance(c, Fin):
        return f"fin({c.n})"
    if isinstance(c, Omega):
        return "omega"
    if isinstance(c, OmegaOp):
        return "omega_op"
    if isinstance(c, Ints):
        return "ints"
    if isinstance(c, Rats):
        return "rats"
    if isinstance(c, Concat):
        return "concat(" + ", ".join(format_chain(p) for p in c.parts) + ")"
    raise TypeError(f"not a symbolic chain: {c!r}")


_TOKEN = re.compile(r"\s*([a-z_]+|\d+|[(),])")


def parse_chain(text: str) -> SymbolicChain:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad chain syntax at {text[pos:]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    chain, rest = _parse_tokens(tokens)
    if rest:
        raise ValueError(f"trailing tokens {rest!r}")
    return normalize(chain)


def _parse_tokens(tokens):
    if not tokens:
        raise ValueError("empty chain expression")
    head, rest = tokens[0], tokens[1:]
    if head == "omega":
        return OMEGA, rest
    if head == "omega_op":
        return OMEGA_OP, rest
    if head == "ints":
        return INTS, rest
    if head == "rats":
        return RATS, rest
    if head == "fin":
        if len(rest) < 3 or rest[0] != "(" or not rest[1].isdigit() or rest[2] != ")":
            raise ValueError("fin expects fin(<nat>)")
        return Fin(int(rest[1])), rest[3:]
    if head == "concat":
        if not rest or rest[0] != "(":
            raise ValueError("concat expects a parenthesized list")
        rest = rest[1:]
        parts = []
        while True:
            part, rest = _parse_tokens(rest)
            parts.append(part)
            if not rest:
                raise ValueError("unterminated concat")
            if rest[0] == ",":
                rest = rest[1:]
                continue
            if rest[0] == ")":
                return Concat(tuple(parts)) if len(parts) >= 2 else parts[0], rest[1:]
            raise ValueError(f"unexpected token {rest[0]!r} in concat")
    raise ValueError(f"unknown chain constructor {head!r}")
