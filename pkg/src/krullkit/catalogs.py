"""Exhaustive catalogs of small posets and subset chains.

The poset generator works by adding elements one at a time: a new element is
determined by a down-closed set of strict predecessors and an up-closed set
of strict successors, every predecessor lying below every successor.  Each
labeled poset on 0..n-1 restricts uniquely to one on 0..n-2, so every poset
is produced exactly once.
"""
from __future__ import annotations

from typing import Iterator

from .chain_lab import SubsetChain
from .order_core import FinitePoset


def _down_closed_masks(down: list) -> list:
    n = len(down)
    out = []
    for mask in range(2 ** n):
        if all(not (mask >> i & 1) or (down[i] & mask) == down[i] for i in range(n)):
            out.append(mask)
    return out


def _up_closed_masks(up: list) -> list:
    return _down_closed_masks(up)  # same closure condition against the up sets


def iter_posets(n: int) -> Iterator[FinitePoset]:
    """All labeled posets on elements 0..n-1."""
    for down in _iter_down_vectors(n):
        strict = [(j, i) for i in range(n) for j in range(n) if down[i] >> j & 1]
        yield FinitePoset(
            frozenset(range(n)),
            frozenset(strict) | frozenset((i, i) for i in range(n)),
        )


def _iter_down_vectors(n: int) -> Iterator[list]:
    if n == 0:
        yield []
        return
    for down in _iter_down_vectors(n - 1):
        up = [0] * (n - 1)
        for i in range(n - 1):
            for j in range(n - 1):
                if down[j] >> i & 1:
                    up[i] |= 1 << j
        for d_mask in _down_closed_masks(down):
            for u_mask in _up_closed_masks(up):
                if d_mask & u_mask:
                    continue
                ok = True
                for d in range(n - 1):
                    if not (d_mask >> d & 1):
                        continue
                    for u in range(n - 1):
                        if u_mask >> u & 1 and not (down[u] >> d & 1):
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    continue
                new_down = list(down)
                for u in range(n - 1):
                    if u_mask >> u & 1:
                        new_down[u] |= (1 << (n - 1)) | d_mask
                new_down.append(d_mask)
                yield new_down


def iter_subset_chains(ground: tuple, include_empty: bool = True) -> Iterator[SubsetChain]:
    """All chains of distinct subsets of the ground set, by depth-first extension."""
    subsets = [frozenset(s) for s in _all_subsets(ground)]
    subsets.sort(key=lambda s: (len(s), sorted(map(repr, s))))

    def extend(chain: list, start: int) -> Iterator[tuple]:
        yield tuple(chain)
        for i in range(start, len(subsets)):
            if not chain or chain[-1] < subsets[i]:
                chain.append(subsets[i])
                yield from extend(chain, i + 1)
                chain.pop()

    for links in extend([], 0):
        if links or include_empty:
            yield SubsetChain(ground, links)


def _all_subsets(ground: tuple) -> list:
    out = [frozenset()]
    for x in ground:
        out.extend([s | {x} for s in out])
    return out
