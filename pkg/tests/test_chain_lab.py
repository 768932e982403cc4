"""Subset chains, the induced order, maximal separated sets, cuts, finite ded."""
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from krullkit import catalogs
from krullkit import chain_lab as cl
from krullkit.errors import EmptySubset, IncompatibleCuts, TooLarge
from krullkit.order_core import FiniteLinOrder

SEED = 91


def chain_of(ground, *links):
    return cl.SubsetChain(tuple(ground), [frozenset(l) for l in links])


@st.composite
def subset_chains(draw, max_ground=8):
    n = draw(st.integers(0, max_ground))
    perm = draw(st.permutations(list(range(n))))
    sizes = sorted(set(draw(st.lists(st.integers(0, n), max_size=n + 1))))
    return cl.SubsetChain(tuple(range(n)), [frozenset(perm[:s]) for s in sizes])


def corder_bruteforce(chain):
    # the definitional relation, recomputed without reusing library internals
    pairs = set()
    for x in chain.ground:
        for y in chain.ground:
            for link in chain.links:
                if x in link and y not in link:
                    pairs.add((x, y))
    return pairs


# ---------------------------------------------------------------------------
# c_order


def test_corder_two_link_example():
    chain = chain_of("abc", {"a"}, {"a", "b"})
    order = cl.c_order(chain)
    assert order.pairs == frozenset({("a", "b"), ("a", "c"), ("b", "c")})
    assert order.pairs == frozenset(corder_bruteforce(chain))


def test_corder_single_empty_link():
    order = cl.c_order(chain_of("ab", set()))
    assert order.pairs == frozenset()


def test_corder_incomparable_pair():
    chain = chain_of("abc", {"a"}, {"a", "b", "c"})
    order = cl.c_order(chain)
    assert order.pairs == frozenset({("a", "b"), ("a", "c")})
    assert not order.lt("b", "c") and not order.lt("c", "b")


@settings(max_examples=200)
@given(subset_chains())
def test_corder_axioms_on_random_chains(chain):
    order = cl.c_order(chain)
    assert order.pairs == frozenset(corder_bruteforce(chain))
    assert order.is_irreflexive()
    assert order.is_transitive()


def test_corder_axioms_exhaustive_small_grounds():
    for n in range(4):
        for chain in catalogs.iter_subset_chains(tuple(range(n))):
            order = cl.c_order(chain)
            assert order.is_irreflexive() and order.is_transitive()


# ---------------------------------------------------------------------------
# max_separated


def test_max_separated_greedy_example():
    chain = chain_of("abc", {"a"}, {"a", "b", "c"})
    s_prime = cl.max_separated(chain, "abc")
    assert set(s_prime) == {"a", "b"}
    restricted = [frozenset(l & set(s_prime)) for l in chain.links]
    assert restricted == [frozenset({"a"}), frozenset({"a", "b"})]


def test_max_separated_two_trivial_links():
    chain = chain_of("abc", set(), {"a", "b", "c"})
    s_prime = cl.max_separated(chain, "abc")
    assert len(s_prime) == 1


def test_max_separated_already_separated():
    chain = chain_of("abc", {"a"}, {"a", "b"}, {"a", "b", "c"})
    assert set(cl.max_separated(chain, "abc")) == {"a", "b", "c"}


@settings(max_examples=200)
@given(subset_chains())
def test_max_separated_postconditions_random(chain):
    s_prime = cl.max_separated(chain)
    restricted = [frozenset(l & set(s_prime)) for l in chain.links]
    assert len(set(restricted)) == len(restricted)
    assert cl.c_order(chain).is_total_on(s_prime)


# ---------------------------------------------------------------------------
# dense_to_chain


def test_dense_to_chain_right_separating():
    res = cl.dense_to_chain(FiniteLinOrder((1, 2, 3)), {2, 3})
    assert res.chain.links == (frozenset(), frozenset({2}), frozenset({2, 3}))
    assert res.collapsed == ()


def test_dense_to_chain_empty_dense_set():
    res = cl.dense_to_chain(FiniteLinOrder((1, 2)), set())
    assert res.chain.links == (frozenset(),)
    assert res.collapsed == (2,)


def test_dense_to_chain_reports_collapse():
    res = cl.dense_to_chain(FiniteLinOrder((1, 2, 3)), {3})
    assert res.chain.links == (frozenset(), frozenset({3}))
    assert res.collapsed == (2,)


# ---------------------------------------------------------------------------
# cuts


def test_cut_collection_two_link_example_order():
    chain = chain_of("ab", {"a"}, {"a", "b"})
    system = cl.chain_to_dense(chain)
    formatted = [cl.format_cut(c) for c in system.cuts]
    assert formatted.index("seg(a, 0)") < formatted.index("cols(a)")
    assert formatted.index("cols(a)") < formatted.index("seg(b, 0)")
    assert formatted.index("seg(b, 0)") < formatted.index("cols(a,b)")
    for a, b, mid in system.betweenness_witnesses():
        assert mid.kind == "seg"


def test_singleton_empty_chain_gives_single_cut():
    system = cl.chain_to_dense(chain_of("", set()))
    assert [cl.format_cut(c) for c in system.cuts] == ["cols()"]
    assert system.dense == ()


def test_four_nested_links_give_four_column_cuts_in_order():
    chain = chain_of("abc", set(), {"a"}, {"a", "b"}, {"a", "b", "c"})
    system = cl.chain_to_dense(chain)
    cols = [c for c in system.cuts if c.kind == "cols"]
    assert [c.link() for c in cols] == list(system.prep.links)
    # comparator transitivity, exhaustive over the whole collection
    cuts = system.cuts
    for a in cuts:
        for b in cuts:
            for c in cuts:
                if cl.cut_cmp(a, b) <= 0 and cl.cut_cmp(b, c) <= 0:
                    assert cl.cut_cmp(a, c) <= 0


def test_cut_cmp_examples():
    chain = chain_of("ab", {"a"}, {"a", "b"})
    prep = cl.prepare(chain)
    assert cl.cut_cmp(cl.seg_cut(prep, "a", Fraction(1, 2)), cl.seg_cut(prep, "a", Fraction(2, 3))) == -1
    assert cl.cut_cmp(cl.cols_cut(prep, 0), cl.seg_cut(prep, "b", 0)) == -1
    assert cl.cut_cmp(cl.cols_cut(prep, 1), cl.cols_cut(prep, 1)) == 0


def test_cut_cmp_rejects_foreign_cuts():
    prep1 = cl.prepare(chain_of("ab", {"a"}))
    prep2 = cl.prepare(chain_of("ab", {"b"}))
    with pytest.raises(IncompatibleCuts):
        cl.cut_cmp(cl.seg_cut(prep1, "a", 0), cl.seg_cut(prep2, "b", 0))


def test_membership_oracle_examples():
    chain = chain_of("ab", {"a"}, {"a", "b"})
    prep = cl.prepare(chain)
    assert cl.membership_oracle(cl.cols_cut(prep, 0), ("a", 5))
    assert not cl.membership_oracle(cl.seg_cut(prep, "a", 3), ("a", 5))
    assert not cl.membership_oracle(cl.seg_cut(prep, "a", 0), ("b", -7))


def test_cut_cmp_agrees_with_membership_sampling():
    chain = chain_of("abcd", {"a"}, {"a", "b"}, {"a", "b", "c", "d"})
    system = cl.chain_to_dense(chain)
    rng = random.Random(SEED)
    elements = system.prep.s_prime
    triples = 0
    while triples < 10_000:
        c1, c2 = rng.choice(system.cuts), rng.choice(system.cuts)
        point = (rng.choice(elements), Fraction(rng.randint(-8, 8), rng.randint(1, 8)))
        triples += 1
        rel = cl.cut_cmp(c1, c2)
        if rel == 0:
            assert cl.membership_oracle(c1, point) == cl.membership_oracle(c2, point)
            continue
        small, big = (c1, c2) if rel < 0 else (c2, c1)
        if cl.membership_oracle(small, point):
            assert cl.membership_oracle(big, point)
        witness = cl.strictness_witness(small, big)
        assert cl.membership_oracle(big, witness) and not cl.membership_oracle(small, witness)


def test_betweenness_extends_the_probe_set():
    chain = chain_of("ab", {"a"}, {"a", "b"})
    prep = cl.prepare(chain)
    c1 = cl.seg_cut(prep, "a", Fraction(0))
    c2 = cl.seg_cut(prep, "a", Fraction(1, 2))
    mid = cl.between(c1, c2)
    assert mid.q == Fraction(1, 4)
    for cut in (c1, c2, mid):
        assert "followed by" in cut.no_greatest_certificate()


def test_round_trip_recovers_restricted_chain_length():
    for n in range(4):
        for chain in catalogs.iter_subset_chains(tuple(range(n))):
            system = cl.chain_to_dense(chain)
            cols = [c for c in system.cuts if c.kind == "cols"]
            recovered = [
                frozenset(d for d in system.dense if cl.cut_cmp(d, c) <= 0) for c in cols
            ]
            assert len(set(recovered)) == len(recovered) == len(chain.links)


# ---------------------------------------------------------------------------
# finite ded


def test_ded_zero():
    assert cl.ded_finite(0) == 1


def test_ded_three_matches_full_chain_enumeration():
    # oracle: literally every chain of subsets of a 3-set
    longest = max(len(c.links) for c in catalogs.iter_subset_chains((0, 1, 2)))
    assert longest == 4
    assert cl.ded_finite(3) == 4


def test_ded_values_up_to_four():
    for n in range(5):
        assert cl.ded_finite(n) == n + 1


def test_ded_witness_mode():
    assert cl.ded_finite(6, witness_only=True) == 7
    with pytest.raises(TooLarge):
        cl.ded_finite(5)


def test_subset_chain_validation():
    with pytest.raises(ValueError):
        cl.SubsetChain(("a",), [frozenset({"a"}), frozenset({"a"})])
    with pytest.raises(ValueError):
        cl.SubsetChain(("a", "b"), [frozenset({"a"}), frozenset({"b"})])
