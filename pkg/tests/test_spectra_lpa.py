"""Poset graphs, path counts, the subset preorder, and cut completions."""
import random
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import pytest

from krullkit import cardinal_engine as ce
from krullkit import catalogs
from krullkit import order_core as oc
from krullkit import spectra_lpa as sp
from krullkit.errors import EmptySubset, TooLarge, UnsupportedCarrier

SEED = 1105
GOLDEN = Path(__file__).parent / "golden"

FIN1 = sp.Multiplicity.finite(1)
FIN2 = sp.Multiplicity.finite(2)
OMEGA_M = sp.Multiplicity.omega()


def count_paths_bruteforce(graph: sp.LpaGraph) -> int:
    """Oracle: expand parallel edges into labeled edges and enumerate all paths."""
    edges = []
    for ((p, q), m) in graph.arcs:
        assert m.is_finite
        edges.extend((p, q, i) for i in range(m.count))
    total = 0

    def walk(v):
        nonlocal total
        total += 1
        for (p, q, i) in edges:
            if p == v:
                walk(q)

    for v in graph.elements:
        walk(v)
    return total


# ---------------------------------------------------------------------------
# graphs


def test_build_ep_two_chain_parallel_edges():
    graph = sp.build_ep(oc.FinitePoset.chain(["q", "p"]), sp.Multiplicity.finite(3))
    assert graph.elements == ("p", "q")
    assert graph.arcs == ((("p", "q"), sp.Multiplicity.finite(3)),)


def test_build_ep_antichain_has_no_edges():
    graph = sp.build_ep(oc.FinitePoset.antichain([0, 1]), FIN1)
    assert graph.arcs == ()


def test_build_ep_three_chain_omega():
    graph = sp.build_ep(oc.FinitePoset.chain([0, 1, 2]), OMEGA_M)
    assert {pair for (pair, _) in graph.arcs} == {(1, 0), (2, 0), (2, 1)}
    assert all(not m.is_finite for (_, m) in graph.arcs)


def test_build_ep_acyclic_over_full_catalog():
    for n in range(7):
        for poset in catalogs.iter_posets(n):
            sp.build_ep(poset, OMEGA_M)  # construction validates acyclicity


def test_graph_rejects_cycles():
    with pytest.raises(ValueError):
        sp.LpaGraph((0, 1), (((0, 1), FIN1), ((1, 0), FIN1)))


def test_regular_vertices_examples():
    two_chain = oc.FinitePoset.chain(["q", "p"])
    assert sp.regular_vertices(sp.build_ep(two_chain, sp.Multiplicity.finite(3))) == {"p"}
    assert sp.regular_vertices(sp.build_ep(two_chain, OMEGA_M)) == frozenset()
    assert sp.regular_vertices(sp.build_ep(oc.FinitePoset.antichain([0, 1]), FIN1)) == frozenset()


def test_count_paths_examples():
    chain3 = oc.FinitePoset.chain([0, 1, 2])
    assert sp.count_paths(sp.build_ep(chain3, FIN1)) == 7
    assert sp.count_paths(sp.build_ep(chain3, FIN2)) == 13
    single = sp.build_ep(oc.FinitePoset.chain([0]), FIN1)
    assert sp.count_paths(single) == 1
    assert sp.count_paths(sp.build_ep(chain3, OMEGA_M)) == ce.ALEPH0


def test_count_paths_matches_bruteforce_small_catalog():
    for n in range(5):
        for poset in catalogs.iter_posets(n):
            for mult in (FIN1, FIN2):
                graph = sp.build_ep(poset, mult)
                assert sp.count_paths(graph) == count_paths_bruteforce(graph)


def test_relations_doc_mentions_vacuous_ck2_for_omega():
    graph = sp.build_ep(oc.FinitePoset.chain([0, 1]), OMEGA_M)
    doc = graph.relations_doc()
    assert "CK2" in doc and "vacuous" in doc
    finite_doc = sp.build_ep(oc.FinitePoset.chain([0, 1]), FIN1).relations_doc()
    assert "v_1" in finite_doc


# ---------------------------------------------------------------------------
# DOT export


def test_export_dot_golden_files():
    cases = {
        "ep_two_chain_mult2.dot": sp.build_ep(oc.FinitePoset.chain([0, 1]), FIN2),
        "ep_antichain.dot": sp.build_ep(oc.FinitePoset.antichain([0, 1]), FIN1),
        "ep_three_chain_omega.dot": sp.build_ep(oc.FinitePoset.chain([0, 1, 2]), OMEGA_M),
    }
    for name, graph in cases.items():
        expected = (GOLDEN / name).read_text(encoding="utf-8")
        assert sp.export_dot(graph) == expected
        assert sp.export_dot(graph) == sp.export_dot(graph)


# ---------------------------------------------------------------------------
# the subset preorder


def test_preceq_finite_examples():
    poset = oc.FinitePoset.chain(["a", "b"])
    assert sp.subset_preceq({"a"}, {"a", "b"}, poset)
    assert sp.subset_preceq({"a", "b"}, {"a", "b"}, poset)
    assert not sp.subset_preceq({"b"}, {"a"}, poset)
    with pytest.raises(EmptySubset):
        sp.subset_preceq(set(), {"a"}, poset)


def test_preceq_preorder_and_quotient_axioms_exhaustive():
    for n in range(1, 4):
        for poset in catalogs.iter_posets(n):
            els = sorted(poset.elements)
            subsets = [
                frozenset(c) for r in range(1, n + 1) for c in combinations(els, r)
            ]
            rel = {
                (s1, s2)
                for s1 in subsets
                for s2 in subsets
                if sp.subset_preceq(s1, s2, poset)
            }
            for s in subsets:
                assert (s, s) in rel
            for (a, b) in rel:
                for (b2, c) in rel:
                    if b == b2:
                        assert (a, c) in rel
            # the induced equivalence partitions, and the quotient is a partial order
            classes = {}
            for s in subsets:
                key = frozenset(
                    t for t in subsets if (s, t) in rel and (t, s) in rel
                )
                classes[s] = key
            for s1 in subsets:
                for s2 in subsets:
                    if (s1, s2) in rel and (s2, s1) in rel:
                        assert classes[s1] == classes[s2]


def test_preceq_rats_endpoint_rule():
    rats = oc.RATS
    assert sp.subset_preceq(sp.fd(rats, 0, None), sp.fd(rats, 1, None))
    assert not sp.subset_preceq(sp.fd(rats, 1, None), sp.fd(rats, 0, None))
    assert sp.subset_preceq(sp.fd(rats, None, 0), sp.fd(rats, 5, 9))


def test_preceq_rats_matches_reaching_oracle():
    # oracle: s1 preceq s2 iff every probe point of s2 has an s1 member at or
    # below it; "has a member at or below t" is decided exactly from pieces
    rats = oc.RATS

    def reaches_at_or_below(s, t):
        first = s.pieces[0]
        if first.lo is None:
            return True
        return first.lo < t or (first.lo == t and first.lo_closed)

    def critical_points(s):
        pts = []
        for piece in s.pieces:
            if piece.lo is None:
                pts.append(Fraction(-(10 ** 6)))
            else:
                pts.append(piece.lo if piece.lo_closed else piece.lo + Fraction(1, 1000))
            if piece.hi is not None:
                pts.append(piece.hi if piece.hi_closed else piece.hi - Fraction(1, 1000))
        return pts

    rng = random.Random(SEED)

    def random_fd():
        pieces = []
        for _ in range(rng.randint(1, 2)):
            lo = None if rng.random() < 0.3 else Fraction(rng.randint(-6, 5))
            hi = None if rng.random() < 0.3 else Fraction(rng.randint(6, 12))
            pieces.append(sp.Piece(lo, hi, rng.random() < 0.5, rng.random() < 0.5))
        return sp.FinDescSubset(rats, tuple(pieces))

    for _ in range(1000):
        s1, s2 = random_fd(), random_fd()
        expected = all(reaches_at_or_below(s1, t) for t in critical_points(s2))
        assert sp.subset_preceq(s1, s2) == expected


def test_findesc_normalization():
    rats = oc.RATS
    merged = sp.FinDescSubset(
        rats, (sp.Piece(Fraction(0), Fraction(1)), sp.Piece(Fraction(1), Fraction(2), True, False))
    )
    assert len(merged.pieces) == 1
    ints = sp.FinDescSubset(oc.INTS, (sp.Piece(Fraction(0), Fraction(3)),))
    assert ints.pieces[0].lo == 1 and ints.pieces[0].hi == 2
    with pytest.raises(ValueError):
        sp.FinDescSubset(rats, (sp.Piece(Fraction(0), Fraction(0)),))
    with pytest.raises(UnsupportedCarrier):
        sp.fd(oc.Fin(3), 0, 1)


def test_classify_keys():
    rats = oc.RATS
    assert sp.classify(sp.fd(rats, 0, None)).key == ("succ", Fraction(0))
    assert sp.classify(sp.fd(rats, None, None)).key == ("bottom",)
    assert sp.classify(sp.fd(rats, 0, None, lo_closed=True)) is None
    assert sp.classify(sp.fd(oc.INTS, 0, None)) is None
    assert sp.classify(sp.fd(oc.INTS, None, 0)).key == ("bottom",)
    assert sp.classify(sp.fd(oc.OMEGA_OP, 0, None)).key == ("bottom",)
    assert sp.classify(sp.fd(oc.OMEGA, None, None)) is None
    # same key for sets with the same unattained infimum
    scattered = sp.FinDescSubset(
        rats, (sp.Piece(Fraction(0), Fraction(1)), sp.Piece(Fraction(4), Fraction(5), True, True))
    )
    assert sp.classify(scattered).key == ("succ", Fraction(0))


# ---------------------------------------------------------------------------
# completions


def test_at_finite_chain_has_no_cuts():
    at = sp.at_finite(oc.FinitePoset.chain([0, 1, 2]))
    assert not at.has_point_cuts and not at.has_bottom_cut
    assert at.degeneracy_witness.is_isomorphism()


def test_at_finite_antichain_and_singleton():
    assert sp.at_finite(oc.FinitePoset.antichain([0, 1, 2])).fragment == "exact"
    assert sp.at_finite(oc.FinitePoset.chain([0])).fragment == "exact"
    with pytest.raises(ValueError):
        sp.at_finite(oc.FinitePoset(frozenset(), frozenset()))


def test_at_finite_degeneracy_over_catalog():
    for n in range(1, 5):
        for poset in catalogs.iter_posets(n):
            at = sp.at_finite(poset)
            witness = at.degeneracy_witness
            assert witness is not None and witness.is_isomorphism()


def test_at_finite_too_large():
    with pytest.raises(TooLarge):
        sp.at_finite(oc.FinitePoset.antichain(range(21)))


def test_at_fd_families_per_carrier():
    rats = sp.at_fd(oc.RATS)
    assert rats.has_point_cuts and rats.has_bottom_cut
    ints = sp.at_fd(oc.INTS)
    assert not ints.has_point_cuts and ints.has_bottom_cut
    omega = sp.at_fd(oc.OMEGA)
    assert not omega.has_point_cuts and not omega.has_bottom_cut
    omega_op = sp.at_fd(oc.OMEGA_OP)
    assert not omega_op.has_point_cuts and omega_op.has_bottom_cut
    with pytest.raises(UnsupportedCarrier):
        sp.at_fd(oc.Fin(3))


def test_at_fd_rats_successor_cut_is_immediate():
    at = sp.at_fd(oc.RATS)
    q = Fraction(0)
    orig, cut = at.orig(q), at.cut(("succ", q))
    assert at.leq(orig, cut) and not at.leq(cut, orig)
    # no original strictly between q and its successor cut
    for r in (Fraction(1, 2), Fraction(1), Fraction(-1)):
        between = at.leq(at.orig(r), cut) and at.leq(orig, at.orig(r)) and r != q
        assert not between
    bottom = at.cut(("bottom",))
    for x in (orig, cut):
        assert at.leq(bottom, x) and not at.leq(x, bottom)


def test_at_fd_chain_lemma_totality():
    points = [Fraction(-2), Fraction(0), Fraction(1, 3), Fraction(5)]
    for carrier in (oc.RATS, oc.INTS, oc.OMEGA, oc.OMEGA_OP):
        at = sp.at_fd(carrier)
        sample = at.sample_elements([0, 1, 3] if not isinstance(carrier, oc.Rats) else points)
        for a in sample:
            for b in sample:
                assert at.leq(a, b) or at.leq(b, a)


def test_at_fd_rats_transitive_on_random_triples():
    at = sp.at_fd(oc.RATS)
    rng = random.Random(SEED + 1)

    def random_element():
        q = Fraction(rng.randint(-12, 12), rng.randint(1, 6))
        kind = rng.random()
        if kind < 0.45:
            return at.orig(q)
        if kind < 0.9:
            return at.cut(("succ", q))
        return at.cut(("bottom",))

    for _ in range(1000):
        a, b, c = random_element(), random_element(), random_element()
        if at.leq(a, b) and at.leq(b, c):
            assert at.leq(a, c)


def test_spectrum_order_examples():
    chain3 = sp.spectrum_order(oc.FinitePoset.chain([0, 1, 2]))
    assert len(chain3.elements_finite()) == 3
    single = sp.spectrum_order(oc.FinitePoset.chain([0]))
    assert len(single.elements_finite()) == 1
    rats = sp.spectrum_order(oc.RATS)
    assert rats.fragment == "finDesc"
    payload = rats.as_json([Fraction(0), Fraction(1)])
    assert payload["cardinality"] == "symbolic"
    assert {tuple(c["key"]) for c in payload["cuts"]} == {
        ("succ", "0"),
        ("succ", "1"),
        ("bottom",),
    }


def test_dense_cor_injection():
    at = sp.at_fd(oc.RATS)
    probes = [Fraction(0), Fraction(1), Fraction(-3, 2)]
    mapping = sp.dense_cor_injection(at, probes)
    assert mapping[("succ", Fraction(0))].key == ("succ", Fraction(0))
    assert mapping[("bottom",)].key == ("bottom",)
    keys = [cls.key for cls in mapping.values()]
    assert len(set(keys)) == len(keys) == len(probes) + 1
    with pytest.raises(UnsupportedCarrier):
        sp.dense_cor_injection(sp.at_fd(oc.INTS), [])


# ---------------------------------------------------------------------------
# chain families


def test_berry_finite_family():
    report = sp.berry_family([1, 2, 3])
    assert len(report.poset.elements) == 6
    assert report.max_chain == 3 and report.attained
    assert report.cdim == ce.FiniteCard(2) and report.scdim == ce.FiniteCard(2)
    assert report.at.degeneracy_witness.is_isomorphism()


def test_berry_trivial_family():
    report = sp.berry_family([1])
    assert report.max_chain == 1 and report.cdim == ce.FiniteCard(0)


def test_berry_symbolic_limit():
    report = sp.berry_family(ce.parse_cardinal("aleph(w)"))
    assert report.cdim == ce.parse_cardinal("aleph(w)")
    assert report.scdim is None and not report.attained
    with pytest.raises(ValueError):
        sp.berry_family(ce.parse_cardinal("aleph(1)"))
    report0 = sp.berry_family(ce.ALEPH0)
    assert report0.scdim is None
