"""Graphs attached to posets, path counts, and the cut completion of a poset.

A poset P yields a graph with one vertex per element and a bundle of parallel
edges along every strict relation; the prime spectrum of the path algebra of
that graph is order-isomorphic to the completion of P by classes of downward
directed subsets with no least element.  Finite posets complete to themselves
(the scan below certifies it case by case); for the symbolic chains the
completion is computed on the finitely-described fragment only, with full
cardinalities delegated to the cardinal engine.

The algebra itself is never multiplied out.  Each built graph documents the
defining relations (V, E1, E2, CK1, CK2); with countably infinite edge
bundles no vertex is regular, so relation CK2 is vacuous by construction.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .cardinal_engine import ALEPH0, Aleph, Cardinal, FiniteCard
from .errors import EmptySubset, TooLarge, UnsupportedCarrier
from .order_core import (
    FinitePoset,
    Ints,
    Omega,
    OmegaOp,
    OrderMap,
    Rats,
    SymbolicChain,
    cmp_points,
)

# ---------------------------------------------------------------------------
# Multiplicities and graphs


@dataclass(frozen=True)
class Multiplicity:
    """Parallel-edge count along one strict pair: a positive natural or omega."""

    count: Optional[int]  # None encodes countably infinite

    def __post_init__(self):
        if self.count is not None and self.count < 1:
            raise ValueError("finite multiplicity must be at least 1")

    @classmethod
    def finite(cls, m: int) -> "Multiplicity":
        return cls(m)

    @classmethod
    def omega(cls) -> "Multiplicity":
        return cls(None)

    @property
    def is_finite(self) -> bool:
        return self.count is not None

    def __str__(self):
        return str(self.count) if self.is_finite else "ω"


@dataclass(frozen=True)
class LpaGraph:
    """Vertices v_p and arc bundles (p, q) -> multiplicity for strictly related p > q."""

    elements: tuple
    arcs: tuple  # ((p, q), Multiplicity) pairs

    def __post_init__(self):
        elements = tuple(self.elements)
        arcs = tuple(sorted(self.arcs, key=lambda a: (str(a[0][0]), str(a[0][1]))))
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "arcs", arcs)
        els = set(elements)
        for ((p, q), _) in arcs:
            if p == q or p not in els or q not in els:
                raise ValueError(f"arc {(p, q)} must join two distinct vertices")
        if self._has_cycle():
            raise ValueError("arcs must descend strictly: cycle detected")

    def _has_cycle(self) -> bool:
        succ: dict = {p: [] for p in self.elements}
        for ((p, q), _) in self.arcs:
            succ[p].append(q)
        state: dict = {}

        def visit(v) -> bool:
            if state.get(v) == 1:
                return True
            if state.get(v) == 2:
                return False
            state[v] = 1
            if any(visit(w) for w in succ[v]):
                return True
            state[v] = 2
            return False

        return any(visit(v) for v in self.elements)

    def vertex_label(self, p) -> str:
        return f"v_{p}"

    def out_arcs(self, p):
        return [(q, m) for ((src, q), m) in self.arcs if src == p]

    def relations_doc(self) -> str:
        regular = sorted(self.vertex_label(v) for v in regular_vertices(self))
        ck2 = ", ".join(regular) if regular else "vacuous: no regular vertices"
        return "\n".join(
            [
                "defining relations of the path algebra (not executed):",
                "  (V)   vw = delta_{v,w} v for vertices v, w",
                "  (E1)  s(e) e = e r(e) = e for edges e",
                "  (E2)  r(e) e* = e* s(e) = e* for ghost edges e*",
                "  (CK1) e* f = delta_{e,f} r(e) for edges e, f",
                f"  (CK2) v = sum of e e* over edges out of each regular vertex ({ck2})",
            ]
        )


def build_ep(p: FinitePoset, mult: Multiplicity) -> LpaGraph:
    """One arc bundle per strict pair of the poset; acyclic by construction."""
    elements = tuple(sorted(p.elements, key=str))
    arcs = tuple(((a, b), mult) for (b, a) in p.lt_pairs())
    return LpaGraph(elements, arcs)


def regular_vertices(g: LpaGraph) -> frozenset:
    """Vertices with a finite and nonempty bundle of outgoing edges."""
    out = frozenset(
        p
        for p in g.elements
        if g.out_arcs(p) and all(m.is_finite for (_, m) in g.out_arcs(p))
    )
    return out


def count_paths(g: LpaGraph) -> Union[int, Aleph]:
    """Exact number of paths (length 0 included); aleph0 once a bundle is infinite."""
    if any(not m.is_finite for (_, m) in g.arcs):
        return ALEPH0
    memo: dict = {}

    def from_vertex(v) -> int:
        if v not in memo:
            memo[v] = 1 + sum(m.count * from_vertex(q) for (q, m) in g.out_arcs(v))
        return memo[v]

    return sum(from_vertex(v) for v in g.elements)


def export_dot(g: LpaGraph) -> str:
    """Deterministic DOT text: sorted vertices, finite bundles expanded."""
    lines = ["digraph E_P {"]
    for p in sorted(g.elements, key=str):
        lines.append(f'  "{g.vertex_label(p)}";')
    for ((p, q), m) in g.arcs:
        edge = f'  "{g.vertex_label(p)}" -> "{g.vertex_label(q)}"'
        if m.is_finite:
            lines.extend(edge + ";" for _ in range(m.count))
        else:
            lines.append(edge + ' [label="ω", style=bold];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Finitely described subsets of the symbolic chains


_INT_CARRIERS = (Ints, Omega, OmegaOp)
_FD_CARRIERS = (Rats, Ints, Omega, OmegaOp)


@dataclass(frozen=True)
class Piece:
    """One interval; None endpoints mean unbounded.  Integer carriers store
    closed endpoints after normalization."""

    lo: Optional[Fraction]
    hi: Optional[Fraction]
    lo_closed: bool = False
    hi_closed: bool = False


@dataclass(frozen=True)
class FinDescSubset:
    """A nonempty finite union of intervals over a symbolic chain carrier."""

    carrier: SymbolicChain
    pieces: tuple

    def __post_init__(self):
        if not isinstance(self.carrier, _FD_CARRIERS):
            raise UnsupportedCarrier(f"no finitely-described fragment over {self.carrier!r}")
        object.__setattr__(self, "pieces", _normalize_pieces(self.carrier, self.pieces))
        if not self.pieces:
            raise ValueError("a finitely described subset must be nonempty")

    def contains(self, x) -> bool:
        x = Fraction(x)
        for p in self.pieces:
            lo_ok = p.lo is None or (x > p.lo or (p.lo_closed and x == p.lo))
            hi_ok = p.hi is None or (x < p.hi or (p.hi_closed and x == p.hi))
            if lo_ok and hi_ok:
                return True
        return False

    def sample(self, span: int = 8) -> list:
        """A few members, used by the sampling cross-checks."""
        out = []
        for p in self.pieces:
            lo = p.lo if p.lo is not None else Fraction(-span)
            hi = p.hi if p.hi is not None else Fraction(span)
            if isinstance(self.carrier, _INT_CARRIERS):
                out.extend(x for x in range(int(lo), int(hi) + 1) if self.contains(x))
            else:
                for cand in (lo, hi, (lo + hi) / 2, lo + 1, hi - 1):
                    if self.contains(cand):
                        out.append(Fraction(cand))
        return out


def _normalize_pieces(carrier, pieces) -> tuple:
    cleaned = []
    integer = isinstance(carrier, _INT_CARRIERS)
    for p in pieces:
        lo = Fraction(p.lo) if p.lo is not None else None
        hi = Fraction(p.hi) if p.hi is not None else None
        lo_closed, hi_closed = p.lo_closed, p.hi_closed
        if integer:
            if lo is not None:
                if lo.denominator == 1:
                    lo = lo if lo_closed else lo + 1
                else:
                    lo = Fraction(_ceil(lo))
                lo_closed = True
            if hi is not None:
                if hi.denominator == 1:
                    hi = hi if hi_closed else hi - 1
                else:
                    hi = Fraction(_floor(hi))
                hi_closed = True
            if isinstance(carrier, (Omega, OmegaOp)):
                if lo is None or lo < 0:
                    lo, lo_closed = Fraction(0), True
        if lo is not None and hi is not None:
            if lo > hi or (lo == hi and not (lo_closed and hi_closed)):
                continue
        cleaned.append(Piece(lo, hi, lo_closed, hi_closed))
    cleaned.sort(key=lambda p: (p.lo is not None, p.lo if p.lo is not None else 0))
    merged: list = []
    for p in cleaned:
        if merged and _touches(merged[-1], p, integer):
            merged[-1] = _merge(merged[-1], p)
        else:
            merged.append(p)
    return tuple(merged)


def _ceil(x: Fraction) -> int:
    return -(-x.numerator // x.denominator)


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def _touches(a: Piece, b: Piece, integer: bool) -> bool:
    if a.hi is None or b.lo is None:
        return True
    if integer:
        return b.lo <= a.hi + 1
    if b.lo < a.hi:
        return True
    return b.lo == a.hi and (a.hi_closed or b.lo_closed)


def _merge(a: Piece, b: Piece) -> Piece:
    if a.hi is None or b.hi is None:
        hi, hi_closed = None, False
    elif b.hi > a.hi or (b.hi == a.hi and b.hi_closed):
        hi, hi_closed = b.hi, b.hi_closed
    else:
        hi, hi_closed = a.hi, a.hi_closed
    return Piece(a.lo, hi, a.lo_closed, hi_closed)


def fd(carrier, lo, hi, lo_closed=False, hi_closed=False) -> FinDescSubset:
    """Single-interval subset; endpoints None for unbounded."""
    lo = Fraction(lo) if lo is not None else None
    hi = Fraction(hi) if hi is not None else None
    return FinDescSubset(carrier, (Piece(lo, hi, lo_closed, hi_closed),))


def _order_inf(s: FinDescSubset) -> tuple:
    """(kind, value, attained) for the carrier-order infimum of the subset."""
    if isinstance(s.carrier, OmegaOp):
        # the carrier order reverses the numeric one
        last = s.pieces[-1]
        if last.hi is None:
            return ("bottom", None, False)
        return ("point", last.hi, True)
    first = s.pieces[0]
    if first.lo is None:
        return ("bottom", None, False)
    return ("point", first.lo, first.lo_closed)


def has_least(s: FinDescSubset) -> bool:
    kind, _, attained = _order_inf(s)
    return kind == "point" and attained


def subset_preceq(s1, s2, p=None) -> bool:
    """Below-reaching comparison: every member of s2 has an s1 member below it.

    Finite sets are compared against the given poset; finitely described
    subsets are decided by their carrier-order infima.
    """
    if isinstance(s1, FinDescSubset) and isinstance(s2, FinDescSubset):
        if s1.carrier != s2.carrier:
            raise ValueError("subsets live over different carriers")
        k1, v1, a1 = _order_inf(s1)
        k2, v2, a2 = _order_inf(s2)
        if k1 == "bottom":
            return True
        if k2 == "bottom":
            return False
        rel = cmp_points(s1.carrier, v1, v2)
        if rel != 0:
            return rel < 0
        return a1 or not a2
    s1, s2 = set(s1), set(s2)
    if not s1 or not s2:
        raise EmptySubset("the subset preorder is defined on nonempty subsets")
    if not isinstance(p, FinitePoset):
        raise ValueError("finite subsets need the ambient poset")
    return all(any(p.leq_holds(a, b) for a in s1) for b in s2)


@dataclass(frozen=True)
class SubsetClass:
    """An equivalence class of mutually below-reaching subsets."""

    representative: object
    key: tuple


def classify(s: FinDescSubset) -> Optional[SubsetClass]:
    """The class of s when it is downward directed with no least element.

    Subsets of a chain are automatically downward directed; in a chain the
    class is pinned by the carrier-order infimum and whether it is attained.
    """
    if has_least(s):
        return None
    kind, value, _ = _order_inf(s)
    if kind == "bottom":
        return SubsetClass(s, ("bottom",))
    return SubsetClass(s, ("succ", value))


# ---------------------------------------------------------------------------
# The completion


@dataclass
class ATPoset:
    """The completion: original points plus cut points for eligible classes.

    Finite posets have no eligible subsets, so the completion is the poset
    itself (witnessed).  Symbolic carriers list their cut families instead of
    materializing points: rats has one successor cut per rational and a
    bottom, ints and omega_op have a single bottom, omega has none.
    """

    base: Union[FinitePoset, SymbolicChain]
    has_point_cuts: bool
    has_bottom_cut: bool
    fragment: str  # "exact" | "finDesc"
    degeneracy_witness: Optional[OrderMap] = None

    def orig(self, p) -> tuple:
        return ("orig", p)

    def cut(self, key) -> tuple:
        return ("cut", key)

    def elements_finite(self) -> list:
        assert isinstance(self.base, FinitePoset)
        return [self.orig(p) for p in sorted(self.base.elements, key=str)]

    def sample_elements(self, points: Iterable = ()) -> list:
        if isinstance(self.base, FinitePoset):
            return self.elements_finite()
        out = [self.orig(Fraction(p) if isinstance(self.base, Rats) else int(p)) for p in points]
        if self.has_point_cuts:
            out.extend(self.cut(("succ", Fraction(p))) for p in points)
        if self.has_bottom_cut:
            out.append(self.cut(("bottom",)))
        return out

    def leq(self, x, y) -> bool:
        tx, vx = x
        ty, vy = y
        if isinstance(self.base, FinitePoset):
            assert tx == ty == "orig"
            return self.base.leq_holds(vx, vy)
        if tx == "orig" and ty == "orig":
            return cmp_points(self.base, vx, vy) <= 0
        if tx == "orig":
            if vy == ("bottom",):
                return False
            return cmp_points(self.base, vx, vy[1]) <= 0
        if ty == "orig":
            if vx == ("bottom",):
                return True
            return cmp_points(self.base, vy, vx[1]) > 0
        if vx == ("bottom",):
            return True
        if vy == ("bottom",):
            return False
        return cmp_points(self.base, vx[1], vy[1]) <= 0

    def as_json(self, points: Iterable = ()) -> dict:
        sample = self.sample_elements(points)
        orig = [str(v) for (t, v) in sample if t == "orig"]
        cuts = [{"key": [str(part) for part in v]} for (t, v) in sample if t == "cut"]
        names = [
            (f"orig:{v}" if t == "orig" else "cut:" + ":".join(str(p) for p in v))
            for (t, v) in sample
        ]
        relation = [
            [names[i], names[j]]
            for i, a in enumerate(sample)
            for j, b in enumerate(sample)
            if i != j and self.leq(a, b)
        ]
        return {
            "orig": orig,
            "cuts": cuts,
            "relation": relation,
            "fragment": self.fragment,
            "cardinality": "exact" if self.fragment == "exact" else "symbolic",
        }


def _is_downward_directed(p: FinitePoset, subset: tuple) -> bool:
    return all(
        any(p.leq_holds(c, a) and p.leq_holds(c, b) for c in subset)
        for a in subset
        for b in subset
    )


def _has_least_finite(p: FinitePoset, subset: tuple) -> bool:
    return any(all(p.leq_holds(m, a) for a in subset) for m in subset)


def at_finite(p: FinitePoset, cap: int = 20) -> ATPoset:
    """Scan all nonempty subsets and certify that none is an eligible cut.

    Finite downward directed sets always have a least element, so the
    completion of a finite poset is the poset itself; the scan makes that a
    checked fact rather than an assumption.
    """
    if not p.elements:
        raise ValueError("the completion needs a nonempty poset")
    if len(p.elements) > cap:
        raise TooLarge(f"subset scan capped at {cap} elements")
    els = tuple(sorted(p.elements, key=str))
    eligible = []
    for mask in range(1, 2 ** len(els)):
        subset = tuple(els[i] for i in range(len(els)) if mask >> i & 1)
        if _has_least_finite(p, subset):
            continue
        if _is_downward_directed(p, subset):
            eligible.append(subset)
    assert not eligible, f"finite poset produced eligible cut sets: {eligible!r}"
    witness = OrderMap(p, p, {x: x for x in p.elements})
    return ATPoset(p, False, False, "exact", degeneracy_witness=witness)


_FD_FAMILIES = {
    Rats: (True, True),
    Ints: (False, True),
    OmegaOp: (False, True),
    Omega: (False, False),
}


def _probe_subsets(carrier) -> list:
    """Small sweep of the piece grammar used to certify the declared families."""
    out = []
    probes = [Fraction(-2), Fraction(0), Fraction(1, 2), Fraction(3)]
    for lo in [None] + probes:
        for hi in [None] + probes:
            for lo_closed in (False, True):
                for hi_closed in (False, True):
                    try:
                        out.append(fd(carrier, lo, hi, lo_closed, hi_closed))
                    except ValueError:
                        pass
    return out


def at_fd(c: SymbolicChain) -> ATPoset:
    """Completion of a symbolic chain, restricted to finitely described subsets.

    The declared cut families are re-derived from a sweep of the interval
    grammar before returning; classes outside the declaration would fail the
    certification assert.  Irrational cuts of the rationals have no finitely
    described representative, so the fragment is inherently incomplete and is
    labeled as such in every output.
    """
    for kind, families in _FD_FAMILIES.items():
        if isinstance(c, kind):
            point_cuts, bottom = families
            keys = {classify(s).key for s in _probe_subsets(c) if classify(s) is not None}
            expected_kinds = set()
            if point_cuts:
                expected_kinds.add("succ")
            if bottom:
                expected_kinds.add("bottom")
            assert {k[0] for k in keys} <= expected_kinds
            if bottom:
                assert ("bottom",) in keys
            return ATPoset(c, point_cuts, bottom, "finDesc")
    raise UnsupportedCarrier(f"no finitely-described completion over {c!r}")


def spectrum_order(p: Union[FinitePoset, SymbolicChain]) -> ATPoset:
    """The prime-spectrum order of the path algebra built from p.

    Elements of the completion stand for prime ideals; for chain inputs the
    result is checked to be linear on a sample.
    """
    if isinstance(p, FinitePoset):
        at = at_finite(p)
        chain_input = p.is_chain()
        sample = at.elements_finite()
    else:
        at = at_fd(p)
        chain_input = True
        sample = at.sample_elements([Fraction(-1), Fraction(0), Fraction(2)])
    if chain_input:
        for a in sample:
            for b in sample:
                assert at.leq(a, b) or at.leq(b, a), f"not linear at {a!r}, {b!r}"
    return at


def dense_cor_injection(at: ATPoset, probes: Iterable = ()) -> dict:
    """Map each non-original cut to the class of the originals above it.

    For the rationals: the successor cut at q goes to the class of (q, inf),
    the bottom cut to the class of the downward-unbounded sets.  Injective on
    the fragment and order-reflecting where defined.
    """
    if not isinstance(at.base, Rats):
        raise UnsupportedCarrier("the dense-injection map is computed over the rationals")
    keys = [("succ", Fraction(q)) for q in probes]
    if at.has_bottom_cut:
        keys.append(("bottom",))
    mapping = {}
    for key in keys:
        if key == ("bottom",):
            rep = fd(at.base, None, None)
        else:
            rep = fd(at.base, key[1], None)
        cls = classify(rep)
        assert cls is not None and cls.key == key
        mapping[key] = cls
    class_keys = [cls.key for cls in mapping.values()]
    assert len(set(class_keys)) == len(class_keys), "injection failed on the fragment"
    for k1, c1 in mapping.items():
        for k2, c2 in mapping.items():
            if subset_preceq(c1.representative, c2.representative):
                assert at.leq(at.cut(k1), at.cut(k2))
    return mapping


# ---------------------------------------------------------------------------
# Families of disjoint chains


@dataclass
class BerryReport:
    poset: Optional[FinitePoset]
    at: Optional[ATPoset]
    max_chain: object  # element count (finite) or the limit cardinal
    attained: bool
    cdim: Cardinal
    scdim: Optional[Cardinal]


def berry_family(arg) -> BerryReport:
    """Disjoint union of chains, one per requested length.

    Finite mode: explicit lengths; the completion equals the poset and the
    longest chain is attained.  Symbolic mode with a limit cardinal: the
    dimension is the supremum of the shorter blocks and is never attained, so
    the strong dimension does not exist.
    """
    if isinstance(arg, Aleph):
        if arg.index.is_successor():
            raise ValueError("the family construction needs a limit cardinal")
        return BerryReport(None, None, arg, False, arg, None)
    lengths = sorted(set(int(n) for n in arg))
    if not lengths or lengths[0] < 1:
        raise ValueError("lengths must be positive naturals")
    elements = [(n, i) for n in lengths for i in range(n)]
    strict = [((n, i), (n, j)) for n in lengths for i in range(n) for j in range(i + 1, n)]
    poset = FinitePoset.from_strict(elements, strict)
    at = at_finite(poset)
    longest = max(lengths)
    return BerryReport(
        poset,
        at,
        longest,
        True,
        FiniteCard(longest - 1),
        FiniteCard(longest - 1),
    )
