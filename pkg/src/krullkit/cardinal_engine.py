"""Symbolic cardinal arithmetic, axiom modes, and the ring-existence rules.

Cardinals are finite naturals or aleph numbers indexed by ordinals in Cantor
normal form below w^w, which covers every cardinal the constructions need
while keeping cofinality decidable by a fixed rule table.  The continuum
function is controlled by an axiom mode: GCH, a partial table, or the preset
"cohen" pattern (2^aleph0 = aleph2, 2^b = b+ for b >= aleph1).

Every yes/no verdict of the decision procedure carries the id of the rule
that fired and a self-contained anchor naming the mathematical fact behind
it; independence is reported as an explicit note, never silently dropped.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .errors import FiniteCardinalError, InconsistentTable, UnsupportedDescriptor


# ---------------------------------------------------------------------------
# Ordinals in Cantor normal form below w^w


@dataclass(frozen=True)
class OrdinalCNF:
    """Sum of w^e * c terms with strictly decreasing natural exponents."""

    terms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((int(e), int(c)) for (e, c) in self.terms))
        exps = [e for (e, _) in self.terms]
        if exps != sorted(exps, reverse=True) or len(set(exps)) != len(exps):
            raise ValueError("exponents must be strictly decreasing")
        if any(e < 0 or c < 1 for (e, c) in self.terms):
            raise ValueError("terms need natural exponents and positive coefficients")

    @classmethod
    def nat(cls, n: int) -> "OrdinalCNF":
        return cls(((0, n),)) if n else cls(())

    def is_zero(self) -> bool:
        return not self.terms

    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0] == 0

    def is_limit(self) -> bool:
        return bool(self.terms) and self.terms[-1][0] != 0

    def successor(self) -> "OrdinalCNF":
        if self.is_successor():
            head, (_, c) = self.terms[:-1], self.terms[-1]
            return OrdinalCNF(head + ((0, c + 1),))
        return OrdinalCNF(self.terms + ((0, 1),))

    def cmp(self, other: "OrdinalCNF") -> int:
        return (self.terms > other.terms) - (self.terms < other.terms)


ZERO_ORD = OrdinalCNF(())
OMEGA_ORD = OrdinalCNF(((1, 1),))


# ---------------------------------------------------------------------------
# Cardinals


@dataclass(frozen=True)
class FiniteCard:
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("cardinals are nonnegative")


@dataclass(frozen=True)
class Aleph:
    index: OrdinalCNF


@dataclass(frozen=True)
class Exp2:
    """The symbolic power 2^base, kept unevaluated until a mode resolves it."""

    base: "Cardinal"


@dataclass(frozen=True)
class PSLSymbol:
    """The union of the tower base, 2^base, 2^2^base, ..., carried by name.

    Its aleph index is not expressible in the CNF fragment, but three facts
    hold outright: it is a strong limit (hence pseudo strong limit), it is a
    limit cardinal, and its cofinality is countable (a countable union).
    """

    name: str
    base: "Cardinal"


Cardinal = Union[FiniteCard, Aleph, Exp2, PSLSymbol]

ALEPH0 = Aleph(ZERO_ORD)
ALEPH1 = Aleph(ZERO_ORD.successor())


def strong_limit_tower(base: "Cardinal" = ALEPH0, name: Optional[str] = None) -> PSLSymbol:
    """Generate the named tower cardinal over an infinite base."""
    if not is_infinite(base):
        raise FiniteCardinalError("the tower construction starts from an infinite cardinal")
    return PSLSymbol(name or f"tower({format_cardinal(base)})", base)


@dataclass(frozen=True)
class Interval:
    """A closed range of cardinals; hi is None when no upper bound is known."""

    lo: Cardinal
    hi: Optional[Cardinal]


def is_infinite(c: Cardinal) -> bool:
    return isinstance(c, (Aleph, Exp2, PSLSymbol))


def successor_cardinal(c: Cardinal) -> Aleph:
    if not isinstance(c, Aleph):
        raise FiniteCardinalError("successor cardinal is defined here for alephs only")
    return Aleph(c.index.successor())


def card_cmp(a: Cardinal, b: Cardinal, mode: Optional["AxiomMode"] = None) -> Optional[int]:
    """Three-way comparison; None when the mode leaves the order undetermined."""
    if mode is not None:
        a = _resolve(a, mode)
        b = _resolve(b, mode)
    if a == b:
        return 0
    if isinstance(a, FiniteCard) and isinstance(b, FiniteCard):
        return (a.n > b.n) - (a.n < b.n)
    if isinstance(a, FiniteCard):
        return -1
    if isinstance(b, FiniteCard):
        return 1
    if isinstance(a, PSLSymbol):
        # the tower strictly dominates everything up to its base
        below = card_cmp(b, a.base, mode)
        if below is not None and below <= 0:
            return 1
        return None
    if isinstance(b, PSLSymbol):
        flipped = card_cmp(b, a, mode)
        return None if flipped is None else -flipped
    if isinstance(a, Aleph) and isinstance(b, Aleph):
        return a.index.cmp(b.index)
    if isinstance(a, Exp2) and isinstance(b, Exp2):
        inner = card_cmp(a.base, b.base, mode)
        return 0 if inner == 0 else None
    if isinstance(a, Exp2):
        # 2^k exceeds k, hence any cardinal at most k.
        below = card_cmp(b, a.base, mode)
        if below is not None and below <= 0:
            return 1
        return None
    flipped = card_cmp(b, a, mode)
    return None if flipped is None else -flipped


def _resolve(c: Cardinal, mode: "AxiomMode") -> Cardinal:
    if isinstance(c, Exp2):
        value = card_exp2(c.base, mode)
        if not isinstance(value, Interval):
            return value
    return c


def card_add(a: Cardinal, b: Cardinal) -> Cardinal:
    """Cardinal sum: natural addition when finite, otherwise the maximum."""
    if isinstance(a, Exp2) or isinstance(b, Exp2):
        raise TypeError("resolve symbolic powers through a mode before arithmetic")
    if isinstance(a, FiniteCard) and isinstance(b, FiniteCard):
        return FiniteCard(a.n + b.n)
    return a if card_cmp(a, b) >= 0 else b


def card_mul(a: Cardinal, b: Cardinal) -> Cardinal:
    """Cardinal product: collapses to the maximum once one factor is infinite."""
    if isinstance(a, Exp2) or isinstance(b, Exp2):
        raise TypeError("resolve symbolic powers through a mode before arithmetic")
    if isinstance(a, FiniteCard) and isinstance(b, FiniteCard):
        return FiniteCard(a.n * b.n)
    if a == FiniteCard(0) or b == FiniteCard(0):
        return FiniteCard(0)
    return a if card_cmp(a, b) >= 0 else b


# ---------------------------------------------------------------------------
# Axiom modes and the continuum function


@dataclass(frozen=True)
class AxiomMode:
    kind: str  # "gch" | "table"
    entries: tuple = ()
    preset: Optional[str] = None

    def __post_init__(self):
        if self.kind not in ("gch", "table"):
            raise ValueError(f"unknown axiom mode {self.kind!r}")
        entries = tuple(sorted(self.entries, key=lambda kv: kv[0].index.terms))
        object.__setattr__(self, "entries", entries)
        for (k, v) in entries:
            if not (isinstance(k, Aleph) and isinstance(v, Aleph)):
                raise InconsistentTable("table entries must map alephs to alephs")
            if card_cmp(v, successor_cardinal(k)) < 0:
                raise InconsistentTable(f"2^{format_cardinal(k)} must be at least its successor")
        for (k1, v1), (k2, v2) in zip(entries, entries[1:]):
            if card_cmp(v1, v2) > 0:
                raise InconsistentTable("the continuum function must be monotone")

    @classmethod
    def gch(cls) -> "AxiomMode":
        return cls("gch")

    @classmethod
    def table(cls, entries: Optional[dict] = None) -> "AxiomMode":
        return cls("table", tuple((entries or {}).items()))

    @classmethod
    def cohen(cls) -> "AxiomMode":
        return cls("table", (), preset="cohen")

    def describe(self) -> str:
        if self.kind == "gch":
            return "gch"
        return f"table(preset={self.preset}, entries={len(self.entries)})"


TABLE_EMPTY = AxiomMode.table()


def card_exp2(k: Cardinal, mode: AxiomMode) -> Union[Cardinal, Interval]:
    """2^k under the mode: exact when decided, otherwise an interval."""
    if isinstance(k, FiniteCard):
        return FiniteCard(2 ** k.n)
    if isinstance(k, PSLSymbol):
        return Interval(ALEPH1, None)  # the tower index leaves the CNF fragment
    if isinstance(k, Exp2):
        inner = _resolve(k, mode)
        if isinstance(inner, Exp2):
            return Interval(successor_cardinal_lower(inner), None)
        return card_exp2(inner, mode)
    if mode.kind == "gch":
        return successor_cardinal(k)
    if mode.preset == "cohen":
        if k == ALEPH0:
            return Aleph(OrdinalCNF.nat(2))
        return successor_cardinal(k)
    lo = successor_cardinal(k)
    hi: Optional[Cardinal] = None
    for (key, value) in mode.entries:
        rel = card_cmp(key, k)
        if rel == 0:
            return value
        if rel < 0 and card_cmp(value, lo) > 0:
            lo = value
        if rel > 0 and (hi is None or card_cmp(value, hi) < 0):
            hi = value
    return Interval(lo, hi)


def successor_cardinal_lower(c: Cardinal) -> Cardinal:
    """A sound lower bound for the successor of a possibly symbolic cardinal."""
    if isinstance(c, Aleph):
        return successor_cardinal(c)
    if isinstance(c, Exp2) and isinstance(c.base, Aleph):
        return successor_cardinal(successor_cardinal(c.base))
    return ALEPH1


def cofinality(k: Cardinal) -> Cardinal:
    """Rule table: aleph0 and successor alephs are regular, CNF limits drop to aleph0."""
    if isinstance(k, FiniteCard):
        raise FiniteCardinalError("cofinality is defined for infinite cardinals")
    if isinstance(k, PSLSymbol):
        return ALEPH0  # a countable union of strictly smaller cardinals
    if isinstance(k, Exp2):
        raise ValueError("cofinality of an unresolved power is not determined")
    if k.index.is_zero():
        return ALEPH0
    if k.index.is_successor():
        return k
    return ALEPH0


@dataclass
class PredicateReport:
    regular: Optional[bool]
    singular: Optional[bool]
    successor_card: Optional[bool]
    limit_card: Optional[bool]
    psl: Optional[bool]
    strong_limit: Optional[bool]

    def as_dict(self) -> dict:
        return {
            "regular": self.regular,
            "singular": self.singular,
            "successorCard": self.successor_card,
            "limitCard": self.limit_card,
            "PSL": self.psl,
            "strongLimit": self.strong_limit,
        }


def _bounded_exponents(k: Aleph, mode: AxiomMode, strict: bool) -> Optional[bool]:
    """Whether 2^a <= k (or < k when strict) for every infinite a < k."""
    if k == ALEPH0:
        return True
    if mode.kind == "gch":
        return True if not strict else k.index.is_limit()
    if mode.preset == "cohen":
        two = Aleph(OrdinalCNF.nat(2))
        if strict:
            return k.index.is_limit()
        return card_cmp(two, k) <= 0
    # Partial table: a single recorded violation settles it; confirmation
    # needs every smaller aleph covered, which only finite indices allow.
    allowed = (lambda r: r <= 0) if not strict else (lambda r: r < 0)
    for (key, value) in mode.entries:
        if card_cmp(key, k) < 0 and not allowed(card_cmp(value, k)):
            return False
    terms = k.index.terms
    if terms and terms[0][0] == 0:
        needed = terms[0][1]
        seen = set()
        for (key, value) in mode.entries:
            if card_cmp(key, k) < 0 and allowed(card_cmp(value, k)):
                seen.add(key.index.terms)
        if all(OrdinalCNF.nat(j).terms in seen for j in range(needed)):
            return True
    return None


def predicates(k: Cardinal, mode: AxiomMode) -> PredicateReport:
    if isinstance(k, FiniteCard):
        raise FiniteCardinalError("predicates are defined for infinite cardinals")
    if isinstance(k, PSLSymbol):
        return PredicateReport(
            regular=False,
            singular=True,
            successor_card=False,
            limit_card=True,
            psl=True,
            strong_limit=True,
        )
    if isinstance(k, Exp2):
        raise ValueError("resolve symbolic powers through a mode before querying predicates")
    successor = k.index.is_successor()
    regular = True if (k == ALEPH0 or successor) else False
    return PredicateReport(
        regular=regular,
        singular=not regular,
        successor_card=successor,
        limit_card=not successor,
        psl=_bounded_exponents(k, mode, strict=False),
        strong_limit=_bounded_exponents(k, mode, strict=True),
    )


# ---------------------------------------------------------------------------
# ded bounds


@dataclass
class DedResult:
    exact: Optional[Cardinal]
    lo: Cardinal
    hi: Cardinal
    notes: tuple

    def as_dict(self) -> dict:
        return {
            "exact": format_cardinal(self.exact) if self.exact is not None else None,
            "lo": format_cardinal(self.lo),
            "hi": format_cardinal(self.hi),
            "notes": list(self.notes),
        }


def ded_bounds(k: Cardinal, mode: AxiomMode) -> DedResult:
    """Bounds for the largest linear order with a dense subset of size k.

    Lower bound is always the successor of k, upper bound 2^k; GCH pins the
    value, and aleph0 is pinned in every mode by the rationals-in-the-reals
    witness.  Uncountable cofinality earns an independence note.
    """
    if isinstance(k, FiniteCard):
        raise FiniteCardinalError("ded is defined for infinite cardinals")
    if isinstance(k, Exp2):
        raise ValueError("resolve symbolic powers through a mode first")
    lo = successor_cardinal(k)
    hi_value = card_exp2(k, mode)
    hi: Cardinal = Exp2(k) if isinstance(hi_value, Interval) else hi_value
    exact: Optional[Cardinal] = None
    if mode.kind == "gch":
        exact = lo
    elif k == ALEPH0:
        exact = hi
    notes = []
    if card_cmp(cofinality(k), ALEPH0) > 0:
        notes.append(
            "independence: with uncountable cofinality it is consistent that ded stays below 2^k"
        )
    return DedResult(exact, lo, hi, tuple(notes))


# ---------------------------------------------------------------------------
# The (size, dimension) decision procedure


@dataclass
class Verdict:
    verdict: str  # "yes" | "no" | "unknown"
    rule: str
    anchor: str
    notes: tuple = ()
    witness: Optional[str] = None

    def as_dict(self) -> dict:
        out = {
            "verdict": self.verdict,
            "rule": self.rule,
            "anchor": self.anchor,
            "notes": list(self.notes),
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


ANCHORS = {
    "R0": "a ring has 1 != 0, so it has at least two elements",
    "R1-no": "every prime of a finite ring is maximal, so the dimension is 0",
    "R1-yes": "the integers modulo the size realize dimension 0",
    "R1-val-no": "a finite valuation ring is local, hence of prime-power size",
    "R1-val-yes": "integers modulo a prime power form a finite chain ring",
    "R2": "lexicographic sums of integer groups give valuation rings of size k realizing every dimension up to k",
    "R3": "a chain of primes yields a chain of subsets of the ring, so the dimension is at most 2^k",
    "R4": "under GCH every dimension up to 2^k is realized at size k",
    "R5": "at a pseudo strong limit the binary-tree valuation group (or the polynomial ring in k variables) attains dimension 2^k",
    "R6": "not settled by the implemented theorems",
}

_PRIME_POWER_CACHE: dict = {}


def _is_prime_power(n: int) -> bool:
    if n in _PRIME_POWER_CACHE:
        return _PRIME_POWER_CACHE[n]
    result = False
    if n >= 2:
        m = n
        p = None
        for cand in range(2, n + 1):
            if cand * cand > m:
                p = m
                break
            if m % cand == 0:
                p = cand
                break
        while m % p == 0:
            m //= p
        result = m == 1
    _PRIME_POWER_CACHE[n] = result
    return result


def exists_ring(k: Cardinal, l: Cardinal, mode: AxiomMode, kind: str = "any") -> Verdict:
    """Does a ring of size k with (strong) dimension l exist, under the mode?

    The rule cascade R0..R6; the first applicable rule decides, and unknown
    verdicts carry the relevant independence or open-range notes.
    """
    if kind not in ("any", "valuation"):
        raise ValueError(f"unknown ring kind {kind!r}")
    l = _resolve(l, mode)
    if isinstance(k, Exp2):
        k = _resolve(k, mode)
        if isinstance(k, Exp2):
            raise ValueError("the size argument must resolve to a concrete cardinal")
    # R0: no ring has fewer than two elements.
    if isinstance(k, FiniteCard) and k.n < 2:
        return Verdict("no", "R0", ANCHORS["R0"])
    # R1: finite sizes force dimension zero.
    if isinstance(k, FiniteCard):
        positive = not (isinstance(l, FiniteCard) and l.n == 0)
        if positive:
            return Verdict("no", "R1", ANCHORS["R1-no"])
        if kind == "valuation":
            if _is_prime_power(k.n):
                return Verdict("yes", "R1", ANCHORS["R1-val-yes"], witness=f"Z/{k.n}Z")
            return Verdict("no", "R1", ANCHORS["R1-val-no"])
        return Verdict("yes", "R1", ANCHORS["R1-yes"], witness=f"Z/{k.n}Z")
    # R2: downward classification for infinite sizes.
    if card_cmp(l, k, mode) is not None and card_cmp(l, k, mode) <= 0:
        witness = "valuation ring whose value group is a lexicographic sum of copies of Z"
        return Verdict("yes", "R2", ANCHORS["R2"], witness=witness)
    # R3: dimension can never exceed 2^size.
    two_k = card_exp2(k, mode)
    if not isinstance(two_k, Interval):
        above = card_cmp(l, two_k, mode)
        if above is not None and above > 0:
            return Verdict("no", "R3", ANCHORS["R3"])
    # R4: GCH completes the classification.
    if mode.kind == "gch":
        within = card_cmp(l, two_k, mode) if not isinstance(two_k, Interval) else None
        if within is not None and within <= 0:
            return Verdict("yes", "R4", ANCHORS["R4"], witness="valuation ring from a chain of 2^k subsets")
    # R5: pseudo strong limits attain 2^k outright.
    is_two_k = (l == Exp2(k)) or (
        not isinstance(two_k, Interval) and card_cmp(l, two_k, mode) == 0
    )
    if is_two_k and predicates(k, mode).psl is True:
        witness = (
            "valuation ring from the binary-tree group"
            if kind == "valuation"
            else "polynomial ring in k variables over a small field"
        )
        return Verdict("yes", "R5", ANCHORS["R5"], witness=witness)
    # R6: open.
    notes = [
        f"some ring of size {format_cardinal(k)} has dimension strictly above {format_cardinal(k)}"
    ]
    if is_two_k and card_cmp(cofinality(k), ALEPH0) > 0:
        notes.append(
            "independence: whether size k attains dimension 2^k is undecidable in ZFC at uncountable cofinality"
        )
    return Verdict("unknown", "R6", ANCHORS["R6"], notes=tuple(notes))


# ---------------------------------------------------------------------------
# Construction catalog


@dataclass(frozen=True)
class ValuationFromGroup:
    rank: Cardinal
    carrier: Cardinal = ALEPH0


@dataclass(frozen=True)
class PolyRing:
    base: Cardinal
    vars: Cardinal


@dataclass(frozen=True)
class LpaFromChain:
    chain: str  # "rats" | "ints" | "omega" | "omega_op"
    field_size: Cardinal = ALEPH0


@dataclass(frozen=True)
class BerryFamily:
    kappa: Cardinal


@dataclass
class ComputedRing:
    descriptor: object
    cardinality: Union[Cardinal, Interval]
    cdim: Union[Cardinal, Interval, None]
    scdim: Union[Cardinal, Interval, None]
    justification: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "kind": type(self.descriptor).__name__,
            "cardinality": format_extent(self.cardinality),
            "cdim": format_extent(self.cdim),
            "scdim": format_extent(self.scdim),
            "justification": dict(self.justification),
        }


_LPA_COMPLETION_SIZE = {
    "rats": Exp2(ALEPH0),
    "ints": ALEPH0,
    "omega": ALEPH0,
    "omega_op": ALEPH0,
}


def catalog(desc, mode: AxiomMode) -> ComputedRing:
    """Fill in cardinality and dimensions for a construction descriptor."""
    if isinstance(desc, ValuationFromGroup):
        rank = desc.rank
        return ComputedRing(
            desc,
            desc.carrier,
            rank,
            rank,
            {
                "cardinality": "the underlying field can be chosen of the carrier size",
                "dims": "primes correspond inclusion-reversingly to the segment subgroups; the rank chain is attained",
            },
        )
    if isinstance(desc, PolyRing):
        if not isinstance(desc.vars, Aleph):
            raise UnsupportedDescriptor("the variable count must be an infinite aleph")
        if card_cmp(desc.base, desc.vars, mode) not in (-1, 0):
            raise UnsupportedDescriptor("the base ring may not exceed the variable count")
        ded = ded_bounds(desc.vars, mode)
        cdim: Union[Cardinal, Interval] = ded.exact if ded.exact is not None else Interval(ded.lo, ded.hi)
        two_k = card_exp2(desc.vars, mode)
        attained = mode.kind == "gch" or predicates(desc.vars, mode).psl is True
        if attained:
            scdim: Union[Cardinal, Interval] = Exp2(desc.vars) if isinstance(two_k, Interval) else two_k
            sc_reason = "a chain of 2^k subsets of the variables lifts to a chain of primes"
        else:
            scdim = Interval(successor_cardinal(desc.vars), Exp2(desc.vars))
            sc_reason = "without GCH or a pseudo strong limit only the bounds survive"
        return ComputedRing(
            desc,
            desc.vars,
            cdim,
            scdim,
            {
                "cardinality": "k variables over a base of size at most k give k polynomials",
                "cdim": "the polynomial-ring dimension equals ded of the variable count",
                "scdim": sc_reason,
            },
        )
    if isinstance(desc, LpaFromChain):
        if desc.chain not in _LPA_COMPLETION_SIZE:
            raise UnsupportedDescriptor(f"unsupported chain {desc.chain!r}")
        epsilon = ALEPH0  # countably many vertices and countably many edges
        # aleph0 * |K| * epsilon^2 and max(|K|, epsilon) agree here, so exact.
        big = card_cmp(desc.field_size, epsilon)
        cardinality: Union[Cardinal, Interval] = desc.field_size if big == 1 else epsilon
        completion = _LPA_COMPLETION_SIZE[desc.chain]
        dim = _resolve(completion, mode)
        return ComputedRing(
            desc,
            cardinality,
            dim,
            dim,
            {
                "cardinality": "paths over countably many edges with coefficients in the field",
                "dims": "the prime spectrum is the cut completion of the chain, itself a chain",
            },
        )
    if isinstance(desc, BerryFamily):
        kappa = desc.kappa
        if not isinstance(kappa, Aleph) or kappa.index.is_successor():
            raise UnsupportedDescriptor("the family construction needs a limit cardinal")
        return ComputedRing(
            desc,
            kappa,
            kappa,
            None,
            {
                "cdim": "supremum of the chain sizes of the shorter well-ordered blocks",
                "scdim": "no single chain attains the limit, so the strong dimension does not exist",
            },
        )
    raise UnsupportedDescriptor(f"unknown descriptor {desc!r}")


# ---------------------------------------------------------------------------
# Prime chains in polynomial rings from rational cuts


@dataclass
class WitnessChain:
    ideals: tuple  # (label, descriptor) pairs, ascending
    witnesses: tuple  # variables separating consecutive ideals


def _cut_key(cut) -> tuple:
    tag, q = cut
    return (Fraction(q), 0 if tag == "at" else 1)


def witness_chain_poly(cuts) -> WitnessChain:
    """Prime-ideal chain P_r = <X_i : i below the cut r> for rational cuts.

    Cuts are ("at", q) for everything strictly below q, or ("succ", q) for
    everything up to and including q; any plain rational is taken as "at".
    """
    normalized = []
    for cut in cuts:
        if isinstance(cut, (int, Fraction)):
            normalized.append(("at", Fraction(cut)))
        else:
            tag, q = cut
            if tag not in ("at", "succ"):
                raise ValueError(f"unknown cut tag {tag!r}")
            normalized.append((tag, Fraction(q)))
    normalized = sorted(set(normalized), key=_cut_key)
    ideals = []
    for (tag, q) in normalized:
        bound = "<" if tag == "at" else "<="
        ideals.append((f"P[{bound}{q}]", (tag, q)))
    witnesses = []
    for (tag1, q1), (tag2, q2) in zip(normalized, normalized[1:]):
        if q1 == q2:
            var = q1  # at(q) versus succ(q): X_q itself separates
        elif tag1 == "succ" and tag2 == "succ":
            var = q2
        else:
            var = (q1 + q2) / 2
        assert _var_in_cut(var, (tag2, q2)) and not _var_in_cut(var, (tag1, q1))
        witnesses.append(var)
    return WitnessChain(tuple(ideals), tuple(witnesses))


def _var_in_cut(var: Fraction, cut) -> bool:
    tag, q = cut
    return var < q if tag == "at" else var <= q


# ---------------------------------------------------------------------------
# Text grammar


def format_index(idx: OrdinalCNF) -> str:
    if idx.is_zero():
        return "0"
    parts = []
    for (e, c) in idx.terms:
        if e == 0:
            parts.append(str(c))
        elif e == 1:
            parts.append("w" if c == 1 else f"w*{c}")
        else:
            parts.append(f"w^{e}" if c == 1 else f"w^{e}*{c}")
    return "+".join(parts)


def format_cardinal(c: Union[Cardinal, None]) -> str:
    if isinstance(c, FiniteCard):
        return str(c.n)
    if isinstance(c, Aleph):
        return f"aleph({format_index(c.index)})"
    if isinstance(c, Exp2):
        return f"2^{format_cardinal(c.base)}"
    if isinstance(c, PSLSymbol):
        return c.name
    raise TypeError(f"not a cardinal: {c!r}")


def format_extent(v) -> object:
    if v is None:
        return None
    if isinstance(v, Interval):
        return {
            "lo": format_cardinal(v.lo),
            "hi": format_cardinal(v.hi) if v.hi is not None else None,
        }
    return format_cardinal(v)


_INDEX_TERM = re.compile(r"^(?:(w)(?:\^(\d+))?(?:\*(\d+))?|(\d+))$")


def parse_index(text: str) -> OrdinalCNF:
    terms = []
    for chunk in text.split("+"):
        m = _INDEX_TERM.match(chunk.strip())
        if not m:
            raise ValueError(f"bad ordinal term {chunk!r}")
        if m.group(4) is not None:
            n = int(m.group(4))
            if n:
                terms.append((0, n))
        else:
            e = int(m.group(2)) if m.group(2) else 1
            c = int(m.group(3)) if m.group(3) else 1
            terms.append((e, c))
    return OrdinalCNF(tuple(terms))


def parse_cardinal(text: str) -> Cardinal:
    text = text.strip()
    if text.startswith("2^"):
        return Exp2(parse_cardinal(text[2:]))
    m = re.match(r"^tower\((.*)\)$", text)
    if m:
        return strong_limit_tower(parse_cardinal(m.group(1)))
    m = re.match(r"^aleph\((.*)\)$", text)
    if m:
        return Aleph(parse_index(m.group(1)))
    if text.isdigit():
        return FiniteCard(int(text))
    raise ValueError(f"bad cardinal {text!r}")
