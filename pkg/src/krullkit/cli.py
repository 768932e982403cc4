"""Command-line entry point exposing all modules.

Exit codes: 0 success, 2 check failure (with a counterexample dump),
64 usage or parse errors, 65 malformed JSON input, 66 inputs beyond the
exhaustive bounds.  KRULLKIT_SEED overrides the default sampling seed.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import cardinal_engine as ce
from . import chain_lab as cl
from . import lex_groups as lg
from . import order_core as oc
from . import spectra_lpa as sp
from .config import DEFAULT_SEED, DEFAULT_TRIALS
from .errors import KrullkitError, TooLarge

EX_CHECK = 2
EX_USAGE = 64
EX_DATA = 65
EX_TOOLARGE = 66


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


# ---------------------------------------------------------------------------
# Argument grammars


def _parse_zspec(text: str) -> lg.LexGroup:
    import re

    m = re.match(r"^(zlex|ztree)\((\d+)\)$", text.strip())
    if not m:
        raise _UsageError(f"bad group spec {text!r}: use zlex(n) or ztree(n)")
    n = int(m.group(2))
    if m.group(1) == "zlex":
        return lg.zlex(n)
    return lg.tree_group(n)[0]


def _parse_element(text: str) -> lg.GroupElement:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise _UsageError(f"bad element {text!r}: use {{index:value,...}}")
    body = text[1:-1].strip()
    coords = {}
    if body:
        for item in body.split(","):
            key, _, value = item.partition(":")
            key = key.strip()
            label = int(key) if key.lstrip("-").isdigit() else key
            coords[label] = int(value)
    return lg.element(coords)


def _parse_pspec(text: str):
    text = text.strip()
    if text in ("rats", "ints", "omega", "omega_op"):
        return oc.parse_chain(text)
    if text.startswith("chain:"):
        return oc.FinitePoset.chain(range(int(text.split(":", 1)[1])))
    if text.startswith("antichain:"):
        return oc.FinitePoset.antichain(range(int(text.split(":", 1)[1])))
    if text.startswith("@"):
        data = _load_json_file(text[1:])
        strict = [tuple(p) for p in data.get("strict", [])]
        elements = data["elements"]
        return oc.FinitePoset.from_strict(elements, strict)
    raise _UsageError(f"bad poset spec {text!r}")


def _parse_mult(text: str) -> sp.Multiplicity:
    if text == "omega":
        return sp.Multiplicity.omega()
    if text.isdigit() and int(text) >= 1:
        return sp.Multiplicity.finite(int(text))
    raise _UsageError(f"bad multiplicity {text!r}")


def _parse_card(text: str) -> ce.Cardinal:
    try:
        return ce.parse_cardinal(text)
    except ValueError as exc:
        raise _UsageError(str(exc))


def _load_json_file(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (json.JSONDecodeError, OSError) as exc:
        raise _DataError(str(exc))


class _DataError(Exception):
    pass


def _load_chain(args) -> cl.SubsetChain:
    data = _load_json_file(args.input)
    try:
        return cl.SubsetChain(tuple(data["ground"]), [frozenset(l) for l in data["links"]])
    except (KeyError, TypeError) as exc:
        raise _DataError(f"chain JSON needs ground and links: {exc}")


def _mode_from_args(args) -> ce.AxiomMode:
    if getattr(args, "preset", None) == "cohen":
        return ce.AxiomMode.cohen()
    if getattr(args, "axioms", "table") == "gch":
        return ce.AxiomMode.gch()
    entries = {}
    if getattr(args, "table", None):
        raw = _load_json_file(args.table)
        entries = {_parse_card(k): _parse_card(v) for k, v in raw.items()}
    return ce.AxiomMode.table(entries)


# ---------------------------------------------------------------------------
# group


def _run_group(args) -> int:
    if args.op == "rank":
        group = _parse_zspec(args.group)
        sys.stdout.write(f"fin({len(lg.rank(group))})\n")
        return 0
    if args.op == "tree":
        _, leaf_map = lg.tree_group(args.depth)
        segments = {}
        for leaf, sub in leaf_map.items():
            ordered = [x for x in sub.group.index.elements if x in sub.segment]
            segments[leaf] = "{" + ",".join("ε" if x == "" else x for x in ordered) + "}"
        if args.leaves:
            for leaf in sorted(segments):
                sys.stdout.write(f"leaf {leaf} -> {segments[leaf]}\n")
        sys.stdout.write(f"distinct segments: {len(set(segments.values()))}\n")
        if args.verify:
            group = next(iter(leaf_map.values())).group
            for leaf in sorted(leaf_map):
                ok = lg.is_isolated_sample(
                    group, leaf_map[leaf], trials=args.trials, seed=args.seed
                )
                if not ok:
                    sys.stdout.write(f"verify {leaf}: counterexample found\n")
                    return EX_CHECK
            sys.stdout.write(f"verified isolation: {len(leaf_map)} leaves x {args.trials} trials\n")
        return 0
    if args.op == "spectrum":
        group = _parse_zspec(args.group)
        labels = list(lg.valuation_spectrum(group).elements)
        if args.json:
            _emit(labels)
        else:
            sys.stdout.write(" ⊂ ".join(labels) + "\n")
        return 0
    if args.op == "check-concat":
        groups = [_parse_zspec(z) for z in args.groups]
        report = lg.check_concatenation_theorem(groups)
        sys.stdout.write(report.describe() + "\n")
        if not report.ok:
            sys.stdout.write(
                f"counterexample: sides have sizes {len(report.lhs)} and {len(report.rhs)}\n"
            )
            return EX_CHECK
        return 0
    if args.op == "cmp":
        group = _parse_zspec(args.group)
        r = lg.cmp(group, _parse_element(args.f1), _parse_element(args.f2))
        sys.stdout.write({-1: "less", 0: "equal", 1: "greater"}[r] + "\n")
        return 0
    if args.op == "hull":
        group = _parse_zspec(args.group)
        hull = lg.isolated_hull(group, _parse_element(args.f))
        ordered = [x for x in group.index.elements if x in hull.segment]
        _emit([str(x) for x in ordered])
        return 0
    raise _UsageError(f"unknown group op {args.op!r}")


# ---------------------------------------------------------------------------
# chain


def _run_chain(args) -> int:
    if args.op == "ded":
        value = cl.ded_finite(args.n, witness_only=args.witness_only)
        sys.stdout.write(f"{value}\n")
        return 0
    if args.op == "corder":
        chain = _load_chain(args)
        order = cl.c_order(chain)
        _emit(
            {
                "ground": list(chain.ground),
                "pairs": sorted([list(p) for p in order.pairs]),
                "links": len(chain.links),
                "containments": chain.containments,
            }
        )
        return 0
    if args.op == "separate":
        chain = _load_chain(args)
        hint = args.hint.split(",") if args.hint else None
        _emit({"s_prime": list(cl.max_separated(chain, hint))})
        return 0
    if args.op in ("to-dense", "convert"):
        if args.op == "convert" and args.direction == "to-chain":
            data = _load_json_file(args.input)
            order = oc.FiniteLinOrder(tuple(data["order"]))
            result = cl.dense_to_chain(order, set(data["dense"]))
            _emit(
                {
                    "ground": list(result.chain.ground),
                    "links": [sorted(map(str, l)) for l in result.chain.links],
                    "collapsed": [str(s) for s in result.collapsed],
                }
            )
            return 0
        chain = _load_chain(args)
        system = cl.chain_to_dense(chain)
        witnesses = [
            [cl.format_cut(a), cl.format_cut(b), cl.format_cut(mid)]
            for (a, b, mid) in system.betweenness_witnesses()
        ]
        _emit(
            {
                "cuts": [cl.format_cut(c) for c in system.cuts],
                "dense": [cl.format_cut(c) for c in system.dense],
                "betweenness": witnesses,
            }
        )
        return 0
    raise _UsageError(f"unknown chain op {args.op!r}")


# ---------------------------------------------------------------------------
# spec


def _probes(args):
    return [Fraction(q) for q in args.probes.split(",")] if args.probes else [Fraction(0), Fraction(1)]


def _run_spec(args) -> int:
    if args.op == "ep":
        poset = _parse_pspec(args.poset)
        if not isinstance(poset, oc.FinitePoset):
            raise _UsageError("spec ep needs a finite poset")
        graph = sp.build_ep(poset, _parse_mult(args.mult))
        if args.dot:
            sys.stdout.write(sp.export_dot(graph))
        else:
            count = sp.count_paths(graph)
            _emit(
                {
                    "vertices": [graph.vertex_label(p) for p in graph.elements],
                    "arcs": [
                        [graph.vertex_label(p), graph.vertex_label(q), str(m)]
                        for ((p, q), m) in graph.arcs
                    ],
                    "paths": count if isinstance(count, int) else ce.format_cardinal(count),
                    "regular": sorted(graph.vertex_label(v) for v in sp.regular_vertices(graph)),
                }
            )
        return 0
    if args.op == "at":
        base = _parse_pspec(args.poset)
        at = sp.spectrum_order(base)
        points = _probes(args) if not isinstance(base, oc.FinitePoset) else ()
        _emit(at.as_json(points))
        return 0
    if args.op == "berry":
        if not args.symbolic and not args.lengths:
            raise _UsageError("berry needs explicit lengths or --symbolic")
        if args.symbolic:
            kappa = _parse_card(args.symbolic)
            if not isinstance(kappa, ce.Aleph):
                raise _UsageError("berry --symbolic expects an aleph")
            report = sp.berry_family(kappa)
            _emit(
                {
                    "max_chain": ce.format_cardinal(report.max_chain),
                    "attained": report.attained,
                    "cdim": ce.format_cardinal(report.cdim),
                    "scdim": None,
                }
            )
            return 0
        lengths = [int(x) for x in args.lengths.split(",")]
        report = sp.berry_family(lengths)
        _emit(
            {
                "elements": len(report.poset.elements),
                "cuts": 0,
                "max_chain": report.max_chain,
                "attained": report.attained,
                "cdim": ce.format_cardinal(report.cdim),
                "scdim": ce.format_cardinal(report.scdim),
            }
        )
        return 0
    if args.op == "lpa-dims":
        desc = ce.LpaFromChain(args.chain, _parse_card(args.field))
        computed = ce.catalog(desc, _mode_from_args(args))
        _emit(computed.as_dict())
        return 0
    raise _UsageError(f"unknown spec op {args.op!r}")


# ---------------------------------------------------------------------------
# card


def _run_card(args) -> int:
    mode = _mode_from_args(args)
    if args.op == "exists":
        verdict = ce.exists_ring(_parse_card(args.k), _parse_card(args.l), mode, kind=args.kind)
        _emit(verdict.as_dict())
        return 0
    if args.op == "ded":
        _emit(ce.ded_bounds(_parse_card(args.k), mode).as_dict())
        return 0
    if args.op == "cf":
        sys.stdout.write(ce.format_cardinal(ce.cofinality(_parse_card(args.k))) + "\n")
        return 0
    if args.op == "predicates":
        _emit(ce.predicates(_parse_card(args.k), mode).as_dict())
        return 0
    if args.op == "catalog":
        if args.kind == "valuation":
            desc = ce.ValuationFromGroup(_parse_card(args.rank), _parse_card(args.carrier))
        elif args.kind == "polyring":
            desc = ce.PolyRing(_parse_card(args.base), _parse_card(args.vars))
        elif args.kind == "lpa":
            desc = ce.LpaFromChain(args.chain, _parse_card(args.field))
        elif args.kind == "berry":
            desc = ce.BerryFamily(_parse_card(args.kappa))
        else:
            raise _UsageError(f"unknown catalog kind {args.kind!r}")
        _emit(ce.catalog(desc, mode).as_dict())
        return 0
    raise _UsageError(f"unknown card op {args.op!r}")


# ---------------------------------------------------------------------------
# wiring


def _build_parser() -> _Parser:
    parser = _Parser(prog="krullkit")
    default_seed = int(os.environ.get("KRULLKIT_SEED", DEFAULT_SEED))
    parser.add_argument("--seed", type=int, default=default_seed)
    parser.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    top = parser.add_subparsers(dest="command", required=True)

    group = top.add_parser("group").add_subparsers(dest="op", required=True)
    p = group.add_parser("rank")
    p.add_argument("group")
    p = group.add_parser("tree")
    p.add_argument("depth", type=int)
    p.add_argument("--leaves", action="store_true")
    p.add_argument("--verify", action="store_true")
    p = group.add_parser("spectrum")
    p.add_argument("group")
    p.add_argument("--json", action="store_true")
    p = group.add_parser("check-concat")
    p.add_argument("groups", nargs="+")
    p = group.add_parser("cmp")
    p.add_argument("group")
    p.add_argument("f1")
    p.add_argument("f2")
    p = group.add_parser("hull")
    p.add_argument("group")
    p.add_argument("f")

    chain = top.add_parser("chain").add_subparsers(dest="op", required=True)
    p = chain.add_parser("ded")
    p.add_argument("n", type=int)
    p.add_argument("--witness-only", action="store_true")
    for name in ("corder", "separate", "to-dense"):
        p = chain.add_parser(name)
        p.add_argument("--input", default="-")
        if name == "separate":
            p.add_argument("--hint", default=None)
    p = chain.add_parser("convert")
    p.add_argument("--direction", choices=["to-dense", "to-chain"], required=True)
    p.add_argument("--input", default="-")

    spec = top.add_parser("spec").add_subparsers(dest="op", required=True)
    p = spec.add_parser("ep")
    p.add_argument("poset")
    p.add_argument("--mult", default="omega")
    p.add_argument("--dot", action="store_true")
    p = spec.add_parser("at")
    p.add_argument("poset")
    p.add_argument("--fragment", action="store_true")
    p.add_argument("--probes", default=None)
    p = spec.add_parser("berry")
    p.add_argument("lengths", nargs="?", default=None)
    p.add_argument("--symbolic", default=None)
    p = spec.add_parser("lpa-dims")
    p.add_argument("chain", choices=["rats", "ints", "omega", "omega_op"])
    p.add_argument("--field", default="aleph(0)")
    _add_mode_flags(p)

    card = top.add_parser("card").add_subparsers(dest="op", required=True)
    p = card.add_parser("exists")
    p.add_argument("k")
    p.add_argument("l")
    p.add_argument("--kind", choices=["any", "valuation"], default="any")
    _add_mode_flags(p)
    p = card.add_parser("ded")
    p.add_argument("k")
    _add_mode_flags(p)
    p = card.add_parser("cf")
    p.add_argument("k")
    p = card.add_parser("predicates")
    p.add_argument("k")
    _add_mode_flags(p)
    p = card.add_parser("catalog")
    kinds = p.add_subparsers(dest="kind", required=True)
    sub = kinds.add_parser("valuation")
    sub.add_argument("--rank", required=True)
    sub.add_argument("--carrier", default="aleph(0)")
    _add_mode_flags(sub)
    sub = kinds.add_parser("polyring")
    sub.add_argument("--base", required=True)
    sub.add_argument("--vars", required=True)
    _add_mode_flags(sub)
    sub = kinds.add_parser("lpa")
    sub.add_argument("--chain", required=True, choices=["rats", "ints", "omega", "omega_op"])
    sub.add_argument("--field", default="aleph(0)")
    _add_mode_flags(sub)
    sub = kinds.add_parser("berry")
    sub.add_argument("--kappa", required=True)
    _add_mode_flags(sub)
    return parser


def _add_mode_flags(p) -> None:
    p.add_argument("--axioms", choices=["gch", "table"], default="table")
    p.add_argument("--preset", choices=["cohen"], default=None)
    p.add_argument("--table", default=None)


_RUNNERS = {"group": _run_group, "chain": _run_chain, "spec": _run_spec, "card": _run_card}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if not hasattr(args, "op") and not hasattr(args, "kind"):
            raise _UsageError("missing subcommand")
        return _RUNNERS[args.command](args)
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EX_USAGE
    except _DataError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EX_DATA
    except TooLarge as exc:
        sys.stderr.write(f"too large: {exc}\n")
        return EX_TOOLARGE
    except (KrullkitError, ValueError) as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EX_USAGE


if __name__ == "__main__":
    sys.exit(main())
