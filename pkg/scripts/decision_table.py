#!/usr/bin/env python3
"""Sweep the ring-existence question over a grid of sizes and dimensions.

Prints one verdict table per axiom mode, with the rule that fired.
"""
from krullkit import cardinal_engine as ce

SIZES = ["1", "4", "6", "aleph(0)", "aleph(1)", "aleph(w)", "tower(aleph(0))"]
DIMS = ["0", "1", "aleph(0)", "aleph(1)", "aleph(2)", "2^aleph(0)", "2^aleph(1)"]

MODES = {
    "table-empty": ce.TABLE_EMPTY,
    "gch": ce.AxiomMode.gch(),
    "cohen": ce.AxiomMode.cohen(),
}


def main():
    for mode_name, mode in MODES.items():
        print(f"\n== mode: {mode_name} ==")
        header = f"{'size \\ dim':>16} " + " ".join(f"{d:>12}" for d in DIMS)
        print(header)
        for k_text in SIZES:
            k = ce.parse_cardinal(k_text)
            row = [f"{k_text:>16}"]
            for l_text in DIMS:
                l = ce.parse_cardinal(l_text)
                verdict = ce.exists_ring(k, l, mode)
                row.append(f"{verdict.verdict + '/' + verdict.rule:>12}")
            print(" ".join(row))
        print("\nanchors:")
        seen = {}
        for k_text in SIZES:
            for l_text in DIMS:
                v = ce.exists_ring(ce.parse_cardinal(k_text), ce.parse_cardinal(l_text), mode)
                seen[v.rule] = v.anchor
        for rule in sorted(seen):
            print(f"  {rule}: {seen[rule]}")


if __name__ == "__main__":
    main()
