"""krullkit: ordered-group spectra, subset-chain machinery, poset completions,
and a symbolic cardinal decision engine, with a single CLI entry point."""

from . import cardinal_engine, catalogs, chain_lab, lex_groups, order_core, spectra_lpa

__all__ = [
    "cardinal_engine",
    "catalogs",
    "chain_lab",
    "lex_groups",
    "order_core",
    "spectra_lpa",
]

__version__ = "0.1.0"
