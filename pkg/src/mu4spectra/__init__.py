"""Spectra of the quarter Cantor measure: 4-adic words, labeled-tree constructions,
exact residue-automaton decisions and Fourier frame diagnostics."""

__version__ = "0.1.0"
