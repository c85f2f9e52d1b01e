"""Bubble-sort graph BS_n: short-cycle census, generalised prisms and a
prism-lifted Hamiltonian cycle."""

from .perm_core import Form, Permutation, apply_form, apply_gen, identity, lex_rank, lex_unrank, parity, sjt_cycle

__version__ = "0.1.0"

__all__ = [
    "Form",
    "Permutation",
    "apply_form",
    "apply_gen",
    "identity",
    "lex_rank",
    "lex_unrank",
    "parity",
    "sjt_cycle",
]
