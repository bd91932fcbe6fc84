"""Conjugation-invariant word norms on free groups and right-angled Artin/Coxeter groups."""

from .freenorm import (
    biinvariant_distance,
    brute_force_norm,
    cancelation_norm,
    distortion_profile,
    norm_table,
    trivializing_sequence,
)
from .words import Alphabet, Letter, Word, concat, cyclic_reduce, free_reduce, invert, parse_word, random_word

__version__ = "0.1.0"
