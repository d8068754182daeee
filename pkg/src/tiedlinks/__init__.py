"""Exact computation of the tied-link invariant F from tied braid words."""

from .braidword import TiedBraid, BraidLetter, parse_braid, exponent, markov_move
from .btengine import AlgebraElement, AlgebraLetter, markov_trace, reduce_word, represent
from .invariant import InvariantValue, invariant_F, normalize, paper_form_equal
from .polyfield import ExtScalar, LaurentU, RationalFn, TracePoly

__all__ = [
    "TiedBraid",
    "BraidLetter",
    "parse_braid",
    "exponent",
    "markov_move",
    "AlgebraElement",
    "AlgebraLetter",
    "markov_trace",
    "reduce_word",
    "represent",
    "InvariantValue",
    "invariant_F",
    "normalize",
    "paper_form_equal",
    "ExtScalar",
    "LaurentU",
    "RationalFn",
    "TracePoly",
]

__version__ = "0.1.0"
