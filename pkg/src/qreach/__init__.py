"""Exact reachability analysis for quantum automata.

Decides globally, ultimately-forever and infinitely-often reachability of
negation-free subspace formulas, offers bounded sweeps for everything else,
and compiles two-counter Minsky machines into automata to exhibit why
eventual reachability is out of reach.
"""

from .arith import GaussianRational, Poly, cyclotomic, char_poly
from .automaton import And, Atom, Not, Or, QuantumAutomaton, add_silent_action, denote, satisfies
from .globreach import decide_g, decide_u
from .infreach import decide_i
from .linalg import ScaledOperator, Subspace, span, validate_scaled_unitary
from .period import period
from .single import classify_zero_set, y_single
from .unions import UnionSpace
from .verdict import Verdict

__version__ = "0.1.0"

__all__ = [
    "And",
    "Atom",
    "GaussianRational",
    "Not",
    "Or",
    "Poly",
    "QuantumAutomaton",
    "ScaledOperator",
    "Subspace",
    "UnionSpace",
    "Verdict",
    "add_silent_action",
    "char_poly",
    "classify_zero_set",
    "cyclotomic",
    "decide_g",
    "decide_i",
    "decide_u",
    "denote",
    "period",
    "satisfies",
    "span",
    "validate_scaled_unitary",
    "y_single",
]
