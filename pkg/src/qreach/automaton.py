"""Quantum automata, subspace formulas and exact path simulation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence, Union

from .linalg import (
    DimensionMismatch,
    ScaledOperator,
    Subspace,
    contains,
    full_space,
    identity,
    intersect,
    vector,
)
from .unions import UnionSpace, prune


class NegationError(ValueError):
    """Raised when a negation-free formula is required."""


# formulas


@dataclass(frozen=True)
class Atom:
    space: Subspace


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    args: tuple

    def __init__(self, *args):
        object.__setattr__(self, "args", _flatten(args))


@dataclass(frozen=True)
class Or:
    args: tuple

    def __init__(self, *args):
        object.__setattr__(self, "args", _flatten(args))


Formula = Union[Atom, Not, And, Or]


def _flatten(args) -> tuple:
    if len(args) == 1 and isinstance(args[0], (list, tuple)):
        args = args[0]
    return tuple(args)


def is_positive(f: Formula) -> bool:
    if isinstance(f, Atom):
        return True
    if isinstance(f, Not):
        return False
    return all(is_positive(g) for g in f.args)


def atoms(f: Formula):
    if isinstance(f, Atom):
        yield f.space
    elif isinstance(f, Not):
        yield from atoms(f.arg)
    else:
        for g in f.args:
            yield from atoms(g)


def formula_dim(f: Formula) -> int:
    dims = {a.ambient_dim for a in atoms(f)}
    if len(dims) != 1:
        raise DimensionMismatch(f"formula atoms span ambient dimensions {sorted(dims)}")
    return dims.pop()


def satisfies(state: Sequence, f: Formula) -> bool:
    if not any(state):
        raise ValueError("zero vector has no satisfaction semantics")
    return _sat(state, f)


def _sat(state, f) -> bool:
    if isinstance(f, Atom):
        return contains(f.space, state)
    if isinstance(f, Not):
        return not _sat(state, f.arg)
    if isinstance(f, And):
        return all(_sat(state, g) for g in f.args)
    return any(_sat(state, g) for g in f.args)


def _dnf(f: Formula) -> list:
    # list of clauses, each a list of atom subspaces
    if isinstance(f, Atom):
        return [[f.space]]
    if isinstance(f, Or):
        return [c for g in f.args for c in _dnf(g)]
    clauses = [[]]
    for g in f.args:
        clauses = [c + d for c in clauses for d in _dnf(g)]
    return clauses


def denote(f: Formula, ambient_dim: int = None) -> UnionSpace:
    """Set of states satisfying a negation-free formula, as a pruned union."""
    if not is_positive(f):
        raise NegationError("denotation requires negation-free formula")
    if ambient_dim is None:
        ambient_dim = formula_dim(f)
    spaces = []
    for clause in _dnf(f):
        if not clause:
            # empty conjunction is true everywhere
            spaces.append(full_space(ambient_dim))
            continue
        acc = clause[0]
        for s in clause[1:]:
            acc = intersect(acc, s)
        spaces.append(acc)
    return prune(spaces, ambient_dim)


# automata


@dataclass(frozen=True)
class QuantumAutomaton:
    ambient_dim: int
    actions: Mapping[str, ScaledOperator]
    initial: Subspace

    def __post_init__(self):
        if not self.actions:
            raise ValueError("an automaton needs at least one action")
        object.__setattr__(self, "actions", MappingProxyType(dict(self.actions)))
        for name, op in self.actions.items():
            if op.ambient_dim != self.ambient_dim:
                raise DimensionMismatch(f"operator {name!r} has dimension {op.ambient_dim}")
        if self.initial.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("initial subspace has the wrong ambient dimension")
        if self.initial.is_zero():
            raise ValueError("initial subspace must be nonzero")

    @property
    def names(self) -> tuple:
        return tuple(self.actions)

    def __eq__(self, other):
        if not isinstance(other, QuantumAutomaton):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and list(self.actions.items()) == list(other.actions.items())
            and self.initial == other.initial
        )

    __hash__ = None

    def with_actions(self, actions: Mapping[str, ScaledOperator]) -> "QuantumAutomaton":
        return QuantumAutomaton(self.ambient_dim, actions, self.initial)

    def with_initial(self, initial: Subspace) -> "QuantumAutomaton":
        return QuantumAutomaton(self.ambient_dim, self.actions, initial)


@dataclass(frozen=True)
class Path:
    start: tuple
    word: tuple
    states: tuple
    scales: tuple  # scales[n]: squared norm factor accumulated up to states[n]


class OutsideInitial(ValueError):
    pass


def run(
    a: QuantumAutomaton,
    start: Sequence,
    word: Iterable[str],
    check_initial: bool = True,
) -> Path:
    """States ``N_w[n-1] ... N_w[0] start``; the true unitary states differ by ``1/sqrt(scales[n])``."""
    start = vector(start)
    if len(start) != a.ambient_dim:
        raise DimensionMismatch("start vector has the wrong dimension")
    if check_initial and not contains(a.initial, start):
        raise OutsideInitial("start state is not in the initial subspace")
    word = tuple(word)
    for w in word:
        if w not in a.actions:
            raise KeyError(f"unknown action {w!r}")
    states = [start]
    scales = [Fraction(1)]
    for w in word:
        op = a.actions[w]
        states.append(op.apply(states[-1]))
        scales.append(scales[-1] * op.scale)
    return Path(start, word, tuple(states), tuple(scales))


SILENT = "τ"


def add_silent_action(a: QuantumAutomaton, name: str = SILENT) -> QuantumAutomaton:
    """Extend ``a`` with an identity action."""
    if name in a.actions:
        raise ValueError(f"action name {name!r} already in use")
    actions = dict(a.actions)
    actions[name] = identity(a.ambient_dim)
    return a.with_actions(actions)
