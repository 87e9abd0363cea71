"""Global and ultimately-forever reachability for negation-free formulas.

The states all of whose successors stay in ``||f||`` form the largest union
inside ``||f||`` mapped onto itself by every action.  Starting from
``||f||`` we keep replacing ``Y`` by ``U^-1 Y & Y`` for an action that moves
it.  The same set decides the ultimately-forever property.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .automaton import Formula, NegationError, QuantumAutomaton, denote, is_positive
from .unions import (
    UnionSpace,
    containing_member,
    is_proper_subset,
    union_equals,
    union_image,
    union_intersect,
    union_preimage,
    vector_outside,
)
from .verdict import Verdict


@dataclass(frozen=True)
class GFixpoint:
    Y: UnionSpace
    iterations: int
    trace: tuple  # (action, before, after) per shrinking step


def g_fixpoint(a: QuantumAutomaton, f: Formula) -> GFixpoint:
    if not is_positive(f):
        raise NegationError("global reachability is only decidable for negation-free formulas")
    y = denote(f, a.ambient_dim)
    steps = []
    while True:
        for name, op in a.actions.items():
            if not union_equals(union_image(op, y), y):
                nxt = union_intersect(union_preimage(op, y), y)
                assert is_proper_subset(nxt, y), "fixpoint step did not shrink the union"
                steps.append((name, y, nxt))
                y = nxt
                break
        else:
            return GFixpoint(y, len(steps), tuple(steps))


def counterexample(a: QuantumAutomaton, target: UnionSpace, start, depth: int):
    """Shortest word driving ``start`` out of ``target``, searched breadth first."""
    frontier = deque([((), tuple(start))])
    seen = {tuple(start)}
    while frontier:
        word, state = frontier.popleft()
        if state not in target:
            return word
        if len(word) == depth:
            continue
        for name, op in a.actions.items():
            nxt = op.apply(state)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append((word + (name,), nxt))
    return None


def _decide(prop: str, a: QuantumAutomaton, f: Formula) -> Verdict:
    fp = g_fixpoint(a, f)
    member = containing_member(a.initial, fp.Y)
    cert = {"Y": fp.Y, "iterations": fp.iterations}
    if member is not None:
        cert["member"] = member
        return Verdict(prop, True, cert)
    start = vector_outside(a.initial, fp.Y)
    word = counterexample(a, denote(f, a.ambient_dim), start, fp.iterations)
    # a state outside Y_n leaves Y_0 within n steps
    assert word is not None, "no counterexample within the iteration count"
    cert["state"] = start
    cert["word"] = word
    return Verdict(prop, False, cert)


def decide_g(a: QuantumAutomaton, f: Formula) -> Verdict:
    return _decide("G", a, f)


def decide_u(a: QuantumAutomaton, f: Formula) -> Verdict:
    return _decide("U", a, f)
