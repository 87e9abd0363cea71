"""Infinitely-often reachability for negation-free formulas.

The working set ``X`` is a pruned union that always contains the target set
Y of states from which every path meets ``||f||`` infinitely often.  It
starts as the whole space and is refined until

1. every action maps each member onto a member, and
2. every cycle of the resulting member graph passes through a member that
   lies inside some clause subspace of ``f``,

at which point ``X`` equals Y.  Each refinement replaces one member by
finitely many proper subspaces of it, so the union strictly shrinks and the
loop stops (descending chains of finite unions of subspaces are finite).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

from .automaton import Formula, NegationError, QuantumAutomaton, denote, is_positive
from .linalg import ScaledOperator, full_space, identity, image, includes, intersect, preimage
from .period import period
from .single import invariant_core
from .unions import (
    UnionSpace,
    containing_member,
    is_proper_subset,
    prune,
    vector_outside,
)
from .verdict import Verdict

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Violation:
    member: int
    action: str


@dataclass(frozen=True)
class ViolatingLoop:
    members: tuple  # r_0, ..., r_{k-1}
    actions: tuple  # a_1, ..., a_k with U_{a_{j+1}} Y_{r_j} = Y_{r_{j+1}}


def check_condition1(x: UnionSpace, a: QuantumAutomaton):
    """Transition table of ``x`` under every action, or the chosen ``Violation``.

    Among failing pairs the member of largest dimension is picked, then the
    lowest member index, then the first action.
    """
    index = {m: i for i, m in enumerate(x.members)}
    table = {}
    best = None
    for i, y in enumerate(x.members):
        for name, op in a.actions.items():
            j = index.get(image(op, y))
            if j is None:
                if best is None or y.dim > x.members[best.member].dim:
                    best = Violation(i, name)
            else:
                table[(i, name)] = j
    return best if best is not None else table


def refine_case1(x: UnionSpace, a: QuantumAutomaton, violation: Violation) -> UnionSpace:
    yi = x.members[violation.member]
    op = a.actions[violation.action]
    ws = [intersect(yi, preimage(op, yj)) for yj in x.members]
    for w in ws:
        assert w != yi, "case-1 refinement produced a non-proper subspace"
    rest = [m for k, m in enumerate(x.members) if k != violation.member]
    refined = prune(rest + ws, x.ambient_dim)
    assert is_proper_subset(refined, x), "case-1 refinement did not shrink the union"
    return refined


def check_condition2(x: UnionSpace, table: dict, target: UnionSpace, names) -> Optional[ViolatingLoop]:
    """A cycle avoiding ``target`` in the member graph, or None.

    Members inside a target member are removed; any cycle left is a simple
    loop violating condition 2, and every violating simple loop survives.
    """
    residual = [
        i for i, y in enumerate(x.members) if not any(includes(v, y) for v in target.members)
    ]
    alive = set(residual)
    colour = dict.fromkeys(residual, 0)  # 0 new, 1 on stack, 2 done
    for root in residual:
        if colour[root]:
            continue
        stack = [(root, iter(names))]
        path_nodes = [root]
        path_actions = []
        colour[root] = 1
        while stack:
            node, it = stack[-1]
            for name in it:
                nxt = table[(node, name)]
                if nxt not in alive:
                    continue
                if colour[nxt] == 1:
                    start = path_nodes.index(nxt)
                    return ViolatingLoop(
                        tuple(path_nodes[start:]), tuple(path_actions[start:]) + (name,)
                    )
                if colour[nxt] == 0:
                    colour[nxt] = 1
                    stack.append((nxt, iter(names)))
                    path_nodes.append(nxt)
                    path_actions.append(name)
                    break
            else:
                colour[node] = 2
                stack.pop()
                path_nodes.pop()
                if path_actions:
                    path_actions.pop()
    return None


def _compose(ops) -> ScaledOperator:
    """Operator applying ``ops[0]`` first."""
    t = identity(ops[0].ambient_dim)
    for op in ops:
        t = op.compose(t)
    return t


def refine_case2(
    x: UnionSpace, loop: ViolatingLoop, a: QuantumAutomaton, target: UnionSpace
) -> UnionSpace:
    """Replace the loop's first member by its intersections with every ``R[i,t,n]``.

    ``T_i`` walks the loop once starting after its i-th step; ``R[i,t,n]``
    pulls ``T_i^n K(T_i, V_t)`` back through the first i steps.
    """
    ops = [a.actions[name] for name in loop.actions]
    k = len(ops)
    y0 = x.members[loop.members[0]]
    # rotations of one loop are conjugate, so they share a period
    p = period(_compose(ops)).p
    ws = []
    for i in range(k):
        t_i = _compose(ops[i:] + ops[:i])
        for v in target.members:
            r = invariant_core(t_i, v, p).K
            for _ in range(p):
                pulled = r
                for op in reversed(ops[:i]):
                    pulled = preimage(op, pulled)
                w = intersect(y0, pulled)
                assert w != y0, "case-2 refinement produced a non-proper subspace"
                ws.append(w)
                r = image(t_i, r)
    rest = [m for j, m in enumerate(x.members) if j != loop.members[0]]
    refined = prune(rest + ws, x.ambient_dim)
    assert is_proper_subset(refined, x), "case-2 refinement did not shrink the union"
    return refined


@dataclass(frozen=True)
class InfFixpoint:
    Y: UnionSpace
    table: dict  # (member index, action) -> member index
    iterations: int
    trace: tuple = field(default=(), compare=False)


def inf_fixpoint(a: QuantumAutomaton, f: Formula, trace: bool = False) -> InfFixpoint:
    if not is_positive(f):
        raise NegationError("infinitely-often reachability requires a negation-free formula")
    d = a.ambient_dim
    target = denote(f, d)
    x = prune([full_space(d)], d)
    names = a.names
    steps = []
    iterations = 0
    while True:
        res = check_condition1(x, a)
        if isinstance(res, Violation):
            case = {"case": 1, "member": res.member, "action": res.action}
            nxt = refine_case1(x, a, res)
        else:
            loop = check_condition2(x, res, target, names)
            if loop is None:
                log.debug("inf-reach fixpoint after %d refinements", iterations)
                return InfFixpoint(x, res, iterations, tuple(steps))
            case = {"case": 2, "loop": list(loop.members), "actions": list(loop.actions)}
            nxt = refine_case2(x, loop, a, target)
        iterations += 1
        if trace:
            steps.append((case, nxt))
        log.debug("refinement %d: %s, %d members", iterations, case, len(nxt))
        x = nxt


def decide_i(a: QuantumAutomaton, f: Formula, trace: bool = False) -> Verdict:
    fp = inf_fixpoint(a, f, trace)
    member = containing_member(a.initial, fp.Y)
    cert = {"Y": fp.Y, "iterations": fp.iterations}
    if trace:
        cert["trace"] = fp.trace
    if member is not None:
        cert["member"] = member
        return Verdict("I", True, cert)
    cert["state"] = vector_outside(a.initial, fp.Y)
    return Verdict("I", False, cert)
