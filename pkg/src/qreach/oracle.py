"""Brute-force ground truth by walking the tree of action words.

Nothing here decides an undecidable property: F is a semi-decision that can
only confirm, G can refute with a witness or confirm up to a depth, and the
I/U sampler only gathers evidence.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .automaton import Formula, QuantumAutomaton, satisfies
from .linalg import vector

CONFIRMED = "Confirmed"
REFUTED = "Refuted"
INCONCLUSIVE = "Inconclusive"

TREE_LIMIT = 10 ** 7


class TreeTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class SweepReport:
    property: str
    bound: int
    verdict: str
    hits: tuple = ()  # (word, index) pairs
    witness: Optional[tuple] = None  # replayable word for Refuted
    stats: dict = field(default_factory=dict, compare=False)


def tree_size(n_actions: int, bound: int) -> int:
    return sum(n_actions ** k for k in range(bound + 1))


def _guard(a: QuantumAutomaton, bound: int, force: bool) -> None:
    size = len(a.actions) ** bound
    if size > TREE_LIMIT and not force:
        raise TreeTooLarge(
            f"{len(a.actions)}^{bound} words exceed the {TREE_LIMIT} limit; pass force=True"
        )


def enumerate_words(names: Sequence[str], bound: int):
    """Every word of length <= bound, shortest first, each exactly once."""
    level = [()]
    for _ in range(bound + 1):
        yield from level
        level = [w + (n,) for w in level for n in names]


def bounded_f(
    a: QuantumAutomaton,
    f: Formula,
    start,
    bound: int,
    path: Optional[Sequence[str]] = None,
    force: bool = False,
) -> SweepReport:
    """Confirm that every path meets ``f`` within ``bound`` steps.

    With ``path`` only that single word is followed.
    """
    start = vector(start)
    if path is None:
        _guard(a, bound, force)
    frontier = deque([((), start)])
    hits = []
    open_leaves = 0
    while frontier:
        word, state = frontier.popleft()
        if satisfies(state, f):
            hits.append((word, len(word)))
            continue
        if len(word) == bound:
            open_leaves += 1
            continue
        if path is not None:
            if len(word) < len(path):
                name = path[len(word)]
                frontier.append((word + (name,), a.actions[name].apply(state)))
            else:
                open_leaves += 1
            continue
        for name, op in a.actions.items():
            frontier.append((word + (name,), op.apply(state)))
    verdict = CONFIRMED if open_leaves == 0 else INCONCLUSIVE
    return SweepReport("F", bound, verdict, tuple(hits), stats={"open_leaves": open_leaves})


def bounded_g(a: QuantumAutomaton, f: Formula, start, bound: int, force: bool = False) -> SweepReport:
    """Refute G f with the shortest leaving word, or confirm it up to ``bound``."""
    _guard(a, bound, force)
    frontier = deque([((), vector(start))])
    visited = 0
    while frontier:
        word, state = frontier.popleft()
        visited += 1
        if not satisfies(state, f):
            return SweepReport("G", bound, REFUTED, witness=word, stats={"words": visited})
        if len(word) < bound:
            for name, op in a.actions.items():
                frontier.append((word + (name,), op.apply(state)))
    return SweepReport("G", bound, CONFIRMED, stats={"words": visited})


def bounded_iu(
    a: QuantumAutomaton,
    f: Formula,
    start,
    bound: int,
    window: int,
    prop: str = "I",
    samples: int = 50,
    seed: int = 0,
) -> SweepReport:
    """Sample random words and measure how often the tail meets ``f``.

    Evidence only.  The verdict is Confirmed when every sample agrees with
    the property on the tail window (I: at least one hit, U: all hits),
    Inconclusive otherwise; it is never Refuted.
    """
    if prop not in ("I", "U"):
        raise ValueError("prop must be 'I' or 'U'")
    rng = random.Random(seed)
    names = list(a.actions)
    lo = max(0, bound - window)
    hits = []
    densities = []
    agree = True
    for _ in range(samples):
        word = tuple(rng.choice(names) for _ in range(bound))
        state = vector(start)
        count = 0
        for i in range(bound + 1):
            if i >= lo and satisfies(state, f):
                hits.append((word, i))
                count += 1
            if i < bound:
                state = a.actions[word[i]].apply(state)
        span_len = bound - lo + 1
        densities.append(count / span_len)
        ok = count > 0 if prop == "I" else count == span_len
        agree = agree and ok
    return SweepReport(
        prop,
        bound,
        CONFIRMED if agree else INCONCLUSIVE,
        tuple(hits),
        stats={"window": window, "samples": samples, "seed": seed, "densities": densities},
    )
