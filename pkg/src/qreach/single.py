"""Single-operator reachability: invariant cores, the set of states hitting
a subspace infinitely often, and the zero set of ``u^T M^n v``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .linalg import (
    DimensionMismatch,
    ScaledOperator,
    Subspace,
    image,
    intersect,
    nullspace,
    span,
    vector,
)
from .period import period
from .unions import UnionSpace, containing_member, prune

log = logging.getLogger(__name__)

DEFAULT_EMPTINESS_BOUND = 10000


@dataclass(frozen=True)
class InvariantCore:
    K: Subspace
    p: int
    iterations: int = 0


def invariant_core(t: ScaledOperator, v: Subspace, p: Optional[int] = None) -> InvariantCore:
    """Largest subspace K of ``v`` with ``U^p K = K``.

    Iterates ``K <- K & U^p K`` from ``K = v``; the dimension drops at every
    step before the fixpoint, so at most ``dim v + 1`` rounds run.
    """
    if t.ambient_dim != v.ambient_dim:
        raise DimensionMismatch("operator and subspace dimensions differ")
    if p is None:
        p = period(t).p
    tp = t.power(p)
    k = v
    rounds = 0
    while True:
        rounds += 1
        nxt = intersect(k, image(tp, k))
        if nxt == k:
            return InvariantCore(k, p, rounds)
        assert nxt.dim < k.dim
        k = nxt


def y_single(t: ScaledOperator, v: Subspace, core: Optional[InvariantCore] = None) -> UnionSpace:
    """States whose orbit under ``t`` visits ``v`` infinitely often."""
    if core is None:
        core = invariant_core(t, v)
    members = []
    k = core.K
    for _ in range(core.p):
        members.append(k)
        k = image(t, k)
    return prune(members, v.ambient_dim)


# zero sets of u^T M^n v

ALL = "All"
INFINITE = "Infinite"
FINITE_WITNESSED = "FiniteNonemptyWitnessed"
FINITE_EMPTY_UP_TO = "FiniteEmptyUpTo"


@dataclass(frozen=True)
class ZeroSetClass:
    classification: str
    witness: Optional[int] = None  # first zero for FiniteNonemptyWitnessed
    bound: Optional[int] = None  # sweep horizon for FiniteEmptyUpTo
    detail: dict = field(default_factory=dict, compare=False)

    @property
    def is_infinite(self) -> bool:
        return self.classification in (ALL, INFINITE)

    @property
    def is_cofinite(self) -> bool:
        # an invertible M propagates a zero tail backwards, so cofinite means all
        return self.classification == ALL


def sequence_terms(u: Sequence, m: ScaledOperator, v: Sequence, count: int) -> list:
    """``b_n = u^T N^n v`` for n < count (``a_n = b_n / s^(n/2)``)."""
    u, x = vector(u), vector(v)
    out = []
    for _ in range(count):
        out.append(_dot(u, x))
        x = m.apply(x)
    return out


def _dot(u, x):
    acc = u[0] * 0
    for a, b in zip(u, x):
        if a and b:
            acc = acc + a * b
    return acc


def row_kernel(u: Sequence) -> Subspace:
    """{x : u^T x = 0}, no conjugation."""
    u = vector(u)
    return span(nullspace([u], len(u)), len(u))


def classify_zero_set(
    u: Sequence,
    m: ScaledOperator,
    v: Sequence,
    emptiness_bound: int = DEFAULT_EMPTINESS_BOUND,
) -> ZeroSetClass:
    u, v = vector(u), vector(v)
    d = m.ambient_dim
    if len(u) != d or len(v) != d:
        raise DimensionMismatch("u, M and v must agree in dimension")
    if not any(u) or not any(v):
        raise ValueError("u and v must be nonzero")

    head = sequence_terms(u, m, v, d)
    if not any(head):
        # order <= d recurrence: d leading zeros force every term to vanish
        return ZeroSetClass(ALL, detail={"leading_zeros": d})

    kernel = row_kernel(u)
    core = invariant_core(m, kernel)
    y = y_single(m, kernel, core)
    member = containing_member(span([v], d), y)
    if member is not None:
        zeros = []
        x = v
        for n in range(min(emptiness_bound, 4 * core.p * (d + 2)) + 1):
            if not any(x) or not _dot(u, x):
                zeros.append(n)
                if len(zeros) == 5:
                    break
            x = m.apply(x)
        return ZeroSetClass(
            INFINITE,
            detail={"period": core.p, "member": member, "first_zeros": zeros},
        )

    x = v
    for n in range(emptiness_bound + 1):
        if not _dot(u, x):
            return ZeroSetClass(FINITE_WITNESSED, witness=n)
        x = m.apply(x)
    log.info("no zero of u^T M^n v for n <= %d; emptiness is undecided", emptiness_bound)
    return ZeroSetClass(FINITE_EMPTY_UP_TO, bound=emptiness_bound)
