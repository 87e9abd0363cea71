"""Finite unions of subspaces kept as sorted antichains.

The empty union stands for the set {0}: zero members are dropped on
pruning, since the zero vector lies in every subspace anyway.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .arith import gr
from .linalg import (
    DimensionMismatch,
    ScaledOperator,
    Subspace,
    contains,
    image,
    includes,
    intersect,
    preimage,
    span,
)


@dataclass(frozen=True)
class UnionSpace:
    ambient_dim: int
    members: tuple

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def is_empty(self) -> bool:
        return not self.members

    def __contains__(self, v) -> bool:
        return any(contains(m, v) for m in self.members)

    def __repr__(self):
        return f"UnionSpace(d={self.ambient_dim}, {list(self.members)})"


def prune(members: Iterable[Subspace], ambient_dim: Optional[int] = None) -> UnionSpace:
    """Drop zero members and members included in another; sort canonically."""
    ms = list(dict.fromkeys(members))
    if ambient_dim is None:
        if not ms:
            raise ValueError("ambient dimension needed for an empty union")
        ambient_dim = ms[0].ambient_dim
    for m in ms:
        if m.ambient_dim != ambient_dim:
            raise DimensionMismatch("union members must share the ambient dimension")
    ms = [m for m in ms if not m.is_zero()]
    # larger members first so a member is only compared against possible supersets
    ms.sort(key=lambda m: -m.dim)
    kept: list = []
    for m in ms:
        if not any(includes(k, m) for k in kept):
            kept.append(m)
    kept.sort(key=Subspace.sort_key)
    return UnionSpace(ambient_dim, tuple(kept))


def empty_union(d: int) -> UnionSpace:
    return UnionSpace(d, ())


def _same_dim(x, y) -> None:
    if x.ambient_dim != y.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {x.ambient_dim} and {y.ambient_dim} differ")


def containing_member(s: Subspace, x: UnionSpace) -> Optional[Subspace]:
    """The first member including ``s`` (``s`` zero: the zero subspace itself)."""
    _same_dim(s, x)
    if s.is_zero():
        return s
    for m in x.members:
        if includes(m, s):
            return m
    return None


def subspace_in_union(s: Subspace, x: UnionSpace) -> bool:
    """``s`` is inside the union iff it is inside one member (infinite field)."""
    return containing_member(s, x) is not None


def is_subset(x: UnionSpace, y: UnionSpace) -> bool:
    """Set inclusion of the unions: every point of ``x`` lies in ``y``."""
    _same_dim(x, y)
    return all(subspace_in_union(m, y) for m in x.members)


def is_proper_subset(x: UnionSpace, y: UnionSpace) -> bool:
    return is_subset(x, y) and not is_subset(y, x)


def union_equals(x: UnionSpace, y: UnionSpace) -> bool:
    return is_subset(x, y) and is_subset(y, x)


def union_intersect(x: UnionSpace, y: UnionSpace) -> UnionSpace:
    _same_dim(x, y)
    return prune((intersect(a, b) for a in x.members for b in y.members), x.ambient_dim)


def union_image(t: ScaledOperator, x: UnionSpace) -> UnionSpace:
    if t.ambient_dim != x.ambient_dim:
        raise DimensionMismatch("operator and union dimensions differ")
    return prune((image(t, m) for m in x.members), x.ambient_dim)


def union_preimage(t: ScaledOperator, x: UnionSpace) -> UnionSpace:
    if t.ambient_dim != x.ambient_dim:
        raise DimensionMismatch("operator and union dimensions differ")
    return prune((preimage(t, m) for m in x.members), x.ambient_dim)


def vector_outside(s: Subspace, x: UnionSpace) -> Optional[tuple]:
    """A vector of ``s`` lying in no member of ``x``, or None if ``s`` is covered.

    Points ``sum_j t^j b_j`` on the moment curve through the basis of ``s``:
    any ``dim s`` of them are independent, so each proper subspace
    ``s & member`` holds at most ``dim s - 1`` of them.
    """
    if subspace_in_union(s, x):
        return None
    k = s.dim
    tries = len(x.members) * (k - 1) + 1
    for t in range(tries):
        v = [gr(0)] * s.ambient_dim
        coef = 1
        for b in s.basis:
            for i, bi in enumerate(b):
                if bi:
                    v[i] = v[i] + bi * coef
            coef *= t
        v = tuple(v)
        if v not in x:
            return v
    raise AssertionError("moment-curve search failed; union inclusion is inconsistent")


def from_vectors(groups: Iterable[Iterable], d: int) -> UnionSpace:
    return prune((span(g, d) for g in groups), d)
