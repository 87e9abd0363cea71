import itertools
import random

import pytest

from qreach.arith import gr
from qreach.linalg import DimensionMismatch, contains, full_space, includes, span, zero_space
from qreach.unions import (
    UnionSpace,
    empty_union,
    is_proper_subset,
    is_subset,
    prune,
    subspace_in_union,
    union_equals,
    union_image,
    union_intersect,
    union_preimage,
    vector_outside,
)

from support import SWAP, e, rand_subspace, rand_unitary


def S(*vs, d=None):
    return span(vs, d)


e1, e2, e3 = (e(3, k) for k in range(3))
f1, f2 = e(2, 0), e(2, 1)


def test_prune_examples():
    assert prune([S(f1), S(f1, f2)]).members == (full_space(2),)
    assert prune([], 2) == empty_union(2) and empty_union(2).is_empty()
    assert prune([S(f1), S(f2), S(f1)]).members == tuple(sorted([S(f1), S(f2)], key=lambda s: s.sort_key()))
    assert prune([zero_space(2)]).is_empty()


def test_prune_is_an_antichain_and_order_free():
    rng = random.Random(1)
    for _ in range(30):
        ms = [rand_subspace(rng, 3, rng.randint(0, 2)) for _ in range(4)]
        x = prune(ms, 3)
        for a, b in itertools.permutations(x.members, 2):
            assert not includes(a, b)
        shuffled = list(ms)
        rng.shuffle(shuffled)
        assert prune(shuffled, 3) == x


def test_prune_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        prune([full_space(2), full_space(3)])


def test_subspace_in_union_examples():
    x = prune([S(f1), S(f2)])
    assert subspace_in_union(S(f1), x)
    assert not subspace_in_union(S((gr(1), gr(1))), x)
    assert subspace_in_union(zero_space(2), empty_union(2))


def _sampled_in_union(s, x, rng, trials=40):
    """Vector-sampling oracle: False as soon as a sampled vector of s escapes x."""
    if s.is_zero():
        return True
    for t in range(trials):
        coeffs = [gr(rng.randint(-9, 9)) for _ in s.basis] if t else [gr(1)] * s.dim
        v = tuple(sum((c * b[i] for c, b in zip(coeffs, s.basis)), gr(0)) for i in range(s.ambient_dim))
        if any(v) and v not in x:
            return False
    return True


def test_subspace_in_union_agrees_with_sampling():
    rng = random.Random(7)
    disagreements = 0
    for _ in range(120):
        d = rng.randint(2, 4)
        x = prune([rand_subspace(rng, d, rng.randint(1, d - 1)) for _ in range(rng.randint(1, 4))], d)
        # build S inside a member half the time
        if rng.random() < 0.5 and x.members:
            m = rng.choice(x.members)
            s = span([tuple(gr(rng.randint(-2, 2)) * a for a in row) for row in m.basis[: rng.randint(1, m.dim)]], d)
        else:
            s = rand_subspace(rng, d, rng.randint(1, d))
        got = subspace_in_union(s, x)
        if got != _sampled_in_union(s, x, rng):
            disagreements += 1
        if not got:
            v = vector_outside(s, x)
            assert v is not None and contains(s, v) and v not in x
        else:
            assert vector_outside(s, x) is None
    assert disagreements == 0


def test_union_operations_examples():
    assert union_image(SWAP, prune([S(f1)])) == prune([S(f2)])
    assert union_intersect(prune([S(e1, e2)]), prune([S(e2, e3)])) == prune([S(e2)])
    assert union_equals(prune([S(f1), S(f2)]), prune([S(f2), S(f1)]))
    assert union_preimage(SWAP, prune([S(f1)])) == prune([S(f2)])


def test_union_inclusion():
    small = prune([S(e1)])
    big = prune([S(e1, e2), S(e3)])
    assert is_subset(small, big) and not is_subset(big, small)
    assert is_proper_subset(small, big)
    assert not is_proper_subset(big, big)
    assert is_subset(empty_union(3), small)


def test_union_operations_are_monotone():
    rng = random.Random(9)
    for _ in range(25):
        d = 3
        y = prune([rand_subspace(rng, d, rng.randint(1, 2)) for _ in range(3)], d)
        # x below y: sub-spans of y's members
        x = prune([span(m.basis[:1], d) for m in y.members[:2]], d)
        z = prune([rand_subspace(rng, d, rng.randint(1, 2)) for _ in range(2)], d)
        t = rand_unitary(rng, d)
        assert is_subset(x, y)
        assert is_subset(union_intersect(x, z), union_intersect(y, z))
        assert is_subset(union_image(t, x), union_image(t, y))


def test_union_membership_of_vectors():
    x = prune([S(f1), S(f2)])
    assert f1 in x and (gr(0), gr(5)) in x
    assert (gr(1), gr(1)) not in x
    assert isinstance(x, UnionSpace) and len(x) == 2
