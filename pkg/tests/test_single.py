import logging
import random

import pytest

from qreach.arith import char_poly, gr
from qreach.linalg import full_space, identity, image, includes, span, subspace_sum, zero_space
from qreach.single import (
    ALL,
    FINITE_EMPTY_UP_TO,
    FINITE_WITNESSED,
    INFINITE,
    classify_zero_set,
    invariant_core,
    sequence_terms,
    y_single,
)
from qreach.unions import prune, subspace_in_union, union_image

from support import (
    DIAG_PHASE,
    I,
    PHASE,
    PHASES,
    SWAP,
    cayley_unitary,
    conjugate,
    diag,
    e,
    rand_unitary,
    rand_vector,
    vec,
)

log = logging.getLogger(__name__)

f1, f2 = e(2, 0), e(2, 1)

FIXTURES = [
    (SWAP, span([f1])),
    (DIAG_PHASE, span([f1])),
    (SWAP, zero_space(2)),
]


def test_invariant_core_examples():
    v = span([f1])
    assert invariant_core(identity(2), v).K == v
    assert invariant_core(DIAG_PHASE, span([vec(1, 1)])).K == zero_space(2)
    assert invariant_core(DIAG_PHASE, full_space(2)).K == full_space(2)
    assert invariant_core(SWAP, v).K == v and invariant_core(SWAP, v).p == 2


def test_y_single_examples():
    assert y_single(SWAP, span([f1])) == prune([span([f1]), span([f2])])
    assert y_single(DIAG_PHASE, span([f1])) == prune([span([f1])])
    assert y_single(SWAP, zero_space(2)).is_empty()


def _hits(t, v, psi, steps):
    out = []
    x = psi
    for n in range(steps + 1):
        if x in v:
            out.append(n)
        x = t.apply(x)
    return out


@pytest.mark.parametrize("t,v", FIXTURES)
def test_y_single_against_orbit_sweep(t, v):
    rng = random.Random(21)
    y = y_single(t, v)
    p = invariant_core(t, v).p
    d = t.ambient_dim
    probes = [f1, f2, vec(1, 1), vec(1, -1)] + [rand_vector(rng, d) for _ in range(26)]
    for psi in probes:
        hits = _hits(t, v, psi, 200)
        if subspace_in_union(span([psi]), y):
            assert len([n for n in hits if n <= p * (d + 2) * 4]) >= 3
        else:
            late = [n for n in hits if n >= d * p]
            log.info("outside Y: hits %s, beyond d*p: %s", hits[:5], late[:5])
            assert not late


def test_y_is_invariant():
    rng = random.Random(22)
    for _ in range(15):
        d = rng.randint(1, 3)
        t = rand_unitary(rng, d)
        v = span([rand_vector(rng, d) for _ in range(rng.randint(0, d))], d)
        y = y_single(t, v)
        assert union_image(t, y) == y
        core = invariant_core(t, v)
        assert includes(v, core.K)
        assert image(t.power(core.p), core.K) == core.K


def test_core_is_maximal():
    rng = random.Random(23)
    for eigs in [(1, I), (1, -1, I), (1, PHASE, -1)]:
        d = len(eigs)
        q = cayley_unitary(rng, d)
        t = conjugate(q, diag(*eigs))
        p = invariant_core(t, full_space(d)).p
        cols = [tuple(q.matrix[i][j] for i in range(d)) for j in range(d)]
        for _ in range(10):
            # K' spanned by eigenvectors of T^p, V = K' plus a random direction
            chosen = [cols[j] for j in range(d) if rng.random() < 0.5]
            kp = span(chosen, d)
            v = subspace_sum(kp, span([rand_vector(rng, d)], d))
            assert image(t.power(p), kp) == kp
            assert includes(invariant_core(t, v).K, kp)


# zero sets


def test_classify_examples():
    assert classify_zero_set(f1, identity(2), f2).classification == ALL
    inf = classify_zero_set(f1, SWAP, f2)
    assert inf.classification == INFINITE and inf.is_infinite and not inf.is_cofinite
    # direct evaluation of the first 8 terms: zero exactly at even n
    terms = sequence_terms(f1, SWAP, f2, 8)
    assert [n for n, b in enumerate(terms) if not b] == [0, 2, 4, 6]
    assert inf.detail["first_zeros"][:3] == [0, 2, 4]
    empty = classify_zero_set(f1, identity(2), f1, 100)
    assert empty.classification == FINITE_EMPTY_UP_TO and empty.bound == 100


def test_classify_finite_witnessed():
    # u = (1, -1), M = diag(1, phase), v = (1, 1): b_n = 1 - phase^n, zero only at n = 0
    r = classify_zero_set(vec(1, -1), DIAG_PHASE, vec(1, 1))
    assert r.classification == FINITE_WITNESSED and r.witness == 0


def test_classify_rejects_zero_vectors():
    with pytest.raises(ValueError):
        classify_zero_set(vec(0, 0), SWAP, f1)
    with pytest.raises(ValueError):
        classify_zero_set(f1, SWAP, vec(0, 0))


def _recurrence(m):
    """Coefficients c_0..c_d of det(xI - N): sum_k c_k b_{n+k} = 0."""
    return char_poly(m.matrix).coeffs


def test_cofinite_means_all_by_backward_recurrence():
    rng = random.Random(24)
    saw_all = False
    for trial in range(10):
        d = rng.randint(2, 3) if trial % 3 == 0 else rng.randint(1, 3)
        if trial % 3 == 0:
            # diagonal M with u and v on different coordinates: every term vanishes
            m = diag(*[rng.choice(PHASES) for _ in range(d)])
            v, u = e(d, 0), e(d, d - 1)
        else:
            m = rand_unitary(rng, d)
            u, v = rand_vector(rng, d), rand_vector(rng, d)
        b = sequence_terms(u, m, v, 50)
        c = _recurrence(m)
        assert c[0], "invertible matrix has nonzero constant term"
        for n in range(50 - d):
            assert sum((c[k] * b[n + k] for k in range(d + 1)), gr(0)) == 0
        # run the recurrence backwards from the last d terms
        seq = list(b[-d:])
        for _ in range(50 - d):
            seq.insert(0, -sum((c[k] * seq[k - 1] for k in range(1, d + 1)), gr(0)) / c[0])
        assert seq == b
        tail_zero = not any(b[-d:])
        cls = classify_zero_set(u, m, v, emptiness_bound=60).classification
        assert tail_zero == (not any(b)) == (cls == ALL)
        saw_all = saw_all or cls == ALL
    assert saw_all
