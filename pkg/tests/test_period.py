import random

import pytest

from qreach.arith import GaussianRational, cyclotomic, gr
from qreach.linalg import identity, image
from qreach.period import candidate_orders, period, quotient_polynomial

from support import (
    DIAG_1_I,
    G_OP,
    I,
    PHASE,
    SWAP,
    cayley_unitary,
    conjugate,
    diag,
    invariant_subspaces,
    op,
    walk_matrix,
)


def _root_order(z, limit=48):
    """Order of z as a root of unity by direct powering, or None."""
    acc = z
    for n in range(1, limit + 1):
        if acc == 1:
            return n
        acc = acc * z
    return None


def test_period_examples():
    assert period(identity(3)).p == 1
    assert period(DIAG_1_I).p == 4
    g = period(G_OP)
    assert g.p == 1 and g.orders == (1,)
    assert period(SWAP).p == 2


def test_g_has_no_nontrivial_cyclotomic_factor():
    # exhaustive sweep over 2..2d^4, not just the totient-filtered candidates
    q = quotient_polynomial(G_OP)
    hits = [n for n in range(2, 33) if cyclotomic(n).degree <= q.degree and
            divmod(q, cyclotomic(n))[1].is_zero()]
    assert hits == []


def test_quotient_polynomial_roots_are_eigenvalue_ratios():
    t = diag(1, I, PHASE)
    q = quotient_polynomial(t)
    ev = [gr(1), I, PHASE]
    for a in ev:
        for b in ev:
            assert q(a / b) == 0


def test_scaled_operators():
    h = op([[1, 1], [1, -1]], 2)  # Hadamard, eigenvalues +1 and -1
    assert period(h).p == 2
    w = op(walk_matrix(1), 3)
    assert period(w).p >= 1
    # scaling N by a positive rational leaves the period unchanged
    for t, s in ((h, 2), (DIAG_1_I, 1)):
        scaled = op([[x * 3 for x in row] for row in t.matrix], s * 9)
        assert period(scaled).p == period(t).p


def test_candidates_cover_all_small_totients():
    cands = set(candidate_orders(2))
    # every n with phi(n) <= 4
    assert cands == {1, 2, 3, 4, 5, 6, 8, 10, 12}


DIAGONALS = [
    (1, I),
    (1, -1, I),
    (I, -I, GaussianRational(-1)),
    (1, PHASE, -PHASE),
    (GaussianRational("5/13", "12/13"), -1),
    (1, I, -1, PHASE),
]


@pytest.mark.parametrize("entries", DIAGONALS)
def test_root_orders_divide_period(entries):
    p = period(diag(*entries)).p
    for a in entries:
        for b in entries:
            o = _root_order(gr(a) / gr(b))
            if o is not None:
                assert p % o == 0


@pytest.mark.parametrize("eigs", [(1, 1), (1, I), (1, PHASE), (1, -1, I), (I, -I, 1, PHASE)])
def test_period_fixes_eigen_constructed_invariant_subspaces(eigs):
    rng = random.Random(len(eigs) * 31 + 7)
    q = cayley_unitary(rng, len(eigs))
    t = conjugate(q, diag(*eigs))
    p = period(t).p
    tp = t.power(p)
    for n, k in invariant_subspaces(eigs, q, rng):
        assert image(t.power(n), k) == k
        assert image(tp, k) == k
