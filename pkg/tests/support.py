"""Fixtures and random exact instances shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from qreach.arith import GaussianRational, gr
from qreach.automaton import QuantumAutomaton
from qreach.linalg import (
    ScaledOperator,
    adjoint,
    basis_vector,
    identity_matrix,
    matmul,
    rref,
    span,
    validate_scaled_unitary,
)
from qreach.minsky import G_MATRIX

I = GaussianRational(0, 1)
PHASE = GaussianRational("3/5", "4/5")

# Pythagorean phases (not roots of unity) and low-order roots of unity
PHASES = [
    GaussianRational(1),
    GaussianRational(-1),
    I,
    -I,
    PHASE,
    GaussianRational("5/13", "12/13"),
    GaussianRational("-4/5", "3/5"),
]


def op(rows, scale=1) -> ScaledOperator:
    return validate_scaled_unitary([[gr(x) for x in row] for row in rows], scale)


def e(d, k):
    return basis_vector(d, k)


def vec(*xs):
    return tuple(gr(x) for x in xs)


def diag(*entries) -> ScaledOperator:
    d = len(entries)
    return op([[entries[i] if i == j else 0 for j in range(d)] for i in range(d)])


SWAP = op([[0, 1], [1, 0]])
G_OP = validate_scaled_unitary(G_MATRIX, 1)
DIAG_1_I = diag(1, I)
DIAG_PHASE = diag(1, PHASE)


def walk_matrix(sign: int):
    """Integer matrix sqrt(3) W_+ (sign = 1) or sqrt(3) W_- (sign = -1)."""
    s = sign
    return [
        [1, 1, 0, -s],
        [s, -s, s, 0],
        [0, 1, 1, s],
        [1, 0, -1, s],
    ]


def walk_automaton() -> QuantumAutomaton:
    ops = {"+": op(walk_matrix(1), 3), "-": op(walk_matrix(-1), 3)}
    return QuantumAutomaton(4, ops, span([e(4, 0)], 4))


PD1 = span([vec(1, 0, 0, 0), vec(0, 1, 0, -1)], 4)
PD2 = span([vec(1, 0, 0, 0), vec(0, 1, 0, 1)], 4)


# random exact instances


def rand_rational(rng: random.Random, num: int = 3, den: int = 3) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def rand_gr(rng: random.Random, num: int = 3, den: int = 3, real: bool = False) -> GaussianRational:
    im = 0 if real else rand_rational(rng, num, den)
    return GaussianRational(rand_rational(rng, num, den), im)


def rand_vector(rng: random.Random, d: int, nonzero: bool = True, **kw) -> tuple:
    while True:
        v = tuple(rand_gr(rng, **kw) for _ in range(d))
        if any(v) or not nonzero:
            return v


def rand_subspace(rng: random.Random, d: int, k: int):
    return span([rand_vector(rng, d) for _ in range(k)], d)


def inverse(m):
    d = len(m)
    aug = [list(m[i]) + list(identity_matrix(d)[i]) for i in range(d)]
    red = rref(aug, 2 * d)
    assert len(red) == d and all(red[i][i] == 1 for i in range(d)), "singular"
    return tuple(tuple(row[d:]) for row in red)


def cayley_unitary(rng: random.Random, d: int) -> ScaledOperator:
    """(I - iH)(I + iH)^-1 for a random Hermitian H: unitary with rational entries."""
    h = [[None] * d for _ in range(d)]
    for i in range(d):
        h[i][i] = gr(rand_rational(rng, 2, 2))
        for j in range(i + 1, d):
            z = rand_gr(rng, 2, 2)
            h[i][j], h[j][i] = z, z.conj()
    ih = [[I * x for x in row] for row in h]
    eye = identity_matrix(d)
    minus = [[eye[i][j] - ih[i][j] for j in range(d)] for i in range(d)]
    plus = [[eye[i][j] + ih[i][j] for j in range(d)] for i in range(d)]
    return validate_scaled_unitary(matmul(minus, inverse(plus)), 1)


def perm_phase_unitary(rng: random.Random, d: int, phases=PHASES) -> ScaledOperator:
    perm = list(range(d))
    rng.shuffle(perm)
    rows = [[0] * d for _ in range(d)]
    for i in range(d):
        rows[perm[i]][i] = rng.choice(phases)
    return op(rows)


def rand_unitary(rng: random.Random, d: int) -> ScaledOperator:
    return cayley_unitary(rng, d) if rng.random() < 0.4 else perm_phase_unitary(rng, d)


def conjugate(q: ScaledOperator, t: ScaledOperator) -> ScaledOperator:
    """Q T Q^dagger for a scale-1 unitary Q."""
    m = matmul(q.matrix, matmul(t.matrix, adjoint(q.matrix)))
    return validate_scaled_unitary(m, t.scale)


def rand_atom_space(rng: random.Random, d: int):
    """Coordinate subspaces most of the time, random spans otherwise."""
    if rng.random() < 0.6:
        k = rng.randint(1, d - 1) if d > 1 else 1
        idx = rng.sample(range(d), k)
        return span([e(d, i) for i in idx], d)
    return rand_subspace(rng, d, rng.randint(1, max(1, d - 1)))


def rand_automaton(rng: random.Random, d: int, n_actions: int, initial=None) -> QuantumAutomaton:
    names = "abcd"[:n_actions]
    ops = {n: rand_unitary(rng, d) for n in names}
    if initial is None:
        initial = span([e(d, 0)], d) if rng.random() < 0.5 else span([rand_vector(rng, d)], d)
    return QuantumAutomaton(d, ops, initial)


def invariant_subspaces(t_eigs, q, rng, count=20, max_n=12):
    """(n, K) pairs with K spanned by eigenvectors of T^n for T = Q D Q^dagger."""
    d = len(t_eigs)
    cols = [tuple(q.matrix[i][j] for i in range(d)) for j in range(d)]
    out = []
    while len(out) < count:
        n = rng.randint(1, max_n)
        groups = {}
        for j, lam in enumerate(t_eigs):
            groups.setdefault(gr(lam) ** n, []).append(j)
        vectors = []
        for members in groups.values():
            if rng.random() < 0.5:
                coeffs = {j: gr(rng.randint(-3, 3)) for j in members}
                v = tuple(sum((coeffs[j] * cols[j][i] for j in members), gr(0)) for i in range(d))
                if any(v):
                    vectors.append(v)
        out.append((n, span(vectors, d)))
    return out
