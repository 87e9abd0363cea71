"""Period of a scaled unitary.

Every ratio ``lambda/mu`` of eigenvalues of ``U = N/sqrt(s)`` is a root of
``h(s*y)`` where ``h`` is the characteristic polynomial of ``N (x) N^dagger``.
A ratio that is a primitive n-th root of unity forces ``Phi_n`` to divide
that polynomial, so the lcm of all such n is a period: any subspace fixed by
some power of ``U`` is already fixed by ``U**p``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import Poly, char_poly, cyclotomic, divides_exactly, lcm, totients
from .linalg import ScaledOperator, kron


@dataclass(frozen=True)
class PeriodResult:
    p: int
    witnesses: tuple  # (n, Phi_n) pairs, n ascending

    @property
    def orders(self) -> tuple:
        return tuple(n for n, _ in self.witnesses)


def quotient_polynomial(t: ScaledOperator) -> Poly:
    """Monic polynomial of degree d^2 whose roots are the eigenvalue ratios of ``t``."""
    h = char_poly(kron(t.matrix, t.dagger().matrix))
    return h.scale_argument(t.scale).monic()


def candidate_orders(d: int) -> list:
    """All n with phi(n) <= d^2; phi(n) >= sqrt(n/2) keeps them below 2 d^4."""
    bound = 2 * d ** 4
    phi = totients(bound)
    return [n for n in range(1, bound + 1) if phi[n] <= d * d]


def period(t: ScaledOperator) -> PeriodResult:
    g = quotient_polynomial(t)
    witnesses = []
    for n in candidate_orders(t.ambient_dim):
        phi_n = cyclotomic(n)
        if phi_n.degree <= g.degree and divides_exactly(phi_n, g):
            witnesses.append((n, phi_n))
    assert witnesses and witnesses[0][0] == 1, "ratio 1 must always be present"
    return PeriodResult(lcm(n for n, _ in witnesses), tuple(witnesses))
