"""Exact scalars and univariate polynomials over Q(i).

Rationals are ``fractions.Fraction`` (canonical on construction).  A
``GaussianRational`` pairs two of them.  ``Poly`` stores coefficients
lowest degree first with a nonzero leading (last) coefficient; the zero
polynomial has no coefficients.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Rational = Fraction

_Q0 = Fraction(0)
_Q1 = Fraction(1)


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``.  Floats are rejected."""
    if isinstance(text, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise TypeError(f"cannot read a rational from {text!r}")
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None
    if q <= 0:
        raise ValueError(f"denominator must be positive in {text!r}")
    return Fraction(p, q)


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class GaussianRational:
    """Complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else parse_rational(re)
        self.im = im if type(im) is Fraction else parse_rational(im)

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        z = object.__new__(cls)
        z.re = re
        z.im = im
        return z

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return cls._make(Fraction(x), _Q0)
        if isinstance(x, str):
            return cls._make(parse_rational(x), _Q0)
        if isinstance(x, (list, tuple)) and len(x) == 2:
            return cls._make(parse_rational(x[0]), parse_rational(x[1]))
        raise TypeError(f"cannot read a Gaussian rational from {x!r}")

    # arithmetic

    def __add__(self, other):
        if type(other) is not GaussianRational:
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            return GaussianRational._make(self.re + other, self.im)
        return GaussianRational._make(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not GaussianRational:
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            return GaussianRational._make(self.re - other, self.im)
        return GaussianRational._make(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return GaussianRational._make(-self.re, -self.im)

    def __mul__(self, other):
        if type(other) is not GaussianRational:
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            return GaussianRational._make(self.re * other, self.im * other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b:
            if not d:
                return GaussianRational._make(a * c, _Q0)
            return GaussianRational._make(a * c, a * d)
        if not d:
            return GaussianRational._make(a * c, b * c)
        return GaussianRational._make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("Gaussian rational division by zero")
        return GaussianRational._make(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if type(other) is not GaussianRational:
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            if not other:
                raise ZeroDivisionError("Gaussian rational division by zero")
            return GaussianRational._make(self.re / other, self.im / other)
        if not other.im:
            if not other.re:
                raise ZeroDivisionError("Gaussian rational division by zero")
            return GaussianRational._make(self.re / other.re, self.im / other.re)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "GaussianRational":
        return GaussianRational._make(self.re, -self.im)

    def norm(self) -> Fraction:
        """|z|^2."""
        return self.re * self.re + self.im * self.im

    # comparison / hashing

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if type(other) is GaussianRational:
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def sort_key(self):
        return (self.re, self.im)

    def to_json(self) -> list:
        return [format_rational(self.re), format_rational(self.im)]

    def __repr__(self):
        return f"GaussianRational({format_rational(self.re)!r}, {format_rational(self.im)!r})"

    def __str__(self):
        if not self.im:
            return format_rational(self.re)
        im = format_rational(self.im)
        if not self.re:
            return f"{im}i"
        sign = "+" if self.im > 0 else ""
        return f"{format_rational(self.re)}{sign}{im}i"


ZERO = GaussianRational._make(_Q0, _Q0)
ONE = GaussianRational._make(_Q1, _Q0)
I = GaussianRational._make(_Q0, _Q1)

GR = GaussianRational


def gr(x) -> GaussianRational:
    return GaussianRational.coerce(x)


class Poly:
    """Univariate polynomial over Q(i).

    ``coeffs[k]`` is the coefficient of ``x**k``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [gr(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Poly":
        p = cls((1,))
        for r in roots:
            p = p * cls((-gr(r), 1))
        return p

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> GaussianRational:
        return self.coeffs[-1] if self.coeffs else ZERO

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "Poly":
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no monic form")
        inv = self.coeffs[-1].inverse()
        return Poly(c * inv for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Poly(out)

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = gr(other)
            return Poly(a * c for a in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = out[i + j] + ai * bj
        return Poly(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dg = other.degree
        if len(rem) <= dg:
            return Poly(), Poly(rem)
        inv = other.coeffs[-1].inverse()
        quot = [ZERO] * (len(rem) - dg)
        for k in range(len(rem) - 1, dg - 1, -1):
            c = rem[k]
            if not c:
                continue
            q = c * inv
            quot[k - dg] = q
            for j, oj in enumerate(other.coeffs):
                if oj:
                    rem[k - dg + j] = rem[k - dg + j] - q * oj
        return Poly(quot), Poly(rem[:dg])

    def __call__(self, z):
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def eval_matrix(self, m: Sequence[Sequence[GaussianRational]]):
        """Horner evaluation at a square matrix."""
        n = len(m)
        acc = [[ZERO] * n for _ in range(n)]
        for c in reversed(self.coeffs):
            acc = _matmul(acc, m)
            for i in range(n):
                acc[i][i] = acc[i][i] + c
        return acc

    def scale_argument(self, s) -> "Poly":
        """Return ``y -> self(s*y)``."""
        s = gr(s)
        out = []
        power = ONE
        for c in self.coeffs:
            out.append(c * power)
            power = power * s
        return Poly(out)

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if c == 1 and mono:
                terms.append(mono)
            elif c == -1 and mono:
                terms.append(f"-{mono}")
            else:
                cs = str(c)
                if c.im and c.re:
                    cs = f"({cs})"
                terms.append(cs + (f"*{mono}" if mono else ""))
        return " + ".join(terms).replace("+ -", "- ")


def div_exact(f: Poly, g: Poly) -> Poly:
    """Quotient ``f / g``; raises ``ValueError`` when ``g`` does not divide ``f``."""
    q, r = divmod(f, g)
    if not r.is_zero():
        raise ValueError("polynomial division is not exact")
    return q


def divides_exactly(g: Poly, f: Poly) -> bool:
    """True iff ``f == g*q`` for some polynomial ``q`` over Q(i)."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    return divmod(f, g)[1].is_zero()


def _int_divexact(num: list, den: list) -> list:
    # integer lists, lowest degree first, den monic
    num = list(num)
    dg = len(den) - 1
    quot = [0] * (len(num) - dg)
    for k in range(len(num) - 1, dg - 1, -1):
        q = num[k]
        if q:
            quot[k - dg] = q
            for j, dj in enumerate(den):
                num[k - dg + j] -= q * dj
    assert not any(num[:dg]), "cyclotomic division left a remainder"
    return quot


def _int_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


@lru_cache(maxsize=None)
def _cyclotomic_int(n: int) -> tuple:
    num = [-1] + [0] * (n - 1) + [1]
    den = [1]
    for d in range(1, n):
        if n % d == 0:
            den = _int_mul(den, list(_cyclotomic_int(d)))
    return tuple(_int_divexact(num, den))


def cyclotomic(n: int) -> Poly:
    """n-th cyclotomic polynomial, via (x^n - 1) / prod_{d|n, d<n} Phi_d.  Memoized."""
    if not isinstance(n, int) or n < 1:
        raise ValueError("cyclotomic index must be a positive integer")
    return Poly(_cyclotomic_int(n))


def totients(limit: int) -> list:
    """Euler totient of 0..limit by sieve (entry 0 unused)."""
    phi = list(range(limit + 1))
    for k in range(2, limit + 1):
        if phi[k] == k:
            for m in range(k, limit + 1, k):
                phi[m] -= phi[m] // k
    return phi


def lcm(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def _matmul(a, b):
    n, m, k = len(a), len(b[0]), len(b)
    out = []
    for i in range(n):
        row = [ZERO] * m
        ai = a[i]
        for t in range(k):
            x = ai[t]
            if not x:
                continue
            bt = b[t]
            for j in range(m):
                y = bt[j]
                if y:
                    row[j] = row[j] + x * y
        out.append(row)
    return out


def char_poly(m: Sequence[Sequence]) -> Poly:
    """det(xI - M) by Hessenberg reduction followed by the Hessenberg recurrence."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("characteristic polynomial needs a square matrix")
    h = [[gr(x) for x in row] for row in m]
    for col in range(n - 2):
        piv = col + 1
        r = next((i for i in range(piv, n) if h[i][col]), None)
        if r is None:
            continue
        if r != piv:
            h[r], h[piv] = h[piv], h[r]
            for row in h:
                row[r], row[piv] = row[piv], row[r]
        t = h[piv][col]
        for i in range(piv + 1, n):
            u = h[i][col] / t
            if not u:
                continue
            hi, hp = h[i], h[piv]
            for j in range(n):
                if hp[j]:
                    hi[j] = hi[j] - u * hp[j]
            for row in h:
                if row[i]:
                    row[piv] = row[piv] + u * row[i]

    polys = [Poly((1,))]
    x = Poly.x()
    for k in range(1, n + 1):
        p = (x - Poly.constant(h[k - 1][k - 1])) * polys[k - 1]
        t = ONE
        for i in range(1, k):
            t = t * h[k - i][k - i - 1]
            c = t * h[k - i - 1][k - 1]
            if c:
                p = p - polys[k - i - 1] * c
        polys.append(p)
    return polys[n]
