"""Exact integer and rational helpers: factoring, square classes, Legendre symbols."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from numbers import Rational
from typing import Optional, Union

from sympy import isprime
from sympy.ntheory import factorint, pollard_pm1, pollard_rho

TRIAL_DIVISION_BOUND = 10**6
RHO_ATTEMPTS = 12
RHO_MAX_STEPS = 1 << 18

RationalLike = Union[int, Fraction, str]


class UnfactoredError(ArithmeticError):
    """Raised when an integer cannot be fully factored within the search budget."""


def as_fraction(v: RationalLike) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(v, (int, Rational, str)):
        return Fraction(v)
    raise TypeError(f"cannot interpret {v!r} as an exact rational")


def _split(n: int) -> int:
    for seed in range(RHO_ATTEMPTS):
        d = pollard_rho(n, s=2 + seed, a=1 + seed, retries=0, max_steps=RHO_MAX_STEPS, seed=seed)
        if d and 1 < d < n:
            return int(d)
    d = pollard_pm1(n, B=10**5, seed=0)
    if d and 1 < d < n:
        return int(d)
    raise UnfactoredError(f"could not split composite cofactor {n}")


def factor(n: int) -> dict[int, int]:
    """Prime factorization of |n| for n != 0.

    Trial division up to ``TRIAL_DIVISION_BOUND`` followed by Pollard rho on
    whatever composite cofactor remains.  Never returns a partial answer: a
    cofactor that resists splitting raises :class:`UnfactoredError`.
    """
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    stack = []
    for p, e in factorint(n, limit=TRIAL_DIVISION_BOUND).items():
        p, e = int(p), int(e)
        if p <= TRIAL_DIVISION_BOUND or isprime(p):
            out[p] = out.get(p, 0) + e
        else:
            stack.extend([p] * e)
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if isprime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = isqrt(m)
        if r * r == m:
            stack.extend([r, r])
            continue
        d = _split(m)
        stack.extend([d, m // d])
    return dict(sorted(out.items()))


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return (s, r) with n = s * r**2 and s squarefree carrying the sign of n."""
    if n == 0:
        raise ValueError("zero has no square class")
    s, r = (-1 if n < 0 else 1), 1
    for p, e in factor(n).items():
        if e % 2:
            s *= p
        r *= p ** (e // 2)
    return s, r


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(e == 1 for e in factor(n).values())


@dataclass(frozen=True)
class SquareClass:
    """``rep`` is a squarefree integer and ``rep * cofactor`` recovers the input."""

    rep: int
    cofactor: Fraction

    @property
    def value(self) -> Fraction:
        return self.rep * self.cofactor


def square_class(v: RationalLike) -> SquareClass:
    """Reduce a nonzero rational to its squarefree representative.

    >>> square_class(18)
    SquareClass(rep=2, cofactor=Fraction(9, 1))
    >>> square_class(Fraction(-4, 9)).rep
    -1
    """
    v = as_fraction(v)
    if v == 0:
        raise ValueError("zero has no square class")
    # v = n/d = n*d / d^2
    s, r = squarefree_decomposition(v.numerator * v.denominator)
    return SquareClass(s, Fraction(r * r, v.denominator**2))


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p, via Euler's criterion."""
    if p < 3 or p % 2 == 0 or not isprime(p):
        raise ValueError(f"legendre symbol needs an odd prime, got {p}")
    t = pow(a % p, (p - 1) // 2, p)
    return -1 if t == p - 1 else t


def is_perfect_square(v: RationalLike) -> Optional[Fraction]:
    """Nonnegative rational square root of v, or None if v is not a square."""
    v = as_fraction(v)
    if v < 0:
        return None
    n, d = v.numerator, v.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_smooth(n: int, primes) -> bool:
    """True if every prime factor of the nonzero integer n lies in ``primes``."""
    n = abs(n)
    for p in primes:
        while n % p == 0:
            n //= p
    return n == 1
