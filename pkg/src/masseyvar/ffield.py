"""Finite fields F_p and F_{p^2} (odd p) and exhaustive checks of the norm form over them."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Union

import numpy as np
from sympy import isprime

from .masseyq import norm_form_eval

MAX_ENUMERATION = 300_000


class FieldSizeError(ValueError):
    pass


def _least_nonsquare(p: int) -> int:
    squares = {x * x % p for x in range(1, p)}
    return next(d for d in range(2, p) if d not in squares)


@dataclass(frozen=True)
class FqField:
    """F_q for q = p or p^2; F_{p^2} is F_p[t]/(t^2 - d) with d the least nonsquare mod p.

    Elements are indexed 0..q-1, index c0 + p*c1 standing for c0 + c1*t.
    """

    p: int
    k: int = 1

    def __post_init__(self):
        if not isprime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p == 2:
            raise ValueError("characteristic 2 is not supported")
        if self.k not in (1, 2):
            raise ValueError("only prime fields and quadratic extensions are supported")

    @classmethod
    def of_order(cls, q: int) -> "FqField":
        for p in range(2, q + 1):
            if q % p == 0:
                break
        else:
            raise ValueError(f"{q} is not a prime power")
        k, m = 0, q
        while m % p == 0:
            m //= p
            k += 1
        if m != 1:
            raise ValueError(f"{q} is not a prime power")
        return cls(p, k)

    @property
    def q(self) -> int:
        return self.p**self.k

    @cached_property
    def modulus_constant(self) -> int:
        """d in t^2 - d (0 for prime fields)."""
        return _least_nonsquare(self.p) if self.k == 2 else 0

    @cached_property
    def _coeffs(self) -> np.ndarray:
        i = np.arange(self.q)
        return np.stack([i % self.p, i // self.p])

    @cached_property
    def add_table(self) -> np.ndarray:
        c0, c1 = self._coeffs
        p = self.p
        return ((c0[:, None] + c0[None, :]) % p) + p * ((c1[:, None] + c1[None, :]) % p)

    @cached_property
    def neg_table(self) -> np.ndarray:
        c0, c1 = self._coeffs
        return (-c0 % self.p) + self.p * (-c1 % self.p)

    @cached_property
    def mul_table(self) -> np.ndarray:
        c0, c1 = self._coeffs
        p, d = self.p, self.modulus_constant
        r0 = c0[:, None] * c0[None, :] + d * c1[:, None] * c1[None, :]
        r1 = c0[:, None] * c1[None, :] + c1[:, None] * c0[None, :]
        return (r0 % p) + p * (r1 % p)

    @cached_property
    def inv_table(self) -> np.ndarray:
        inv = np.zeros(self.q, dtype=np.int64)
        rows, cols = np.nonzero(self.mul_table == 1)
        inv[rows] = cols
        return inv

    @cached_property
    def square_flags(self) -> np.ndarray:
        """square_flags[v]: v is the square of a nonzero element."""
        flags = np.zeros(self.q, dtype=bool)
        flags[np.diagonal(self.mul_table)[1:]] = True
        return flags

    @cached_property
    def sqrt_count(self) -> np.ndarray:
        """Number of nonzero x with x^2 = v, per index v."""
        return np.bincount(np.diagonal(self.mul_table)[1:], minlength=self.q)

    def __call__(self, value) -> "FqElement":
        if isinstance(value, FqElement):
            return value
        if isinstance(value, tuple):
            c0, c1 = value
            return FqElement(self, (c0 % self.p) + self.p * (c1 % self.p))
        return FqElement(self, int(value) % self.p)

    def elements(self, nonzero: bool = False) -> list["FqElement"]:
        return [FqElement(self, i) for i in range(1 if nonzero else 0, self.q)]

    def all_vectors(self, n: int) -> tuple["FqElement", ...]:
        """The n coordinate arrays of every vector of F_q^n."""
        size = self.q**n
        if size > MAX_ENUMERATION:
            raise FieldSizeError(f"q^{n} = {size} exceeds the enumeration cap {MAX_ENUMERATION}")
        grid = np.indices((self.q,) * n).reshape(n, -1)
        return tuple(FqElement(self, g) for g in grid)


Index = Union[int, np.ndarray]


@dataclass(frozen=True, eq=False)
class FqElement:
    """An element of F_q, or an array of them when ``idx`` is an ndarray."""

    field: FqField
    idx: Index

    def _coerce(self, other) -> Index:
        if isinstance(other, FqElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.idx
        return int(other) % self.field.p

    def __add__(self, other):
        return FqElement(self.field, self.field.add_table[self.idx, self._coerce(other)])

    __radd__ = __add__

    def __neg__(self):
        return FqElement(self.field, self.field.neg_table[self.idx])

    def __sub__(self, other):
        return self + (-FqElement(self.field, self._coerce(other)))

    def __rsub__(self, other):
        return FqElement(self.field, self._coerce(other)) - self

    def __mul__(self, other):
        return FqElement(self.field, self.field.mul_table[self.idx, self._coerce(other)])

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if np.any(np.asarray(o) == 0):
            raise ZeroDivisionError("division by zero in F_q")
        return self * FqElement(self.field, self.field.inv_table[o])

    def __eq__(self, other):
        if isinstance(other, (FqElement, int)):
            res = np.asarray(self.idx) == np.asarray(self._coerce(other))
            return bool(res) if res.ndim == 0 else res
        return NotImplemented

    def __hash__(self):
        return hash((self.field, int(self.idx)))

    def __int__(self):
        return int(self.idx)

    def is_zero(self):
        return np.asarray(self.idx) == 0

    def is_square(self) -> bool:
        """Nonzero square."""
        return bool(self.field.square_flags[self.idx])

    def __repr__(self):
        if isinstance(self.idx, np.ndarray):
            return f"FqElement(q={self.field.q}, array of {self.idx.size})"
        c0, c1 = int(self.idx) % self.field.p, int(self.idx) // self.field.p
        return f"{c0}" if self.field.k == 1 else f"{c0}+{c1}t"


def _check_units(*xs: FqElement):
    for x in xs:
        if x.is_zero():
            raise ValueError("arguments must be nonzero field elements")


def _norm_values(F: FqField, a: FqElement, c: FqElement) -> np.ndarray:
    ys = F.all_vectors(4)
    return norm_form_eval(ys, a, c).idx[1:]  # index 0 is the zero vector


def norm_image_direct(F: FqField, a: FqElement, c: FqElement) -> set[FqElement]:
    """Nonzero values of the quartic norm form on F_q^4 - {0}, by enumeration."""
    a, c = F(a), F(c)
    _check_units(a, c)
    vals = np.unique(_norm_values(F, a, c))
    return {FqElement(F, int(v)) for v in vals if v != 0}


def residue_field_degree(F: FqField, a: FqElement, c: FqElement) -> int:
    """[F(sqrt a, sqrt c) : F]; never 4 over a finite field."""
    a, c = F(a), F(c)
    return 1 if (a.is_square() and c.is_square()) else 2


def norm_image_via_residue_field(F: FqField, a: FqElement, c: FqElement) -> set[FqElement]:
    """Image of the field norm of F(sqrt a, sqrt c)/F on nonzero elements."""
    a, c = F(a), F(c)
    _check_units(a, c)
    if residue_field_degree(F, a, c) == 1:
        return set(F.elements(nonzero=True))
    d = c if a.is_square() else a
    u, v = F.all_vectors(2)
    vals = (u * u - d * v * v).idx[1:]
    return {FqElement(F, int(x)) for x in np.unique(vals) if x != 0}


def _point_count(F: FqField, norms: np.ndarray, b: FqElement) -> int:
    quot = F.mul_table[norms, F.inv_table[b.idx]]
    return int(F.sqrt_count[quot].sum())


def x_has_point(F: FqField, a: FqElement, b: FqElement, c: FqElement) -> tuple[bool, int]:
    """Whether b x^2 = N(y) has a solution with x != 0, and the number of such (x, y)."""
    a, b, c = F(a), F(b), F(c)
    _check_units(a, b, c)
    n = _point_count(F, _norm_values(F, a, c), b)
    return n > 0, n


@dataclass
class SweepReport:
    q: int
    pairs_checked: int = 0
    triples_checked: int = 0
    pair_failures: list[tuple[int, int]] = field(default_factory=list)
    triple_failures: list[tuple[int, int, int]] = field(default_factory=list)
    symmetry_failures: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not (self.pair_failures or self.triple_failures or self.symmetry_failures)

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "pairs_checked": self.pairs_checked,
            "triples_checked": self.triples_checked,
            "norm_image_equal": not self.pair_failures,
            "all_triples_have_points": not self.triple_failures,
            "reversal_symmetric": not self.symmetry_failures,
            "pair_failures": [list(x) for x in self.pair_failures],
            "triple_failures": [list(x) for x in self.triple_failures],
            "symmetry_failures": [list(x) for x in self.symmetry_failures],
            "passed": self.passed,
        }


def sweep(F: FqField) -> SweepReport:
    """Compare both norm images for every (a, c) and check X(a, b, c) has a point for every triple."""
    report = SweepReport(F.q)
    units = F.elements(nonzero=True)
    norms = {}
    for a, c in product(units, repeat=2):
        norms[int(a), int(c)] = _norm_values(F, a, c)
        report.pairs_checked += 1
        if norm_image_direct(F, a, c) != norm_image_via_residue_field(F, a, c):
            report.pair_failures.append((int(a), int(c)))
    counts = {}
    for a, b, c in product(units, repeat=3):
        key = (int(a), int(b), int(c))
        counts[key] = _point_count(F, norms[key[0], key[2]], b)
        report.triples_checked += 1
        if counts[key] == 0:
            report.triple_failures.append(key)
    for (a, b, c), n in counts.items():
        if (counts[c, b, a] > 0) != (n > 0):
            report.symmetry_failures.append((a, b, c))
    return report
