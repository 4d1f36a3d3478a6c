"""Places of Q, Hilbert symbols and the conic a v^2 + b w^2 = u^2."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional

import numpy as np

from .arith import factor, is_squarefree, legendre, valuation
from .squares import INT64_SAFE, exact_sqrt


@dataclass(frozen=True)
class Place:
    """A place of Q: ``p=None`` is the real place, otherwise a prime."""

    p: Optional[int] = None

    def __post_init__(self):
        if self.p is not None and (self.p < 2 or factor(self.p) != {self.p: 1}):
            raise ValueError(f"{self.p} is not prime")

    @property
    def kind(self) -> str:
        return "real" if self.p is None else "prime"

    @property
    def is_real(self) -> bool:
        return self.p is None

    def sort_key(self):
        return (0, 0) if self.p is None else (1, self.p)

    def __lt__(self, other: "Place") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return "inf" if self.p is None else str(self.p)

    @classmethod
    def parse(cls, text: str) -> "Place":
        t = str(text).strip().lower()
        if t in ("inf", "infinity", "real", "oo"):
            return cls(None)
        try:
            return cls(int(t))
        except ValueError as exc:
            raise ValueError(f"invalid place {text!r}") from exc


REAL = Place(None)


def relevant_places(values: Iterable[int]) -> list[Place]:
    """Places where a Hilbert symbol among ``values`` can be -1: the real place, 2, and prime divisors."""
    primes = {2}
    for v in values:
        v = int(v)
        if not is_squarefree(v):
            raise ValueError(f"{v} is not a nonzero squarefree integer; reduce it first")
        primes.update(factor(v))
    return [REAL] + [Place(p) for p in sorted(primes)]


def _eps(u: int) -> int:
    return ((u - 1) // 2) % 2


def _omega(u: int) -> int:
    return ((u * u - 1) // 8) % 2


def hilbert_symbol(a: int, b: int, place: Place) -> int:
    """Hilbert symbol (a, b) at ``place`` for nonzero integers a, b."""
    a, b = int(a), int(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    if place.is_real:
        return -1 if (a < 0 and b < 0) else 1
    p = place.p
    alpha, beta = valuation(a, p), valuation(b, p)
    u, v = a // p**alpha, b // p**beta
    if p == 2:
        e = _eps(u) * _eps(v) + alpha * _omega(v) + beta * _omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta % 2:
        sign *= legendre(u, p)
    if alpha % 2:
        sign *= legendre(v, p)
    return sign


@lru_cache(maxsize=None)
def _square_roots_mod(p: int, k: int) -> dict[int, tuple[int, ...]]:
    m = p**k
    roots: dict[int, list[int]] = {}
    for z in range(m):
        roots.setdefault(z * z % m, []).append(z)
    return {s: tuple(zs) for s, zs in roots.items()}


def _val_mod(n: int, p: int, k: int) -> int:
    """Valuation of n read modulo p^k (k when n vanishes mod p^k)."""
    n %= p**k
    if n == 0:
        return k
    return valuation(n, p)


def _oracle_precision(p: int) -> int:
    return 6 if p == 2 else 3


def hilbert_symbol_oracle(a: int, b: int, place: Place) -> int:
    """Brute-force Hilbert symbol for squarefree a, b, independent of the closed formulas.

    At a prime, searches zeros of a x^2 + b y^2 - z^2 modulo p^k with x or y
    normalized to 1, accepting a zero only when the multivariate Hensel bound
    f = 0 mod p^(2m+1) holds, m being the least valuation of the gradient.
    For squarefree inputs m <= 1 (odd p) or m <= 2 (p = 2), so k = 3 resp. 6
    makes the search complete as well as sound.
    """
    if not (is_squarefree(a) and is_squarefree(b)):
        raise ValueError("oracle requires squarefree arguments")
    if place.is_real:
        # isotropic over R iff the form takes a nonnegative value somewhere off the z-axis
        return 1 if any(a * x * x + b * y * y >= 0 for x, y in ((1, 0), (0, 1), (1, 1))) else -1
    p = place.p
    k = _oracle_precision(p)
    m = p**k
    roots = _square_roots_mod(p, k)
    for ca, cb in ((a, b), (b, a)):
        # x = 1, y free: z^2 = ca + cb*y^2
        g0 = _val_mod(2 * ca, p, k)
        for y in range(m):
            zs = roots.get((ca + cb * y * y) % m)
            if not zs:
                continue
            gy = _val_mod(2 * cb * y, p, k)
            for z in zs:
                grad = min(g0, gy, _val_mod(2 * z, p, k))
                if 2 * grad + 1 <= k:
                    return 1
    return -1


@dataclass
class SymbolTable:
    """Local Hilbert symbols of a fixed pair over its supporting places."""

    a: int
    b: int
    entries: dict[Place, int] = field(default_factory=dict)

    @property
    def places(self) -> list[Place]:
        return sorted(self.entries)

    def witnesses(self) -> list[Place]:
        return [v for v in self.places if self.entries[v] == -1]

    def product(self) -> int:
        out = 1
        for s in self.entries.values():
            out *= s
        return out

    def to_dict(self) -> dict[str, int]:
        return {str(v): self.entries[v] for v in self.places}


def symbol_table(a: int, b: int) -> SymbolTable:
    table = SymbolTable(a, b)
    for v in relevant_places([a, b]):
        table.entries[v] = hilbert_symbol(a, b, v)
    return table


def cup_vanishes_globally(a: int, b: int) -> tuple[bool, SymbolTable]:
    """Whether kappa(a) cup kappa(b) = 0 over Q, with the symbol table as witness."""
    table = symbol_table(a, b)
    return not table.witnesses(), table


def conic_point(a: int, b: int, height: int) -> Optional[tuple[int, int, int]]:
    """Smallest primitive (u, v, w) with a v^2 + b w^2 = u^2 and all entries at most ``height``.

    Candidates are scanned by max(v, w) first, then lexicographically in (v, w);
    v, w, u are returned nonnegative.  Returns None when the box holds no point,
    which says nothing about solvability.
    """
    a, b = int(a), int(b)
    if a == 0 or b == 0:
        raise ValueError("conic coefficients must be nonzero")
    for h in range(1, height + 1):
        vs = np.concatenate([np.arange(h + 1, dtype=np.int64), np.full(h, h, dtype=np.int64)])
        ws = np.concatenate([np.full(h + 1, h, dtype=np.int64), np.arange(h, dtype=np.int64)])
        order = np.lexsort((ws, vs))
        vs, ws = vs[order], ws[order]
        if (abs(a) + abs(b)) * h * h < INT64_SAFE:
            vals = a * vs * vs + b * ws * ws
        else:
            vals = a * vs.astype(object) ** 2 + b * ws.astype(object) ** 2
        ok, roots = exact_sqrt(vals)
        for i in np.flatnonzero(ok):
            u, v, w = int(roots[i]), int(vs[i]), int(ws[i])
            if u <= height and gcd(gcd(u, v), w) == 1:
                return u, v, w
    return None
