"""Deciding and certifying triple Massey products over Q through the variety X(a, b, c).

X(a, b, c) is the hypersurface b x^2 = N(y) in G_m x A^4, N being the norm
form of Q[sqrt a, sqrt c].  Local solvability at a place reduces to the two
Hilbert symbols (a, b) and (b, c); over Q local solvability everywhere gives a
rational point, so "defined" and "vanishes" coincide.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Optional, Sequence

import numpy as np
from sympy import isprime

from .arith import (
    RationalLike,
    is_perfect_square,
    is_smooth,
    is_squarefree,
    square_class,
)
from .places import Place, hilbert_symbol, relevant_places
from .squares import INT64_SAFE, exact_sqrt

WORKERS_ENV = "MASSEY_WORKERS"


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "").strip()
    if raw:
        n = int(raw)
        if n < 1:
            raise ValueError(f"{WORKERS_ENV} must be a positive integer")
        return n
    return os.cpu_count() or 1


@dataclass(frozen=True)
class SquareClassTriple:
    a: int
    b: int
    c: int

    def __post_init__(self):
        for v in (self.a, self.b, self.c):
            if not is_squarefree(v):
                raise ValueError(f"{v} is not a nonzero squarefree integer")

    @classmethod
    def from_values(cls, a: RationalLike, b: RationalLike, c: RationalLike) -> "SquareClassTriple":
        return cls(square_class(a).rep, square_class(b).rep, square_class(c).rep)

    def reversed(self) -> "SquareClassTriple":
        return SquareClassTriple(self.c, self.b, self.a)

    def as_tuple(self) -> tuple[int, int, int]:
        return self.a, self.b, self.c


def norm_form_eval(y: Sequence, a, c):
    """(y1^2 - a y2^2 + c y3^2 - a c y4^2)^2 - c (2 y1 y3 - 2 a y2 y4)^2 over any commutative ring."""
    y1, y2, y3, y4 = y
    p = y1 * y1 - a * y2 * y2 + c * y3 * y3 - a * c * y4 * y4
    q = 2 * y1 * y3 - 2 * a * y2 * y4
    return p * p - c * q * q


@dataclass(frozen=True)
class NormFormPoint:
    x: Fraction
    y: tuple[Fraction, Fraction, Fraction, Fraction]

    def satisfies(self, t: SquareClassTriple) -> bool:
        n = norm_form_eval(self.y, t.a, t.c)
        return self.x != 0 and n != 0 and t.b * self.x * self.x == n

    def to_dict(self) -> dict:
        return {"x": str(self.x), "y": [str(v) for v in self.y]}


@dataclass(frozen=True)
class LocalVerdict:
    place: Place
    ab: int
    bc: int

    @property
    def solvable(self) -> bool:
        return self.ab == 1 and self.bc == 1

    def to_dict(self) -> dict:
        return {"place": str(self.place), "ab": self.ab, "bc": self.bc, "solvable": self.solvable}


@dataclass
class MasseyVerdict:
    triple: SquareClassTriple
    defined: bool
    vanishes: bool
    obstruction_witnesses: list[tuple[Place, str, int]]
    local_table: list[LocalVerdict]
    certificate: Optional[NormFormPoint] = None
    search: Optional["SearchOutcome"] = None

    def __post_init__(self):
        assert not self.vanishes or self.defined
        assert self.defined == (not self.obstruction_witnesses)
        assert self.certificate is None or (self.vanishes and self.certificate.satisfies(self.triple))

    def core(self) -> tuple:
        """Fields that depend only on the square classes, for comparisons."""
        return (
            self.defined,
            self.vanishes,
            tuple((str(v), pair, s) for v, pair, s in self.obstruction_witnesses),
            tuple((str(lv.place), lv.ab, lv.bc) for lv in self.local_table),
        )

    def to_dict(self) -> dict:
        return {
            "defined": self.defined,
            "vanishes": self.vanishes,
            "obstructions": [
                {"place": str(v), "pair": pair, "symbol": s} for v, pair, s in self.obstruction_witnesses
            ],
            "local": [lv.to_dict() for lv in self.local_table],
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
            "search": None if self.search is None else self.search.to_dict(),
        }


def massey_defined_local(t: SquareClassTriple, place: Place) -> LocalVerdict:
    return LocalVerdict(place, hilbert_symbol(t.a, t.b, place), hilbert_symbol(t.b, t.c, place))


def decide_massey_q(
    t: SquareClassTriple,
    height: Optional[int] = None,
    *,
    max_points: Optional[int] = None,
    time_budget: Optional[float] = None,
    workers: Optional[int] = None,
) -> MasseyVerdict:
    """Decide whether <kappa(a), kappa(b), kappa(c)> is defined and contains 0 over Q.

    The decision uses Hilbert symbols only.  With ``height`` set, a defined
    product additionally gets a bounded certificate search.
    """
    table = [massey_defined_local(t, v) for v in relevant_places(t.as_tuple())]
    witnesses = []
    for lv in table:
        if lv.ab == -1:
            witnesses.append((lv.place, "ab", -1))
        if lv.bc == -1:
            witnesses.append((lv.place, "bc", -1))
    defined = not witnesses
    outcome = None
    if defined and height is not None:
        outcome = search_certificate(t, height, max_points=max_points, time_budget=time_budget, workers=workers)
    return MasseyVerdict(
        triple=t,
        defined=defined,
        vanishes=defined,
        obstruction_witnesses=witnesses,
        local_table=table,
        certificate=None if outcome is None else outcome.point,
        search=outcome,
    )


# --- bounded search -------------------------------------------------------


def _rank(v: np.ndarray) -> np.ndarray:
    # 0, 1, -1, 2, -2, ...
    return 2 * np.abs(v) - (v > 0)


def _ordered_values(h: int) -> np.ndarray:
    vals = np.arange(-h, h + 1, dtype=np.int64)
    return vals[np.argsort(_rank(vals), kind="stable")]


def search_key(y: Sequence[int]) -> tuple[int, ...]:
    """Total order used by every search: height, then y4, y3, y2, y1 under 0 < 1 < -1 < 2 < -2 < ..."""
    r = [2 * abs(v) - (v > 0) for v in y]
    return (max(abs(v) for v in y), r[3], r[2], r[1], r[0])


def _norm_bound(a: int, c: int, h: int) -> int:
    p = (1 + abs(a) + abs(c) + abs(a * c)) * h * h
    q = 2 * (1 + abs(a)) * h * h
    return p * p + abs(c) * q * q


@dataclass(frozen=True)
class _Acceptor:
    """Vectorized prefilter plus exact scalar confirmation for one search."""

    kind: str  # "rational" or "integral"
    a: int
    b: int
    c: int
    primes: tuple[int, ...] = ()

    def prefilter(self, n: np.ndarray) -> np.ndarray:
        if self.kind == "rational":
            ok, _ = exact_sqrt(n * self.b)
            return ok & (n != 0)
        divisible = (n % self.b) == 0
        ok, _ = exact_sqrt(np.where(divisible, n // self.b, -1))
        return ok & divisible & (n != 0)

    def confirm(self, y: tuple[int, ...]) -> Optional[NormFormPoint]:
        n = norm_form_eval(y, self.a, self.c)
        if n == 0:
            return None
        if self.kind == "rational":
            r = is_perfect_square(self.b * n)
            if r is None:
                return None
            x = r / self.b
        else:
            if n % self.b:
                return None
            r = is_perfect_square(Fraction(n // self.b))
            if r is None or not is_smooth(int(r), self.primes):
                return None
            x = r
        pt = NormFormPoint(Fraction(x), tuple(Fraction(v) for v in y))
        return pt


def _scan_slice(acc: _Acceptor, h: int, y4_values: Sequence[int]):
    """First accepted point, in search order, among the given y4 values of shell h."""
    a, c = acc.a, acc.c
    vals = _ordered_values(h)
    g3, g2, g1 = (arr.ravel() for arr in np.meshgrid(vals, vals, vals, indexing="ij"))
    inner_max = np.maximum(np.maximum(np.abs(g1), np.abs(g2)), np.abs(g3))
    use_obj = _norm_bound(a, c, h) * abs(acc.b) >= INT64_SAFE
    checked = 0
    for y4 in y4_values:
        sel = np.ones(g1.shape, dtype=bool) if abs(y4) == h else inner_max == h
        y1, y2, y3 = g1[sel], g2[sel], g3[sel]
        checked += y1.size
        if use_obj:
            y1, y2, y3 = (v.astype(object) for v in (y1, y2, y3))
            y4v = int(y4)
        else:
            y4v = np.int64(y4)
        n = norm_form_eval((y1, y2, y3, y4v), a, c)
        for i in np.flatnonzero(acc.prefilter(n)):
            y = (int(y1[i]), int(y2[i]), int(y3[i]), int(y4))
            pt = acc.confirm(y)
            if pt is not None:
                return pt, checked
    return None, checked


def _shell_position(h: int, y: Sequence[int]) -> int:
    """1-based position of y among the points of shell h in search order."""
    vals = _ordered_values(h)
    rank = {int(v): i for i, v in enumerate(vals)}
    full = len(vals) ** 3
    partial = full - (len(vals) - 2) ** 3
    before = sum(full if abs(int(v)) == h else partial for v in vals[: rank[int(y[3])]])
    g3, g2, g1 = (arr.ravel() for arr in np.meshgrid(vals, vals, vals, indexing="ij"))
    if abs(int(y[3])) != h:
        sel = np.maximum(np.maximum(np.abs(g1), np.abs(g2)), np.abs(g3)) == h
        g1, g2, g3 = g1[sel], g2[sel], g3[sel]
    hit = np.flatnonzero((g1 == y[0]) & (g2 == y[1]) & (g3 == y[2]))[0]
    return before + int(hit) + 1


def _scan_slice_star(args):
    return _scan_slice(*args)


@dataclass
class SearchOutcome:
    point: Optional[NormFormPoint]
    height: int
    completed_height: int
    points_checked: int
    stopped: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "found": self.point is not None,
            "height": self.height,
            "completed_height": self.completed_height,
            "points_checked": self.points_checked,
            "stopped": self.stopped,
        }


PARALLEL_SHELL_MIN = 2_000_000


def _shell_search(
    acc: _Acceptor,
    height: int,
    *,
    max_points: Optional[int],
    time_budget: Optional[float],
    workers: Optional[int],
) -> SearchOutcome:
    workers = default_workers() if workers is None else workers
    start = time.monotonic()
    checked = 0
    pool = None
    try:
        for h in range(1, height + 1):
            shell = (2 * h + 1) ** 4 - (2 * h - 1) ** 4
            if max_points is not None and checked + shell > max_points:
                return SearchOutcome(None, height, h - 1, checked, "point budget")
            if time_budget is not None and time.monotonic() - start > time_budget:
                return SearchOutcome(None, height, h - 1, checked, "time budget")
            y4s = [int(v) for v in _ordered_values(h)]
            if workers > 1 and shell >= PARALLEL_SHELL_MIN:
                if pool is None:
                    pool = ProcessPoolExecutor(max_workers=workers)
                chunks = [y4s[i::workers] for i in range(workers) if y4s[i::workers]]
                results = list(pool.map(_scan_slice_star, [(acc, h, ch) for ch in chunks]))
                hits = [pt for pt, _ in results if pt is not None]
                best = min(hits, key=lambda pt: search_key([int(v) for v in pt.y]), default=None)
            else:
                best, _ = _scan_slice(acc, h, y4s)
            if best is not None:
                # counted up to the hit in search order, so the figure does not depend on workers
                checked += _shell_position(h, [int(v) for v in best.y])
                return SearchOutcome(best, height, h - 1, checked)
            checked += shell
        return SearchOutcome(None, height, height, checked)
    finally:
        if pool is not None:
            pool.shutdown()


def search_certificate(
    t: SquareClassTriple,
    height: int,
    *,
    max_points: Optional[int] = None,
    time_budget: Optional[float] = None,
    workers: Optional[int] = None,
) -> SearchOutcome:
    """Search integer y with max |y_i| <= height and b N(y) a nonzero square.

    Scans shells of increasing height; within a shell the least point under
    :func:`search_key` wins, independently of how the shell is split across
    workers.  N is homogeneous of degree 4, so integer y lose nothing over
    rational y up to scaling.
    """
    acc = _Acceptor("rational", t.a, t.b, t.c)
    return _shell_search(acc, height, max_points=max_points, time_budget=time_budget, workers=workers)


def certify_point(t: SquareClassTriple, height: int, **kwargs) -> Optional[NormFormPoint]:
    return search_certificate(t, height, **kwargs).point


# --- local oracle at good primes ------------------------------------------


class InconclusiveError(RuntimeError):
    pass


def _norm_gradient(y, a, c):
    y1, y2, y3, y4 = y
    p = y1 * y1 - a * y2 * y2 + c * y3 * y3 - a * c * y4 * y4
    q = 2 * y1 * y3 - 2 * a * y2 * y4
    return (
        4 * p * y1 - 4 * c * q * y3,
        -4 * a * p * y2 + 4 * a * c * q * y4,
        4 * c * p * y3 - 4 * c * q * y1,
        -4 * a * c * p * y4 + 4 * a * c * q * y2,
    )


def local_point_oracle(t: SquareClassTriple, p: int) -> bool:
    """Whether X(a, b, c) has a Q_p-point, for odd p not dividing abc, by enumeration over F_p.

    A point mod p with some nonzero partial derivative lifts by Hensel.  If
    every F_p-point is singular, the singular points are tested for lifts to
    Z/p^2; none lifting proves there is no p-adic point, otherwise the
    enumeration cannot decide and :class:`InconclusiveError` is raised.
    """
    if p < 3 or p % 2 == 0 or not isprime(p):
        raise ValueError(f"{p} is not an odd prime")
    a, b, c = t.as_tuple()
    if (a * b * c) % p == 0:
        raise ValueError(f"{p} divides abc; the oracle needs good reduction")
    g = np.array(list(product(range(p), repeat=4)), dtype=np.int64).T
    n = norm_form_eval(tuple(g), a, c) % p
    grads = [gi % p for gi in _norm_gradient(tuple(g), a, c)]
    y_smooth = np.any(np.stack(grads) != 0, axis=0)
    singular = []
    for x in range(1, p):
        on = n == (b * x * x) % p
        # dF/dx = 2 b x; when it is a unit every point on this slice is smooth
        smooth = y_smooth | ((2 * b * x) % p != 0)
        if np.any(on & smooth):
            return True
        singular.extend((x, tuple(int(v) for v in g[:, i])) for i in np.flatnonzero(on))
    if not singular:
        return False
    m = p * p
    for x0, y0 in singular:
        for lift in product(range(p), repeat=5):
            x = x0 + p * lift[0]
            y = tuple(y0[i] + p * lift[i + 1] for i in range(4))
            if (b * x * x - norm_form_eval(y, a, c)) % m == 0:
                raise InconclusiveError(f"singular point ({x0}, {y0}) lifts mod {p}^2")
    return False


# --- integral search -------------------------------------------------------


@dataclass
class IntegralSearchReport:
    triple: SquareClassTriple
    primes: tuple[int, ...]
    height: int
    point: Optional[NormFormPoint]
    search: SearchOutcome
    conclusive: bool = False
    note: str = field(
        default="bounded search only: finding no point up to this height does not show none exists"
    )

    @property
    def found(self) -> bool:
        return self.point is not None

    def to_dict(self) -> dict:
        return {
            "triple": list(self.triple.as_tuple()),
            "primes": list(self.primes),
            "height": self.height,
            "found": self.found,
            "point": None if self.point is None else self.point.to_dict(),
            "conclusive": self.conclusive,
            "note": self.note,
            "search": self.search.to_dict(),
        }


def integral_search_demo(
    t: SquareClassTriple,
    primes: Iterable[int],
    height: int,
    *,
    max_points: Optional[int] = None,
    workers: Optional[int] = None,
) -> IntegralSearchReport:
    """Look for points of X(a, b, c) over Z[1/S] with integer y up to ``height``.

    x must be an S-unit, and rescaling y by S-units multiplies N(y) by fourth
    powers of S-units, so it suffices to find integer y with N(y)/b the square
    of an S-smooth integer.  The report is never conclusive.
    """
    primes = tuple(sorted({int(p) for p in primes}))
    for v in t.as_tuple():
        if not is_smooth(v, primes):
            raise ValueError(f"{v} is not an S-unit for S = {primes}")
    acc = _Acceptor("integral", t.a, t.b, t.c, primes)
    outcome = _shell_search(acc, height, max_points=max_points, time_budget=None, workers=workers)
    return IntegralSearchReport(t, primes, height, outcome.point, outcome)
