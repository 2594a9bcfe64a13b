"""Normals of lattice planes that carry equilateral triangles.

A plane hosts equilateral triangles with integer coordinates exactly when its
primitive normal (a, b, c) solves

    a^2 + b^2 + c^2 = 3 d^2

for a positive integer d, in which case a, b, c and d are all odd.  This
module enumerates those triples, classifies the degenerate ones (every
component shares a factor with d), and solves the companion representation

    2 q = s^2 + 3 r^2,        q = a^2 + b^2,

whose solutions feed the coefficient tables in trilattice.parametrization.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterator

__all__ = [
    "Triple",
    "DegeneracyInfo",
    "RsPair",
    "enumerate_triples",
    "degeneracy",
    "degenerate_triples",
    "solve_rs",
    "iter_rs",
    "smallest_degenerate_d",
]


@dataclass(frozen=True, order=True)
class Triple:
    """Primitive solution of a^2 + b^2 + c^2 = 3 d^2, stored with a <= b <= c."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        a, b, c = sorted((self.a, self.b, self.c))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        if self.d <= 0 or self.d % 2 == 0:
            raise ValueError(f"d must be a positive odd integer, got {self.d}")
        if a <= 0:
            raise ValueError(f"normal components must be positive, got {(a, b, c)}")
        if a * a + b * b + c * c != 3 * self.d * self.d:
            raise ValueError(f"{(a, b, c)} does not solve x^2+y^2+z^2 = 3*{self.d}^2")
        if gcd(gcd(a, b), c) != 1:
            raise ValueError(f"{(a, b, c)} is not primitive")
        # squares are 0, 1 or 4 mod 8 while 3d^2 is 3 mod 8, so a primitive
        # solution with odd d can only consist of three odd squares
        if a % 2 == 0 or b % 2 == 0 or c % 2 == 0:
            raise ValueError(f"{(a, b, c)} has an even component")

    @property
    def q(self) -> int:
        """a^2 + b^2, the quantity represented by s^2 + 3 r^2 over 2."""
        return self.a * self.a + self.b * self.b

    @property
    def normal(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)


@dataclass(frozen=True)
class DegeneracyInfo:
    """The three gcds of d against the normal components, in component order."""

    zeta_a: int
    zeta_b: int
    zeta_c: int

    @property
    def is_degenerate(self) -> bool:
        return min(self.zeta_a, self.zeta_b, self.zeta_c) > 1


@dataclass(frozen=True, order=True)
class RsPair:
    """Solution of 2 q = s^2 + 3 r^2 with r > 0; r and s always share parity."""

    r: int
    s: int
    q: int

    def __post_init__(self) -> None:
        if self.q <= 0:
            raise ValueError(f"q must be positive, got {self.q}")
        if self.r <= 0:
            raise ValueError(f"r must be positive, got {self.r}")
        if self.s * self.s + 3 * self.r * self.r != 2 * self.q:
            raise ValueError(
                f"(r, s)=({self.r}, {self.s}) does not solve 2q = s^2 + 3r^2 for q={self.q}"
            )
        if (self.r - self.s) % 2:
            # unreachable when the equation holds (s^2 + 3r^2 even forces equal
            # parity) but kept as a guard against future edits
            raise ValueError(f"r={self.r} and s={self.s} must share parity")


@lru_cache(maxsize=None)
def enumerate_triples(d: int) -> tuple[Triple, ...]:
    """All primitive triples a <= b <= c with a^2 + b^2 + c^2 = 3 d^2.

    Returned in lexicographic order.  Only odd d are accepted; even d admit no
    primitive solutions and are rejected rather than silently returning ().
    """
    if not isinstance(d, int):
        raise TypeError(f"d must be an int, got {type(d).__name__}")
    if d <= 0:
        raise ValueError(f"d must be positive, got {d}")
    if d % 2 == 0:
        raise ValueError(f"d must be odd, got {d}")
    target = 3 * d * d
    found = []
    for a in range(1, isqrt(target // 3) + 1, 2):
        rest = target - a * a
        for b in range(a, isqrt(rest // 2) + 1, 2):
            cc = rest - b * b
            c = isqrt(cc)
            if c * c == cc and gcd(gcd(a, b), c) == 1:
                found.append(Triple(a, b, c, d))
    return tuple(found)


def degeneracy(triple: Triple) -> DegeneracyInfo:
    za = gcd(triple.d, triple.a)
    zb = gcd(triple.d, triple.b)
    zc = gcd(triple.d, triple.c)
    # pairwise coprime: a prime dividing two of the gcds would divide d and two
    # components, hence (via the defining equation) the third, against primitivity
    if gcd(za, zb) != 1 or gcd(za, zc) != 1 or gcd(zb, zc) != 1:
        raise AssertionError(f"gcds ({za}, {zb}, {zc}) of {triple} are not pairwise coprime")
    return DegeneracyInfo(za, zb, zc)


def iter_rs(q: int, zeta: int = 1) -> Iterator[RsPair]:
    """Yield solutions of 2 q = s^2 + 3 r^2 with r > 0 and zeta | r, zeta | s.

    Deterministic order: ascending r, then ascending s (so (r, -|s|) precedes
    (r, +|s|)).  An exhausted iterator means no representation exists under the
    divisibility constraint.
    """
    if q <= 0:
        raise ValueError(f"q must be positive, got {q}")
    if zeta <= 0:
        raise ValueError(f"zeta must be positive, got {zeta}")
    two_q = 2 * q
    for r in range(zeta, isqrt(two_q // 3) + 1, zeta):
        rest = two_q - 3 * r * r
        s = isqrt(rest)
        if s * s != rest or s % zeta:
            continue
        if (r - s) % 2:
            continue
        if s == 0:
            yield RsPair(r, 0, q)
        else:
            yield RsPair(r, -s, q)
            yield RsPair(r, s, q)


def solve_rs(q: int, zeta: int = 1) -> list[RsPair]:
    """All solutions of 2 q = s^2 + 3 r^2 with r > 0, zeta | r and zeta | s."""
    return list(iter_rs(q, zeta))


def _distinct_prime_factors(n: int) -> tuple[int, ...]:
    # n is odd here, so trial division can skip the evens
    out = []
    p = 3
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 2
    if n > 1:
        out.append(n)
    return tuple(out)


def degenerate_triples(d: int) -> tuple[Triple, ...]:
    """The degenerate members of enumerate_triples(d), without a full sweep.

    Degeneracy requires gcd(d, x) > 1 for each component x, and those three
    gcds are pairwise coprime, so d needs at least three distinct prime
    factors and every component must be a multiple of one of them.  Scanning
    only such multiples keeps the search cheap for large d.
    """
    if d <= 0 or d % 2 == 0:
        raise ValueError(f"d must be a positive odd integer, got {d}")
    primes = _distinct_prime_factors(d)
    if len(primes) < 3:
        return ()
    target = 3 * d * d

    def odd_multiples(lo: int, hi: int) -> list[int]:
        vals: set[int] = set()
        for p in primes:
            first = ((lo + p - 1) // p) * p
            vals.update(v for v in range(first, hi + 1, p) if v % 2)
        return sorted(vals)

    found = []
    for a in odd_multiples(1, isqrt(target // 3)):
        rest = target - a * a
        for b in odd_multiples(a, isqrt(rest // 2)):
            cc = rest - b * b
            c = isqrt(cc)
            if c * c == cc and gcd(c, d) > 1 and gcd(gcd(a, b), c) == 1:
                found.append(Triple(a, b, c, d))
    return tuple(sorted(found))


def smallest_degenerate_d(limit: int) -> int | None:
    """Smallest odd d <= limit whose family contains a degenerate triple, if any."""
    if limit < 1:
        return None
    for d in range(1, limit + 1, 2):
        if degenerate_triples(d):
            return d
    return None
