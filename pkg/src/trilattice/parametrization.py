"""Coefficient tables generating every lattice equilateral triangle of a plane.

For a primitive normal (a, b, c) with a^2 + b^2 + c^2 = 3 d^2 and a companion
pair (r, s) with 2 q = s^2 + 3 r^2, q = a^2 + b^2, twelve integers define two
linear maps on an index (m, n):

    P(m, n) = (m_u m - n_u n,  m_v m - n_v n,  m_w m - n_w n)
    Q(m, n) = (m_x m - n_x n,  m_y m - n_y n,  m_z m - n_z n)

The triangles O, P(m, n), Q(m, n) then run through exactly the equilateral
triangles lying in the plane a x + b y + c z = 0 with one vertex at the
origin; the squared side at index (m, n) is 2 d^2 (m^2 - m n + n^2).

Not every companion pair produces integer coefficients.  build_params rejects
fractional tables, and canonical_params picks the first integral table in the
deterministic (r, s) order of trilattice.diophantine.iter_rs.  Any two
integral tables for the same normal generate the same triangle set and differ
only by one of twelve unimodular index substitutions, optionally composed
with swapping the roles of P and Q; equivalent_parametrizations decides that
relation by direct comparison on a window of indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, NamedTuple

from trilattice.diophantine import RsPair, Triple, iter_rs

__all__ = [
    "MnIndex",
    "ParamPair",
    "LatticeTriangle",
    "NonIntegralParametrization",
    "DegenerateIndex",
    "OffPlane",
    "build_params",
    "canonical_params",
    "triangle_at",
    "solve_mn",
    "hexagonal_orbit",
    "equivalent_parametrizations",
    "third_vertex_check",
]

Point = tuple[int, int, int]


class NonIntegralParametrization(ValueError):
    """The companion pair leaves at least one coefficient fractional."""


class DegenerateIndex(ValueError):
    """Index (0, 0) collapses the triangle to a point."""


class OffPlane(ValueError):
    """The queried vertex does not lie in the family's plane through the origin."""


class MnIndex(NamedTuple):
    m: int
    n: int

    def norm(self) -> int:
        """Value of the hexagonal form m^2 - m n + n^2 (squared side over 2 d^2)."""
        return self.m * self.m - self.m * self.n + self.n * self.n


def _dist2(p: Point, q: Point) -> int:
    return (p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2 + (p[2] - q[2]) ** 2


@dataclass(frozen=True)
class LatticeTriangle:
    """An equilateral triangle with integer vertices, kept in construction order."""

    vertices: tuple[Point, Point, Point]

    def __post_init__(self) -> None:
        v0, v1, v2 = self.vertices
        s01, s12, s02 = _dist2(v0, v1), _dist2(v1, v2), _dist2(v0, v2)
        if not (s01 == s12 == s02):
            raise ValueError(f"vertices {self.vertices} are not equilateral")
        if s01 == 0:
            raise ValueError("triangle has coincident vertices")

    @property
    def side_squared(self) -> int:
        return _dist2(self.vertices[0], self.vertices[1])

    @property
    def extents(self) -> tuple[int, int, int]:
        vs = self.vertices
        return tuple(max(v[i] for v in vs) - min(v[i] for v in vs) for i in range(3))  # type: ignore[return-value]

    def canonical(self) -> "LatticeTriangle":
        """Translate the bounding box corner to the origin and sort the vertices."""
        vs = self.vertices
        lo = tuple(min(v[i] for v in vs) for i in range(3))
        moved = sorted(tuple(v[i] - lo[i] for i in range(3)) for v in vs)
        return LatticeTriangle(tuple(moved))  # type: ignore[arg-type]


@dataclass(frozen=True)
class ParamPair:
    """Twelve integral coefficients for one normal family and companion pair.

    The three cross products of the P-columns against the N-columns pin the
    table to the plane geometry and are enforced on construction:

        m_v n_w - m_w n_v = a d
        m_w n_u - m_u n_w = b d
        m_u n_v - m_v n_u = c d
    """

    m_u: int
    n_u: int
    m_v: int
    n_v: int
    m_w: int
    n_w: int
    m_x: int
    n_x: int
    m_y: int
    n_y: int
    m_z: int
    n_z: int
    triple: Triple
    rs: RsPair

    def __post_init__(self) -> None:
        a, b, c, d = self.triple.a, self.triple.b, self.triple.c, self.triple.d
        checks = (
            (self.m_v * self.n_w - self.m_w * self.n_v, a * d),
            (self.m_w * self.n_u - self.m_u * self.n_w, b * d),
            (self.m_u * self.n_v - self.m_v * self.n_u, c * d),
        )
        for got, want in checks:
            if got != want:
                raise ValueError(
                    f"coefficient table fails a cross-product identity: {got} != {want}"
                )

    def p_vertex(self, m: int, n: int) -> Point:
        return (
            self.m_u * m - self.n_u * n,
            self.m_v * m - self.n_v * n,
            self.m_w * m - self.n_w * n,
        )

    def q_vertex(self, m: int, n: int) -> Point:
        return (
            self.m_x * m - self.n_x * n,
            self.m_y * m - self.n_y * n,
            self.m_z * m - self.n_z * n,
        )

    @property
    def p_matrix(self) -> tuple[tuple[int, int], ...]:
        """Rows (coefficient of m, coefficient of n) for the P coordinates."""
        return ((self.m_u, -self.n_u), (self.m_v, -self.n_v), (self.m_w, -self.n_w))

    @property
    def q_matrix(self) -> tuple[tuple[int, int], ...]:
        return ((self.m_x, -self.n_x), (self.m_y, -self.n_y), (self.m_z, -self.n_z))

    def side_squared(self, idx: tuple[int, int]) -> int:
        m, n = idx
        d = self.triple.d
        return 2 * d * d * (m * m - m * n + n * n)


def build_params(triple: Triple, rs: RsPair | tuple[int, int]) -> ParamPair:
    """Evaluate the twelve coefficient formulas, failing on any fractional entry.

    The divisions by q and 2q are the only places integrality can break; the
    two halved sums (r - s)/2 and (r + s)/2 are exact because r and s share
    parity.
    """
    a, b, c, d = triple.a, triple.b, triple.c, triple.d
    q = triple.q
    if not isinstance(rs, RsPair):
        rs = RsPair(rs[0], rs[1], q)
    if rs.q != q:
        raise ValueError(f"companion pair solves q={rs.q}, expected q={q} for {triple}")
    r, s = rs.r, rs.s

    def exact(num: int, den: int) -> int:
        if num % den:
            raise NonIntegralParametrization(
                f"(r, s)=({r}, {s}) leaves {num}/{den} fractional for {triple}"
            )
        return num // den

    m_x = -exact(d * b * (3 * r + s) + a * c * (r - s), 2 * q)
    n_x = -exact(r * a * c + d * b * s, q)
    m_y = exact(d * a * (3 * r + s) - b * c * (r - s), 2 * q)
    n_y = exact(d * a * s - b * c * r, q)
    m_z = (r - s) // 2
    n_z = r
    m_u = -exact(r * a * c + d * b * s, q)
    n_u = -exact(d * b * (s - 3 * r) + a * c * (r + s), 2 * q)
    m_v = exact(d * a * s - r * b * c, q)
    n_v = exact(d * a * (s - 3 * r) - b * c * (r + s), 2 * q)
    m_w = r
    n_w = (r + s) // 2
    return ParamPair(
        m_u, n_u, m_v, n_v, m_w, n_w, m_x, n_x, m_y, n_y, m_z, n_z, triple, rs
    )


@lru_cache(maxsize=4096)
def canonical_params(triple: Triple) -> ParamPair:
    """First integral table in companion-pair order (ascending r, then s).

    Integral tables force both r and s to be divisible by gcd(d, c), so the
    scan only visits those multiples.  Exhausting the scan would contradict
    the existence guarantee for valid triples and raises.
    """
    zeta = gcd(triple.d, triple.c)
    for rs in iter_rs(triple.q, zeta):
        try:
            return build_params(triple, rs)
        except NonIntegralParametrization:
            continue
    raise NonIntegralParametrization(
        f"no companion pair yields an integral coefficient table for {triple}"
    )


def triangle_at(params: ParamPair, idx: tuple[int, int]) -> LatticeTriangle:
    """The triangle O, P(m, n), Q(m, n); raises DegenerateIndex at (0, 0)."""
    m, n = idx
    if m == 0 and n == 0:
        raise DegenerateIndex("index (0, 0) collapses the triangle to the origin")
    return LatticeTriangle(((0, 0, 0), params.p_vertex(m, n), params.q_vertex(m, n)))


def solve_mn(params: ParamPair, vertex: Point) -> MnIndex | None:
    """Invert the P map: the unique index with P(m, n) == vertex, if one exists.

    The cross-product identities give n three ways:

        v0 m_w - w0 m_v = n (a d)
        w0 m_u - u0 m_w = n (b d)
        u0 m_v - v0 m_u = n (c d)

    All three must agree on an integer n; m then comes from any coordinate
    with a nonzero m-coefficient, and the full system is re-verified.  Points
    inside the plane but off the triangular vertex lattice return None;
    points outside the plane raise OffPlane.
    """
    t = params.triple
    u0, v0, w0 = vertex
    if t.a * u0 + t.b * v0 + t.c * w0 != 0:
        raise OffPlane(f"{vertex} is not in the plane of {t}")
    ad = t.a * t.d
    num = v0 * params.m_w - w0 * params.m_v
    if num % ad:
        return None
    n = num // ad
    if w0 * params.m_u - u0 * params.m_w != n * t.b * t.d:
        return None
    if u0 * params.m_v - v0 * params.m_u != n * t.c * t.d:
        return None
    for m_coef, n_coef, coord in (
        (params.m_u, params.n_u, u0),
        (params.m_v, params.n_v, v0),
        (params.m_w, params.n_w, w0),
    ):
        if m_coef:
            num_m = coord + n_coef * n
            if num_m % m_coef:
                return None
            m = num_m // m_coef
            break
    else:  # pragma: no cover - the cross products forbid an all-zero m column
        raise AssertionError(f"degenerate P matrix in {params}")
    if params.p_vertex(m, n) != vertex:
        return None
    return MnIndex(m, n)


# the six hexagonal index substitutions (identity first), as 2x2 rows
_HEX_MAPS: tuple[tuple[int, int, int, int], ...] = (
    (1, 0, 0, 1),
    (-1, 0, 0, -1),
    (1, -1, 1, 0),
    (-1, 1, 0, 1),
    (1, -1, 0, -1),
    (-1, 1, -1, 0),
)


def _close_under_products(
    mats: Iterable[tuple[int, int, int, int]]
) -> tuple[tuple[int, int, int, int], ...]:
    group = set(mats)
    while True:
        new = set()
        for a1, b1, c1, d1 in group:
            for a2, b2, c2, d2 in group:
                prod = (
                    a1 * a2 + b1 * c2,
                    a1 * b2 + b1 * d2,
                    c1 * a2 + d1 * c2,
                    c1 * b2 + d1 * d2,
                )
                if prod not in group:
                    new.add(prod)
        if not new:
            return tuple(sorted(group))
        group |= new


# closure of the substitutions above: the full symmetry group (order 12) of
# the form m^2 - m n + n^2
_INDEX_GROUP = _close_under_products(_HEX_MAPS)
assert len(_INDEX_GROUP) == 12


def hexagonal_orbit(idx: tuple[int, int]) -> set[MnIndex]:
    """Images of an index under the six hexagonal substitutions (with identity).

    Every image leaves m^2 - m n + n^2, and hence the side length, unchanged.
    """
    m, n = idx
    return {MnIndex(al * m + be * n, ga * m + de * n) for al, be, ga, de in _HEX_MAPS}


def equivalent_parametrizations(p1: ParamPair, p2: ParamPair, window: int = 5) -> bool:
    """Whether two tables tile the same triangles on a window of indices.

    Tries every composition of the hexagonal substitutions (their closure has
    twelve elements) and optionally the swap of P and Q roles; p2's triangle
    at (m, n) must equal p1's at the substituted index for all indices with
    |m|, |n| <= window.  Tables for different normals are never equivalent.
    """
    if p1.triple != p2.triple:
        return False
    idxs = [
        (m, n)
        for m in range(-window, window + 1)
        for n in range(-window, window + 1)
        if (m, n) != (0, 0)
    ]
    for al, be, ga, de in _INDEX_GROUP:
        for swap in (False, True):
            for m, n in idxs:
                mm, nn = al * m + be * n, ga * m + de * n
                pv, qv = p1.p_vertex(mm, nn), p1.q_vertex(mm, nn)
                if swap:
                    pv, qv = qv, pv
                if pv != p2.p_vertex(m, n) or qv != p2.q_vertex(m, n):
                    break
            else:
                return True
    return False


def third_vertex_check(tri: LatticeTriangle, triple: Triple) -> bool:
    """Verify the relation pinning the third vertex to the first two.

    Writing (u, v, w) = V1 - V0, the third vertex satisfies, for one global
    sign choice,

        2 d (V2 - V0) = d (u, v, w) +/- (c v - b w,  a w - c u,  b u - a v).

    Multiplying through by 2 d keeps the check in integers.
    """
    a, b, c, d = triple.a, triple.b, triple.c, triple.d
    v0, v1, v2 = tri.vertices
    u, v, w = v1[0] - v0[0], v1[1] - v0[1], v1[2] - v0[2]
    target = tuple(2 * d * (v2[i] - v0[i]) for i in range(3))
    base = (d * u, d * v, d * w)
    cross = (c * v - b * w, a * w - c * u, b * u - a * v)
    for sign in (1, -1):
        if all(t == bs + sign * cr for t, bs, cr in zip(target, base, cross)):
            return True
    return False
