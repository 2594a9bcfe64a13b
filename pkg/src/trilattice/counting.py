"""Exact counts of equilateral lattice triangles inside cube grids.

The count for the grid {0, ..., n}^3 is assembled plane family by plane
family.  Each family is fixed by a normal triple (a, b, c, d); its anchored
triangles (one vertex at the origin) are enumerated through the family's
coefficient table, and every translation class of the family appears among
the anchored triangles exactly three times — once per choice of which vertex
is moved to the origin.  A class with axis extents (e1, e2, e3) contributes
prod(n + 1 - ei) grid placements when it fits.  Families that differ only by
a signed permutation of the coordinates contribute identical placement
totals, so just the sorted normal is enumerated and its total is multiplied
by the number of distinct coordinate images.

A side-length cutoff keeps each family finite: an edge vector v of a fitting
triangle satisfies 3 max_i v_i^2 >= |v|^2, so the squared side 2 d^2 k (with
k = m^2 - m n + n^2) can be at most 3 n^2.  The cutoff is intrinsic — never
a rectangular window on (m, n), which would slice translation classes
unevenly and break the three-fold multiplicity.

Three interchangeable engines cross-check one another:

* ``classes`` (default): canonicalize anchored triangles, deduplicate, and
  assert the raw-to-unique ratio is exactly 3.
* ``anchors``: skip deduplication, divide the placement total by 3, and
  assert the division is exact.
* ``expand``: materialize every coordinate image explicitly and deduplicate
  across all of them, with the same ratio assertion and no multiplier.

The oracle routines ignore all of the above and search the cube point by
point; they are the ground truth the engines are tested against.
"""

from __future__ import annotations

import itertools
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from trilattice.diophantine import Triple, enumerate_triples
from trilattice.parametrization import LatticeTriangle, ParamPair, canonical_params

__all__ = [
    "ENGINES",
    "CountRecord",
    "TriangleClass",
    "classes_with_placements",
    "count_range",
    "fast_count",
    "oracle_count",
    "oracle_triangles",
    "records_from_csv",
    "records_to_bfile",
    "records_to_csv",
]

Point = tuple[int, int, int]
ProgressFn = Callable[[int, int], None]

ENGINES = ("classes", "anchors", "expand")

# vertex coordinates and extents are packed three-per-int64, 16 bits each
_COORD_BITS = 16
_COORD_MASK = (1 << _COORD_BITS) - 1

# index chunk size for the vectorized row pipeline; keeps peak memory flat
_ROW_CHUNK = 1 << 21


@dataclass(frozen=True)
class CountRecord:
    """One grid size and its exact triangle count."""

    n: int
    count: int


@dataclass(frozen=True)
class TriangleClass:
    """A translation class of triangles, keyed by its minimum-corner form.

    ``vertices`` are translated so the bounding box corner sits at the
    origin and are sorted lexicographically, which makes equal classes
    compare equal.
    """

    vertices: tuple[Point, Point, Point]
    triple: Triple

    @property
    def extents(self) -> tuple[int, int, int]:
        return tuple(max(v[i] for v in self.vertices) for i in range(3))  # type: ignore[return-value]

    def placements(self, n: int) -> int:
        """Number of translates of the class inside {0..n}^3 (0 if too big)."""
        total = 1
        for e in self.extents:
            if e > n:
                return 0
            total *= n + 1 - e
        return total


def _check_cube(n: int) -> None:
    if not isinstance(n, int):
        raise TypeError(f"grid size must be an int, got {type(n).__name__}")
    if n < 0:
        raise ValueError(f"grid size must be nonnegative, got {n}")


def _d_values(n: int) -> range:
    # families contribute only when some side fits: 2 d^2 <= 3 n^2
    if n < 1:
        return range(0)
    d_max = isqrt(3 * n * n // 2)
    if d_max % 2 == 0:
        d_max -= 1
    return range(1, d_max + 1, 2)


@lru_cache(maxsize=None)
def _signed_images(normal: tuple[int, int, int]) -> tuple[tuple[tuple[int, int, int], ...], ...]:
    """One 3x3 signed-permutation matrix per distinct image of the normal.

    Images are counted up to an overall sign, since a plane's normal is only
    determined up to sign.  Repeated components of the normal collapse
    permutations, which is why the count is 24, 12, or 4 rather than always
    24.
    """
    mats: dict[tuple[int, int, int], tuple[tuple[int, int, int], ...]] = {}
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1, -1), repeat=3):
            image = tuple(signs[i] * normal[perm[i]] for i in range(3))
            rep = max(image, tuple(-x for x in image))
            if rep in mats:
                continue
            rows = [[0, 0, 0] for _ in range(3)]
            for i in range(3):
                rows[i][perm[i]] = signs[i]
            mats[rep] = tuple(tuple(row) for row in rows)
    return tuple(mats[rep] for rep in sorted(mats))


def _iter_index_chunks(k_max: int) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Index pairs (m, n) with 0 < m^2 - m n + n^2 <= k_max, in blocks."""
    # m^2 - m n + n^2 >= (3/4) max(m^2, n^2), so both coordinates are bounded
    bound = isqrt(4 * k_max // 3) + 1
    rng = np.arange(-bound, bound + 1, dtype=np.int64)
    width = rng.shape[0]
    rows_per_block = max(1, _ROW_CHUNK // width)
    for start in range(0, width, rows_per_block):
        ms, ns = np.meshgrid(rng[start : start + rows_per_block], rng, indexing="ij")
        ms = ms.ravel()
        ns = ns.ravel()
        k = ms * ms - ms * ns + ns * ns
        keep = (k > 0) & (k <= k_max)
        if keep.any():
            yield ms[keep], ns[keep]


def _chunk_vertices(
    params: ParamPair,
    ms: np.ndarray,
    ns: np.ndarray,
    image: tuple[tuple[int, int, int], ...] | None,
) -> tuple[np.ndarray, ...]:
    px = params.m_u * ms - params.n_u * ns
    py = params.m_v * ms - params.n_v * ns
    pz = params.m_w * ms - params.n_w * ns
    qx = params.m_x * ms - params.n_x * ns
    qy = params.m_y * ms - params.n_y * ns
    qz = params.m_z * ms - params.n_z * ns
    if image is not None:
        (r00, r01, r02), (r10, r11, r12), (r20, r21, r22) = image
        px, py, pz = (
            r00 * px + r01 * py + r02 * pz,
            r10 * px + r11 * py + r12 * pz,
            r20 * px + r21 * py + r22 * pz,
        )
        qx, qy, qz = (
            r00 * qx + r01 * qy + r02 * qz,
            r10 * qx + r11 * qy + r12 * qz,
            r20 * qx + r21 * qy + r22 * qz,
        )
    return px, py, pz, qx, qy, qz


def _chunk_rows(
    params: ParamPair,
    ms: np.ndarray,
    ns: np.ndarray,
    image: tuple[tuple[int, int, int], ...] | None = None,
    want_rows: bool = True,
) -> tuple[np.ndarray | None, np.ndarray]:
    """Canonical packed rows and extents for one chunk of indices.

    The triangle O, P, Q is translated so its bounding box corner is the
    origin; each vertex packs into one int64 (16 bits per coordinate), and
    the three packed keys sorted ascending make a canonical row — packed
    order agrees with lexicographic order on nonnegative coordinates.
    """
    px, py, pz, qx, qy, qz = _chunk_vertices(params, ms, ns, image)
    lox = np.minimum(np.minimum(px, qx), 0)
    loy = np.minimum(np.minimum(py, qy), 0)
    loz = np.minimum(np.minimum(pz, qz), 0)
    ex = np.maximum(np.maximum(px, qx), 0) - lox
    ey = np.maximum(np.maximum(py, qy), 0) - loy
    ez = np.maximum(np.maximum(pz, qz), 0) - loz
    extents = np.stack([ex, ey, ez], axis=1)
    if not want_rows:
        return None, extents
    if int(extents.max(initial=0)) > _COORD_MASK:
        raise ValueError(
            "triangle coordinates exceed the packed 16-bit range; "
            "the requested grid size is too large for this counter"
        )
    ko = ((-lox) << 32) | ((-loy) << 16) | (-loz)
    kp = ((px - lox) << 32) | ((py - loy) << 16) | (pz - loz)
    kq = ((qx - lox) << 32) | ((qy - loy) << 16) | (qz - loz)
    kmin = np.minimum(np.minimum(ko, kp), kq)
    kmax = np.maximum(np.maximum(ko, kp), kq)
    kmid = ko + kp + kq - kmin - kmax
    rows = np.stack([kmin, kmid, kmax], axis=1)
    return rows, extents


def _extents_from_rows(rows: np.ndarray) -> np.ndarray:
    # the min corner is the origin, so extents are coordinate maxima
    x = rows >> 32
    y = (rows >> 16) & _COORD_MASK
    z = rows & _COORD_MASK
    return np.stack([x.max(axis=1), y.max(axis=1), z.max(axis=1)], axis=1)


def _unpack_key(key: int) -> Point:
    key = int(key)
    return (key >> 32, (key >> 16) & _COORD_MASK, key & _COORD_MASK)


def _placement_sum(extents: np.ndarray, n: int) -> int:
    """Sum of prod(n + 1 - ei) over the rows that fit, as an exact int."""
    fits = (extents <= n).all(axis=1)
    free = (n + 1) - extents[fits]
    if free.shape[0] == 0:
        return 0
    # chunk so the int64 accumulator cannot overflow: each product is at
    # most (n + 1)^3
    cube = (n + 1) ** 3
    step = max(1, (1 << 62) // cube)
    total = 0
    for start in range(0, free.shape[0], step):
        part = free[start : start + step]
        total += int(np.sum(part[:, 0] * part[:, 1] * part[:, 2]))
    return total


def _collect_rows(
    params: ParamPair,
    k_max: int,
    image: tuple[tuple[int, int, int], ...] | None = None,
) -> np.ndarray:
    parts = [
        _chunk_rows(params, ms, ns, image)[0]
        for ms, ns in _iter_index_chunks(k_max)
    ]
    if not parts:
        return np.empty((0, 3), dtype=np.int64)
    return np.concatenate(parts)


def _unique_classes(rows: np.ndarray, what: str) -> np.ndarray:
    uniq = np.unique(rows, axis=0)
    if rows.shape[0] != 3 * uniq.shape[0]:
        raise AssertionError(
            f"anchored multiplicity broken for {what}: "
            f"{rows.shape[0]} anchored triangles over {uniq.shape[0]} classes"
        )
    return uniq


def _family_contribution(triple: Triple, n: int, engine: str) -> int:
    d = triple.d
    k_max = (3 * n * n) // (2 * d * d)
    if k_max < 1:
        return 0
    params = canonical_params(triple)
    images = _signed_images(triple.normal)

    if engine == "anchors":
        total = 0
        for ms, ns in _iter_index_chunks(k_max):
            _, extents = _chunk_rows(params, ms, ns, want_rows=False)
            total += _placement_sum(extents, n)
        if total % 3:
            raise AssertionError(
                f"anchored placement total {total} for {triple} is not divisible by 3"
            )
        return (total // 3) * len(images)

    if engine == "classes":
        uniq = _unique_classes(_collect_rows(params, k_max), repr(triple))
        return _placement_sum(_extents_from_rows(uniq), n) * len(images)

    if engine == "expand":
        rows = np.concatenate(
            [_collect_rows(params, k_max, image=mat) for mat in images]
        )
        uniq = _unique_classes(rows, f"images of {triple!r}")
        return _placement_sum(_extents_from_rows(uniq), n)

    raise ValueError(f"unknown engine {engine!r}; expected one of {ENGINES}")


def _merge_counts(into: dict[int, int], keys: np.ndarray, counts: np.ndarray, mult: int) -> None:
    for key, cnt in zip(keys.tolist(), counts.tolist()):
        into[key] = into.get(key, 0) + cnt * mult


def _extent_keys(extents: np.ndarray) -> np.ndarray:
    # sorted extent triples are placement-equivalent, so they make the
    # histogram key
    if int(extents.max(initial=0)) > _COORD_MASK:
        raise ValueError(
            "triangle extents exceed the packed 16-bit range; "
            "the requested grid size is too large for this counter"
        )
    s = np.sort(extents, axis=1)
    return (s[:, 0] << 32) | (s[:, 1] << 16) | s[:, 2]


def _family_histogram(triple: Triple, hi: int, engine: str) -> dict[int, int]:
    """Extent histogram of one family: sorted extent triple -> class count."""
    d = triple.d
    k_max = (3 * hi * hi) // (2 * d * d)
    if k_max < 1:
        return {}
    params = canonical_params(triple)
    images = _signed_images(triple.normal)
    hist: dict[int, int] = {}

    if engine == "anchors":
        raw: dict[int, int] = {}
        for ms, ns in _iter_index_chunks(k_max):
            _, extents = _chunk_rows(params, ms, ns, want_rows=False)
            keys, counts = np.unique(_extent_keys(extents), return_counts=True)
            _merge_counts(raw, keys, counts, 1)
        for key, cnt in raw.items():
            if cnt % 3:
                raise AssertionError(
                    f"anchored extent count {cnt} for {triple} is not divisible by 3"
                )
            hist[key] = (cnt // 3) * len(images)
        return hist

    if engine == "classes":
        uniq = _unique_classes(_collect_rows(params, k_max), repr(triple))
        keys, counts = np.unique(_extent_keys(_extents_from_rows(uniq)), return_counts=True)
        _merge_counts(hist, keys, counts, len(images))
        return hist

    if engine == "expand":
        rows = np.concatenate(
            [_collect_rows(params, k_max, image=mat) for mat in images]
        )
        uniq = _unique_classes(rows, f"images of {triple!r}")
        keys, counts = np.unique(_extent_keys(_extents_from_rows(uniq)), return_counts=True)
        _merge_counts(hist, keys, counts, 1)
        return hist

    raise ValueError(f"unknown engine {engine!r}; expected one of {ENGINES}")


def _run_family_jobs(
    jobs: Sequence[Triple],
    fn: Callable[[Triple], object],
    threads: int,
    progress: ProgressFn | None,
) -> list:
    total = len(jobs)
    done = 0
    lock = threading.Lock()

    def wrapped(triple: Triple):
        nonlocal done
        out = fn(triple)
        if progress is not None:
            with lock:
                done += 1
                progress(done, total)
        return out

    if threads > 1 and total > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(wrapped, jobs))
    return [wrapped(t) for t in jobs]


def _family_jobs(n: int) -> list[Triple]:
    return [t for d in _d_values(n) for t in enumerate_triples(d)]


def fast_count(
    n: int,
    *,
    engine: str = "classes",
    threads: int = 1,
    progress: ProgressFn | None = None,
) -> int:
    """Exact number of equilateral triangles with vertices in {0..n}^3."""
    _check_cube(n)
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}; expected one of {ENGINES}")
    terms = _run_family_jobs(
        _family_jobs(n), lambda t: _family_contribution(t, n, engine), threads, progress
    )
    return sum(terms)


def count_range(
    lo: int,
    hi: int,
    *,
    engine: str = "classes",
    threads: int = 1,
    progress: ProgressFn | None = None,
) -> list[CountRecord]:
    """Exact triangle counts for every grid size in [lo, hi].

    One pass builds a histogram of class extents at the horizon ``hi``; each
    smaller grid is then a cheap evaluation over the histogram.  This is far
    cheaper than counting each size separately and is bit-identical to it.
    """
    _check_cube(lo)
    _check_cube(hi)
    if lo > hi:
        raise ValueError(f"empty range [{lo}, {hi}]")
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}; expected one of {ENGINES}")
    hist: dict[int, int] = {}
    for part in _run_family_jobs(
        _family_jobs(hi), lambda t: _family_histogram(t, hi, engine), threads, progress
    ):
        for key, cnt in part.items():
            hist[key] = hist.get(key, 0) + cnt
    keys = np.array(sorted(hist), dtype=np.int64)
    counts = np.array([hist[k] for k in keys.tolist()], dtype=np.int64)
    e_hi = keys >> 32
    e_mid = (keys >> 16) & _COORD_MASK
    e_lo = keys & _COORD_MASK
    records = []
    for n in range(lo, hi + 1):
        f = (
            np.maximum(n + 1 - e_hi, 0)
            * np.maximum(n + 1 - e_mid, 0)
            * np.maximum(n + 1 - e_lo, 0)
        )
        # each per-class term is bounded by the grand total; stay in int64
        # only while that total is provably safe
        estimate = float(np.dot(counts.astype(np.float64), f.astype(np.float64)))
        if estimate < float(1 << 61):
            total = int(np.dot(counts, f))
        else:
            total = sum(int(c) * int(p) for c, p in zip(counts.tolist(), f.tolist()))
        records.append(CountRecord(n, total))
    return records


def classes_with_placements(n: int) -> list[tuple[TriangleClass, int]]:
    """Every translation class that fits in {0..n}^3, with its placement count.

    Materializes all coordinate images explicitly, so the result covers each
    triangle class in the grid exactly once; the placement counts sum to
    fast_count(n).
    """
    _check_cube(n)
    out: list[tuple[TriangleClass, int]] = []
    for triple in _family_jobs(n):
        d = triple.d
        k_max = (3 * n * n) // (2 * d * d)
        if k_max < 1:
            continue
        params = canonical_params(triple)
        for mat in _signed_images(triple.normal):
            uniq = _unique_classes(
                _collect_rows(params, k_max, image=mat), f"an image of {triple!r}"
            )
            extents = _extents_from_rows(uniq)
            fits = (extents <= n).all(axis=1)
            for row, ext in zip(uniq[fits].tolist(), extents[fits].tolist()):
                vertices = tuple(_unpack_key(key) for key in row)
                placements = (n + 1 - ext[0]) * (n + 1 - ext[1]) * (n + 1 - ext[2])
                out.append((TriangleClass(vertices, triple), placements))
    return out


def _oracle_vertex_triples(n: int) -> Iterator[tuple[Point, Point, Point]]:
    """Brute-force search of the cube, independent of the family machinery.

    For each choice of least vertex A (lexicographic point order), bucket
    the later points by squared distance from A; any same-bucket pair at
    that same mutual distance closes an equilateral triangle.  Each triangle
    is produced exactly once, at its least vertex.
    """
    _check_cube(n)
    pts = [
        (x, y, z)
        for x in range(n + 1)
        for y in range(n + 1)
        for z in range(n + 1)
    ]
    total = len(pts)
    for i in range(total):
        ax, ay, az = pts[i]
        buckets: dict[int, list[int]] = {}
        for j in range(i + 1, total):
            bx, by, bz = pts[j]
            dx, dy, dz = bx - ax, by - ay, bz - az
            buckets.setdefault(dx * dx + dy * dy + dz * dz, []).append(j)
        for d2, members in buckets.items():
            if len(members) < 2:
                continue
            for u in range(len(members) - 1):
                bx, by, bz = pts[members[u]]
                for v in range(u + 1, len(members)):
                    cx, cy, cz = pts[members[v]]
                    dx, dy, dz = cx - bx, cy - by, cz - bz
                    if dx * dx + dy * dy + dz * dz == d2:
                        yield pts[i], pts[members[u]], pts[members[v]]


def oracle_count(n: int) -> int:
    """Triangle count by direct search; slow, but assumption-free."""
    return sum(1 for _ in _oracle_vertex_triples(n))


def oracle_triangles(n: int) -> list[LatticeTriangle]:
    """All triangles found by direct search, as validated triangle objects."""
    return [LatticeTriangle(tri) for tri in _oracle_vertex_triples(n)]


def records_to_csv(records: Iterable[CountRecord]) -> str:
    """Two-column CSV (header ``n,count``) for a list of count records."""
    lines = ["n,count"]
    lines.extend(f"{r.n},{r.count}" for r in records)
    return "\n".join(lines) + "\n"


def records_from_csv(text: str) -> list[CountRecord]:
    """Parse the CSV produced by records_to_csv (comments and header allowed)."""
    records = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.lower().replace(" ", "") == "n,count":
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'n,count', got {raw!r}")
        try:
            n, count = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: non-integer field in {raw!r}") from exc
        records.append(CountRecord(n, count))
    return records


def records_to_bfile(records: Iterable[CountRecord], comments: Sequence[str] = ()) -> str:
    """Space-separated ``index value`` lines, optionally preceded by comments."""
    lines = [f"# {comment}" for comment in comments]
    lines.extend(f"{r.n} {r.count}" for r in records)
    return "\n".join(lines) + "\n"
