"""Exact rational geometry: points, lines, hyperplanes and incidence predicates.

Every coordinate is a :class:`fractions.Fraction`.  Directions and normals are
stored as primitive integer vectors (gcd 1, first nonzero component positive)
so that lines and hyperplanes can be compared and hashed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, cmp_to_key
from math import gcd, lcm
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

from .errors import (
    DegenerateInputError,
    DimensionMismatchError,
    DuplicatePointError,
)

Point = tuple  # tuple[Fraction, ...]
IntVector = tuple  # tuple[int, ...]


def as_point(coords: Iterable) -> Point:
    """Convert ints, Fractions or rational strings to an exact point."""
    pt = tuple(Fraction(c) for c in coords)
    if not pt:
        raise DegenerateInputError("a point needs at least one coordinate")
    return pt


def sign(value) -> int:
    return (value > 0) - (value < 0)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def scale(k, v: Sequence) -> tuple:
    return tuple(k * a for a in v)


def squared_distance(p: Sequence, q: Sequence):
    return sum((a - b) * (a - b) for a, b in zip(p, q))


def cross3(u: Sequence, v: Sequence) -> tuple:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _check_dim(a: Sequence, b: Sequence) -> None:
    if len(a) != len(b):
        raise DimensionMismatchError(f"dimension {len(a)} != {len(b)}")


def _primitive_int(ints: Sequence[int]) -> tuple[IntVector, int]:
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g == 0:
        raise DegenerateInputError("zero vector has no direction")
    for a in ints:
        if a:
            s = 1 if a > 0 else -1
            break
    g *= s
    return tuple(a // g for a in ints), s


def primitive(vec: Sequence) -> tuple[IntVector, int]:
    """Canonical integer direction of a nonzero rational vector.

    Returns ``(w, s)`` where ``w`` is primitive with first nonzero entry
    positive and ``vec`` is a positive multiple of ``s * w``.
    """
    den = 1
    for a in vec:
        den = lcm(den, Fraction(a).denominator)
    return _primitive_int([int(Fraction(a) * den) for a in vec])


def canonical_direction(vec: Sequence) -> IntVector:
    return primitive(vec)[0]


# ---------------------------------------------------------------------------
# exact linear algebra


def _reduce(vec: Sequence, basis: list) -> list:
    v = [Fraction(a) for a in vec]
    for piv, row in basis:
        f = v[piv]
        if f:
            v = [a - f * b for a, b in zip(v, row)]
    return v


def independent_indices(vectors: Sequence[Sequence], limit: Optional[int] = None) -> list[int]:
    """Indices of a greedy maximal linearly independent subsequence."""
    basis: list = []
    chosen: list[int] = []
    for i, vec in enumerate(vectors):
        r = _reduce(vec, basis)
        piv = next((k for k, a in enumerate(r) if a), None)
        if piv is None:
            continue
        inv = r[piv]
        basis.append((piv, [a / inv for a in r]))
        chosen.append(i)
        if limit is not None and len(chosen) >= limit:
            break
    return chosen


def rank(vectors: Sequence[Sequence]) -> int:
    return len(independent_indices(vectors))


def solve2(a11, a12, a21, a22, b1, b2) -> Optional[tuple[Fraction, Fraction]]:
    det = a11 * a22 - a12 * a21
    if det == 0:
        return None
    det = Fraction(det)
    return (b1 * a22 - a12 * b2) / det, (a11 * b2 - b1 * a21) / det


# ---------------------------------------------------------------------------
# domain types


class VoterSet:
    """An ordered set of distinct voter locations sharing one dimension."""

    def __init__(self, points: Iterable[Iterable]):
        pts = tuple(as_point(p) for p in points)
        if not pts:
            raise DegenerateInputError("a voter set needs at least one point")
        dim = len(pts[0])
        index: dict = {}
        for i, p in enumerate(pts):
            if len(p) != dim:
                raise DimensionMismatchError(
                    f"point {i} has dimension {len(p)}, expected {dim}"
                )
            j = index.setdefault(p, i)
            if j != i:
                raise DuplicatePointError(j, i, p)
        self._points = pts
        self._index = index
        self.dim = dim

    @property
    def points(self) -> tuple:
        return self._points

    def __len__(self) -> int:
        return len(self._points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self._points)

    def __getitem__(self, i: int) -> Point:
        return self._points[i]

    def __contains__(self, p) -> bool:
        return as_point(p) in self._index

    def index_of(self, p) -> Optional[int]:
        return self._index.get(as_point(p))

    def __eq__(self, other) -> bool:
        return isinstance(other, VoterSet) and self._points == other._points

    def __hash__(self) -> int:
        return hash(self._points)

    def __repr__(self) -> str:
        return f"VoterSet(dim={self.dim}, n={len(self)})"

    def map(self, fn) -> "VoterSet":
        return VoterSet(fn(p) for p in self._points)

    @cached_property
    def scaled(self) -> tuple[int, tuple]:
        """``(m, pts)`` with ``pts[i] == m * points[i]`` as integer tuples."""
        m = 1
        for p in self._points:
            for c in p:
                m = lcm(m, c.denominator)
        return m, tuple(tuple(int(c * m) for c in p) for p in self._points)


@dataclass(frozen=True)
class Line:
    """Line through ``base`` with primitive integer direction ``dir``.

    ``side(p)`` is +1 on the open half-line ``base + t*dir, t > 0`` and -1 on
    the opposite one.
    """

    base: Point
    dir: IntVector

    def __post_init__(self):
        if not any(self.dir):
            raise DegenerateInputError("line direction must be nonzero")

    @property
    def dim(self) -> int:
        return len(self.base)

    def parameter(self, p: Sequence) -> Optional[Fraction]:
        """``t`` with ``p == base + t*dir``, or None when ``p`` is off the line."""
        _check_dim(p, self.base)
        w = sub(p, self.base)
        k = next(i for i, a in enumerate(self.dir) if a)
        t = Fraction(w[k]) / self.dir[k]
        if any(wi != t * di for wi, di in zip(w, self.dir)):
            return None
        return t

    def side(self, p: Sequence) -> Optional[int]:
        """+1/-1 for the open half-lines, 0 at the base, None off the line."""
        t = self.parameter(p)
        return None if t is None else sign(t)

    def contains(self, p: Sequence) -> bool:
        return self.parameter(p) is not None

    def point_at(self, t) -> Point:
        return tuple(b + t * d for b, d in zip(self.base, self.dir))


@dataclass(frozen=True)
class Hyperplane:
    """``{x : <x, normal> = offset}``; build with :meth:`from_equation`."""

    normal: IntVector
    offset: Fraction

    @classmethod
    def from_equation(cls, normal: Sequence, offset) -> "Hyperplane":
        den = 1
        for a in normal:
            den = lcm(den, Fraction(a).denominator)
        ints = [int(Fraction(a) * den) for a in normal]
        prim, s = _primitive_int(ints)
        g = next(a // b for a, b in zip(ints, prim) if b)
        return cls(prim, Fraction(offset) * den / g)

    @property
    def dim(self) -> int:
        return len(self.normal)

    def value(self, p: Sequence) -> Fraction:
        _check_dim(p, self.normal)
        return dot(self.normal, p) - self.offset

    def side(self, p: Sequence) -> int:
        return sign(self.value(p))

    def contains(self, p: Sequence) -> bool:
        return self.value(p) == 0


@dataclass(frozen=True)
class PlaneBasis:
    """2-dimensional affine plane ``origin + span(u, v)``."""

    origin: Point
    u: IntVector
    v: IntVector

    def __post_init__(self):
        if rank([self.u, self.v]) != 2:
            raise DegenerateInputError("plane basis vectors must be independent")

    def coordinates(self, w: Sequence) -> Optional[tuple[Fraction, Fraction]]:
        """Coefficients ``(a, b)`` with ``w == a*u + b*v``; None if ``w`` leaves the plane."""
        u, v = self.u, self.v
        uu, uv, vv = dot(u, u), dot(u, v), dot(v, v)
        ab = solve2(uu, uv, uv, vv, dot(w, u), dot(w, v))
        a, b = ab
        if any(a * x + b * y != wi for x, y, wi in zip(u, v, w)):
            return None
        return a, b

    def contains_direction(self, w: Sequence) -> bool:
        return self.coordinates(w) is not None

    def contains_point(self, p: Sequence) -> bool:
        return self.contains_direction(sub(p, self.origin))


class LineGroup(NamedTuple):
    line: Line
    plus: tuple
    minus: tuple


@dataclass(frozen=True)
class AffineHull:
    kind: str  # "single-point" | "collinear" | "coplanar" | "full-or-higher"
    line: Optional[Line] = None
    plane: Optional[PlaneBasis] = None


# ---------------------------------------------------------------------------
# operations


def side_of_hyperplane(p: Sequence, h: Hyperplane) -> int:
    return h.side(p)


def project_onto_hyperplane(p: Sequence, h: Hyperplane) -> Point:
    _check_dim(p, h.normal)
    k = h.value(p) / dot(h.normal, h.normal)
    return tuple(Fraction(a) - k * c for a, c in zip(p, h.normal))


def reflect_across_hyperplane(p: Sequence, h: Hyperplane) -> Point:
    _check_dim(p, h.normal)
    k = 2 * h.value(p) / dot(h.normal, h.normal)
    return tuple(Fraction(a) - k * c for a, c in zip(p, h.normal))


def perpendicular_bisector(a: Sequence, b: Sequence) -> Hyperplane:
    """Hyperplane of points equidistant from ``a`` and ``b``.

    The canonical sign convention may put ``b`` on either side; use
    ``h.side(b)`` when the orientation matters.
    """
    _check_dim(a, b)
    a, b = as_point(a), as_point(b)
    if a == b:
        raise DegenerateInputError("bisector of coincident points")
    return Hyperplane.from_equation(sub(b, a), (dot(b, b) - dot(a, a)) / 2)


def line_through(x: Sequence, y: Sequence) -> Line:
    _check_dim(x, y)
    x, y = as_point(x), as_point(y)
    if x == y:
        raise DegenerateInputError("line through coincident points")
    return Line(x, canonical_direction(sub(y, x)))


def _offset_scale(x: Sequence, s: VoterSet) -> tuple[int, list]:
    # x scaled into the integer frame of s: m*x == n/d
    m, _ = s.scaled
    mx = [Fraction(c) * m for c in x]
    d = 1
    for c in mx:
        d = lcm(d, c.denominator)
    return d, [int(c * d) for c in mx]


def iter_directions(x: Sequence, s: VoterSet) -> Iterator[tuple[int, IntVector, int]]:
    """Yield ``(index, canonical direction, half-line sign)`` for every voter != x."""
    _check_dim(x, s[0])
    d, n = _offset_scale(x, s)
    _, pts = s.scaled
    for i, sp in enumerate(pts):
        raw = [d * a - b for a, b in zip(sp, n)]
        if any(raw):
            key, sg = _primitive_int(raw)
            yield i, key, sg


def direction_counts(x: Sequence, s: VoterSet) -> dict:
    """Map canonical direction -> ``[u, v]`` half-line counts about ``x``."""
    counts: dict = {}
    for _, key, sg in iter_directions(x, s):
        c = counts.get(key)
        if c is None:
            c = counts[key] = [0, 0]
        c[0 if sg > 0 else 1] += 1
    return counts


def group_by_lines(x: Sequence, s: VoterSet) -> list[LineGroup]:
    """Partition ``S \\ {x}`` by the lines through ``x``, in first-seen order."""
    x = as_point(x)
    groups: dict = {}
    for i, key, sg in iter_directions(x, s):
        g = groups.get(key)
        if g is None:
            g = groups[key] = ([], [])
        g[0 if sg > 0 else 1].append(s[i])
    return [LineGroup(Line(x, key), tuple(p), tuple(m)) for key, (p, m) in groups.items()]


def _half(v: Sequence) -> int:
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def angle_cmp(a: Sequence, b: Sequence) -> int:
    """Counterclockwise comparison of nonzero 2-vectors by angle from +x."""
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    c = a[0] * b[1] - a[1] * b[0]
    return -sign(c)


def circular_order(dirs: Sequence[Sequence]) -> list[int]:
    """Permutation sorting 2-vectors counterclockwise starting at angle 0.

    Uses only sign and cross-product tests; equal directions keep input order.
    """
    for d in dirs:
        if len(d) != 2:
            raise DimensionMismatchError("circular_order needs 2-dimensional vectors")
        if not any(d):
            raise DegenerateInputError("zero vector has no angle")
    return sorted(range(len(dirs)), key=cmp_to_key(lambda i, j: angle_cmp(dirs[i], dirs[j])))


def plane_from_directions(origin: Sequence, dirs: Sequence[Sequence]) -> Optional[PlaneBasis]:
    """A plane through ``origin`` containing all ``dirs``, or None if they span >= 3 dims."""
    origin = as_point(origin)
    idx = independent_indices(dirs, limit=3)
    if len(idx) >= 3:
        return None
    basis = [canonical_direction(dirs[i]) for i in idx]
    dim = len(origin)
    if dim < 2:
        return None
    e = [tuple(int(i == k) for i in range(dim)) for k in range(dim)]
    for cand in e:
        if len(basis) == 2:
            break
        if rank(basis + [cand]) == len(basis) + 1:
            basis.append(cand)
    return PlaneBasis(origin, basis[0], basis[1])


def affine_rank_probe(s: VoterSet) -> AffineHull:
    p0 = s[0]
    diffs = [sub(p, p0) for p in s.points[1:]]
    idx = independent_indices(diffs, limit=3)
    if not idx:
        return AffineHull("single-point")
    if len(idx) == 1:
        return AffineHull("collinear", line=Line(p0, canonical_direction(diffs[idx[0]])))
    if len(idx) == 2:
        u, v = (canonical_direction(diffs[i]) for i in idx)
        return AffineHull("coplanar", plane=PlaneBasis(p0, u, v))
    return AffineHull("full-or-higher")


def intersect_lines(l1: Line, l2: Line) -> Optional[Point]:
    """Unique common point of two lines, or None if parallel, equal or skew."""
    _check_dim(l1.base, l2.base)
    d1, d2 = l1.dir, l2.dir
    w = sub(l2.base, l1.base)
    st = solve2(dot(d1, d1), -dot(d1, d2), dot(d1, d2), -dot(d2, d2), dot(d1, w), dot(d2, w))
    if st is None:
        return None
    s, t = st
    p = l1.point_at(s)
    if p != l2.point_at(t):
        return None
    return p


def line_key(l: Line) -> tuple:
    """Base-independent key: (direction, point of the line closest to the origin)."""
    k = dot(l.base, l.dir) / Fraction(dot(l.dir, l.dir))
    return l.dir, tuple(b - k * d for b, d in zip(l.base, l.dir))
