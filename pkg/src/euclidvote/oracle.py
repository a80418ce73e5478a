"""Game-theoretic ground truth: scores, Bob's best reply and halfspace depth.

Against a fixed Alice point ``a`` Bob's claim set is always an open side of
the bisector of ``a`` and ``b``, i.e. ``{x : <x, c> > t}`` with
``t > <a, c>``, and every such halfspace is realised by reflecting ``a``
across ``<x, c> = t``.  Bob's optimum is therefore a search over normals
``c`` and thresholds ``t``.  Only the sign pattern of ``<x - a, c>`` over the
voters matters, so the normals are taken from the cells of the central
arrangement with normals ``x - a``: in the plane the directions perpendicular
to each ``x - a`` and one direction strictly inside each angular gap; in
space every cross product of two ``x - a`` refined by a second, lexicographic
direction inside the cell's link.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import ceil, gcd
from typing import Iterator, Sequence

from .errors import UnsupportedDimensionError
from .solver import _lines_through_voters
from .geometry import (
    Hyperplane,
    Point,
    VoterSet,
    _offset_scale,
    _primitive_int,
    as_point,
    circular_order,
    cross3,
    dot,
    independent_indices,
    intersect_lines,
    reflect_across_hyperplane,
    sign,
    squared_distance,
    sub,
)


@dataclass(frozen=True)
class Scores:
    v_a: int
    v_b: int
    abstentions: int

    @property
    def margin(self) -> int:
        return self.v_b - self.v_a


@dataclass(frozen=True)
class BestResponse:
    b: Point
    scores: Scores
    margin: int
    separating: Hyperplane


def evaluate(s: VoterSet, a: Sequence, b: Sequence) -> Scores:
    a, b = as_point(a), as_point(b)
    va = vb = ab = 0
    for x in s:
        da, db = squared_distance(a, x), squared_distance(b, x)
        if da < db:
            va += 1
        elif db < da:
            vb += 1
        else:
            ab += 1
    return Scores(va, vb, ab)


# ---------------------------------------------------------------------------
# candidate normals


def _rot90(v: Sequence[int]) -> tuple[int, int]:
    return (-v[1], v[0])


def _open_dirs_2d(vs: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    """One direction inside every open cell of the lines ``<z, g> = 0``."""
    crit = set()
    for z in vs:
        if z[0] or z[1]:
            r, _ = _primitive_int(_rot90(z))
            crit.add(r)
            crit.add((-r[0], -r[1]))
    if not crit:
        return [(1, 0)]
    dirs = [crit_dir for crit_dir in crit]
    order = circular_order(dirs)
    ring = [dirs[i] for i in order]
    out = []
    for i, r in enumerate(ring):
        q = ring[(i + 1) % len(ring)]
        c = r[0] * q[1] - r[1] * q[0]
        if c > 0:
            out.append((r[0] + q[0], r[1] + q[1]))
        else:  # antipodal neighbours: only one line in the arrangement
            out.append(_rot90(r))
    return out


def _critical_dirs_2d(vs: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    out = set()
    for z in vs:
        if z[0] or z[1]:
            r, _ = _primitive_int(_rot90(z))
            out.add(r)
            out.add((-r[0], -r[1]))
    return sorted(out)


def _lex_normals(ws: Sequence[Sequence[int]], dim: int) -> Iterator[tuple]:
    """Lexicographic normals ``(c,)`` or ``(c, c')`` covering every open cell."""
    nz = [w for w in ws if any(w)]
    if dim == 1:
        yield ((1,),)
        yield ((-1,),)
        return
    if dim == 2:
        for c in _critical_dirs_2d(nz):
            yield (c,)
        for c in _open_dirs_2d(nz):
            yield (c,)
        return
    if dim != 3:
        raise UnsupportedDimensionError(f"oracle supports dimensions 1-3, got {dim}")
    idx = independent_indices(nz, limit=2)
    if len(idx) < 2:
        base = nz[idx[0]] if idx else (1, 0, 0)
        c, _ = _primitive_int(base)
        yield (c,)
        yield (tuple(-x for x in c),)
        return
    seen = set()
    for w1, w2 in combinations(nz, 2):
        cr = cross3(w1, w2)
        if not any(cr):
            continue
        c0, _ = _primitive_int(cr)
        for c in (c0, tuple(-x for x in c0)):
            if c in seen:
                continue
            seen.add(c)
            zs = [w for w in nz if dot(w, c) == 0]
            u = zs[0]
            v = cross3(c, u)
            local = [(dot(z, u), dot(z, v)) for z in zs]
            for g in _open_dirs_2d(local):
                yield (c, tuple(g[0] * a + g[1] * b for a, b in zip(u, v)))


def _lex_sign(w: Sequence[int], normal: tuple) -> int:
    for c in normal:
        s = sign(dot(w, c))
        if s:
            return s
    return 0


def _realize(normal: tuple, ws: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Integer vector whose inner-product signs on ``ws`` match the lexicographic ones."""
    c = normal[0]
    if len(normal) == 1:
        return tuple(c)
    c1 = normal[1]
    eps = Fraction(1)
    for w in ws:
        p0, p1 = dot(w, c), dot(w, c1)
        if p0 and p1:
            eps = min(eps, Fraction(abs(p0), 2 * abs(p1)))
    vec = [a + eps * b for a, b in zip(c, c1)]
    den = eps.denominator
    prim, sgn = _primitive_int([int(x * den) for x in vec])
    return tuple(sgn * x for x in prim)


# ---------------------------------------------------------------------------
# oracles


def _frame(s: VoterSet, a: Sequence):
    """Integer frame: voters ``P``, Alice ``A`` and the factor back to real coordinates."""
    m, pts = s.scaled
    d, n = _offset_scale(a, s)
    return [tuple(d * c for c in p) for p in pts], tuple(n), d * m


def _check_dim(s: VoterSet) -> None:
    if s.dim > 3:
        raise UnsupportedDimensionError(f"oracle supports dimensions 1-3, got {s.dim}")


def best_response(s: VoterSet, a: Sequence) -> BestResponse:
    """Bob's reply maximising ``v_b - v_a`` over all ``b != a`` (d <= 3)."""
    _check_dim(s)
    a = as_point(a)
    P, A, factor = _frame(s, a)
    ws = [sub(p, A) for p in P]
    n = len(P)
    best = None
    for normal in _lex_normals(ws, s.dim):
        c = _realize(normal, ws)
        # doubled projections keep every threshold integral
        if len(c) == 2:
            c0, c1 = c
            proj = sorted([2 * (c0 * x + c1 * y) for x, y in P])
        else:
            proj = sorted([2 * dot(p, c) for p in P])
        pa = 2 * dot(A, c)
        levels = sorted(set(proj) | {pa})
        k = bisect_left(levels, pa)
        le = bisect_right(proj, pa)  # voters at or below the current level
        for j in range(k, len(levels)):
            lo = levels[j]
            if lo > pa:
                lt = le
                le += proj.count(lo)
                cand = (n - le) - lt, lo, lt, n - le
                if best is None or cand[0] > best[0]:
                    best = cand + (c,)
            hi = levels[j + 1] if j + 1 < len(levels) else lo + 4
            cand = (n - le) - le, (lo + hi) // 2, le, n - le
            if best is None or cand[0] > best[0]:
                best = cand + (c,)
    margin, t2, below, above, c = best
    t = Fraction(t2, 2)
    h = Hyperplane.from_equation(c, t / factor)
    b = reflect_across_hyperplane(a, h)
    scores = evaluate(s, a, b)
    if (scores.v_a, scores.v_b) != (below, above):
        raise AssertionError("best response does not reproduce its own scores")
    return BestResponse(b, scores, margin, h)


def guaranteed_votes(s: VoterSet, a: Sequence) -> int:
    """Closed-halfspace (Tukey) depth of ``a``: the fewest votes Bob can hold Alice to."""
    _check_dim(s)
    a = as_point(a)
    P, A, _ = _frame(s, a)
    ws = [sub(p, A) for p in P]
    best = len(ws)
    for normal in _lex_normals(ws, s.dim):
        cnt = sum(1 for w in ws if _lex_sign(w, normal) <= 0)
        if cnt < best:
            best = cnt
    return best


_PROBE_DIRS = {
    1: [(1,)],
    2: [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1), (1, -2), (2, -1)],
    3: [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, -1, 0), (1, 0, -1), (0, 1, -1),
        (1, 1, -1), (1, -1, 1), (-1, 1, 1)],
}


def _rado_candidates(s: VoterSet) -> list[Point]:
    out = dict.fromkeys(s.points)
    lines = _lines_through_voters(s)
    for l1, l2 in combinations(lines, 2):
        p = intersect_lines(l1, l2)
        if p is not None:
            out.setdefault(p)
    if s.dim == 3:
        n = len(s)
        out.setdefault(tuple(sum(p[k] for p in s) / n for k in range(3)))
        for tri in combinations(s.points, 3):
            nrm = cross3(sub(tri[1], tri[0]), sub(tri[2], tri[0]))
            if not any(nrm):
                continue
            off = dot(nrm, tri[0])
            for l in lines:
                den = dot(nrm, l.dir)
                if den:
                    t = (off - dot(nrm, l.base)) / den
                    out.setdefault(l.point_at(t))
    return list(out)


def _rado_candidates_2d(s: VoterSet) -> list[tuple[int, int, int]]:
    """Voters and voter-line intersections as reduced homogeneous ``(X, Y, W)``, W > 0,
    in the integer frame where voter ``p`` sits at ``m * p``."""
    _, pts = s.scaled
    lines = {}
    for (x1, y1), (x2, y2) in combinations(pts, 2):
        a, b = y2 - y1, x1 - x2
        key, sg = _primitive_int((a, b, a * x1 + b * y1))
        lines.setdefault(key)
    out = dict.fromkeys((x, y, 1) for x, y in pts)
    for (a1, b1, c1), (a2, b2, c2) in combinations(lines, 2):
        det = a1 * b2 - a2 * b1
        if det:
            out.setdefault(_reduce_h(c1 * b2 - c2 * b1, a1 * c2 - a2 * c1, det))
    return list(out)


def _reduce_h(x: int, y: int, w: int) -> tuple[int, int, int]:
    if w < 0:
        x, y, w = -x, -y, -w
    g = gcd(gcd(x, y), w)
    return x // g, y // g, w // g


def find_rado_point(s: VoterSet) -> tuple[Point, int]:
    """Deepest point among voters and intersections of voter lines.

    In three dimensions the candidate set additionally holds the centroid and
    the intersections of voter lines with voter planes, and is only a
    best-effort search.  Raises AssertionError when the depth found is below
    ``ceil(n / (d + 1))``, which the centerpoint theorem guarantees is
    attainable.
    """
    _check_dim(s)
    probes = _PROBE_DIRS[s.dim]
    if s.dim == 2:
        # homogeneous integer candidates in the frame where voters are m * p
        m, pts = s.scaled
        hom = _rado_candidates_2d(s)
        proj = [sorted(c[0] * x + c[1] * y for x, y in pts) for c in probes]

        def upper(i: int) -> int:
            X, Y, W = hom[i]
            ub = len(pts)
            for c, pr in zip(probes, proj):
                v = c[0] * X + c[1] * Y
                ub = min(ub, bisect_right(pr, v // W), len(pr) - bisect_left(pr, -((-v) // W)))
            return ub

        def point(i: int) -> Point:
            X, Y, W = hom[i]
            return (Fraction(X, W * m), Fraction(Y, W * m))

        count = len(hom)
    else:
        cands = _rado_candidates(s)
        proj = [sorted(dot(p, c) for p in s) for c in probes]

        def upper(i: int) -> int:
            x = cands[i]
            ub = len(s)
            for c, pr in zip(probes, proj):
                v = dot(x, c)
                ub = min(ub, bisect_right(pr, v), len(pr) - bisect_left(pr, v))
            return ub

        def point(i: int) -> Point:
            return cands[i]

        count = len(cands)

    ranked = sorted(((upper(i), i) for i in range(count)), key=lambda t: (-t[0], t[1]))
    best_depth, best_idx = -1, None
    for ub, i in ranked:
        if ub < best_depth:
            break
        dep = guaranteed_votes(s, point(i))
        if dep > best_depth or (dep == best_depth and i < best_idx):
            best_depth, best_idx = dep, i
    need = ceil(len(s) / (s.dim + 1))
    if best_depth < need:
        raise AssertionError(f"deepest candidate has depth {best_depth} < {need}")
    return point(best_idx), best_depth
