"""Decide the two-candidate voting game on a finite voter set.

Alice places first, Bob replies, every voter votes for the strictly nearer
candidate and Alice wins ties.  The dispatch is:

* one voter, or all voters on a line: median voter rule along the line;
* an odd number of voters: Alice wins exactly at a voter about which every
  line is even-balanced;
* an even number of voters: Alice wins exactly at a point where every line is
  balanced and the odd-balanced lines (if any, and then only at a voter) lie in
  one plane and alternate heavy/light around it.

Off the collinear case the winning point is unique, so the scan stops at the
first candidate that passes.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Callable, Optional, Sequence

from .balance import (
    BalanceClass,
    BalanceReport,
    alternation_check,
    classify_line,
    line_reports,
    odd_lines_coplanar,
    hyperplane_report,
)
from .errors import PreconditionError
from .geometry import (
    Hyperplane,
    Line,
    Point,
    VoterSet,
    _primitive_int,
    affine_rank_probe,
    as_point,
    canonical_direction,
    direction_counts,
    independent_indices,
    intersect_lines,
    line_key,
    line_through,
    rank,
    sub,
)

log = logging.getLogger(__name__)


class Outcome(str, Enum):
    ALICE = "alice"
    BOB = "bob"


class WitnessKind(str, Enum):
    PERFECT_HYPERPLANE_MISSED = "perfect-hyperplane-missed"
    UNBALANCED_LINE = "unbalanced-line"
    NON_COPLANAR = "non-coplanar-odd-lines"
    ALTERNATION = "alternation-failure"
    HALFSPACE_MAJORITY = "halfspace-majority"


@dataclass(frozen=True)
class Witness:
    """Why ``candidate`` is not a winning point.

    ``unbalanced-line``: ``line`` through the candidate has counts ``counts``
    that break the required balance (any imbalance when the voter count is odd
    or the candidate is not a voter, a gap of two or more otherwise).
    ``non-coplanar-odd-lines``: ``lines`` are three odd-balanced lines whose
    directions span three dimensions.  ``alternation-failure``: ``lines`` are
    all odd-balanced lines, coplanar but not alternating.
    ``perfect-hyperplane-missed`` and ``halfspace-majority`` carry a
    ``hyperplane``; the solver itself never emits them but
    :func:`validate_witness` accepts them.
    """

    kind: WitnessKind
    candidate: Point
    line: Optional[Line] = None
    lines: tuple = ()
    hyperplane: Optional[Hyperplane] = None
    counts: Optional[tuple] = None


@dataclass
class Stats:
    candidates_scanned: int = 0
    lines_classified: int = 0
    point_visits: int = 0

    def merge(self, other: "Stats") -> None:
        self.candidates_scanned += other.candidates_scanned
        self.lines_classified += other.lines_classified
        self.point_visits += other.point_visits


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    winning_point: Optional[Point] = None
    winning_segment: Optional[tuple] = None
    unique: bool = False
    witness: Optional[Witness] = None
    stats: Stats = field(default_factory=Stats, compare=False)

    @property
    def alice_wins(self) -> bool:
        return self.outcome is Outcome.ALICE


# ---------------------------------------------------------------------------
# per-candidate checks


def _odd_violation(x: Point, s: VoterSet, stats: Stats) -> tuple[Optional[Witness], int]:
    counts = direction_counts(x, s)
    stats.point_visits += len(s)
    stats.lines_classified += len(counts)
    first = None
    bad = 0
    for key, (u, v) in counts.items():
        if u != v:
            bad += 1
            if first is None:
                first = Witness(WitnessKind.UNBALANCED_LINE, x, line=Line(x, key), counts=(u, v))
    return first, bad


def _even_violation(x: Point, s: VoterSet, stats: Stats) -> Optional[Witness]:
    counts = direction_counts(x, s)
    stats.point_visits += len(s)
    stats.lines_classified += len(counts)
    in_s = x in s
    odd_keys = []
    for key, (u, v) in counts.items():
        gap = abs(u - v)
        if gap >= 2 or (gap == 1 and not in_s):
            return Witness(WitnessKind.UNBALANCED_LINE, x, line=Line(x, key), counts=(u, v))
        if gap == 1:
            odd_keys.append(key)
    if not in_s:
        return None
    odd = [BalanceReport(Line(x, k), *counts[k]) for k in odd_keys]
    if len(odd) % 2 != 1:
        raise AssertionError("parity law violated: even-size set with an even number of odd lines")
    plane = odd_lines_coplanar(x, [r.line for r in odd])
    if plane is None:
        idx = independent_indices([r.line.dir for r in odd], limit=3)
        return Witness(WitnessKind.NON_COPLANAR, x, lines=tuple(odd[i].line for i in idx))
    if not alternation_check(x, plane, odd):
        return Witness(WitnessKind.ALTERNATION, x, lines=tuple(r.line for r in odd))
    return None


def check_point_odd(x: Sequence, s: VoterSet) -> bool:
    """Is every line through the voter ``x`` even-balanced?"""
    x = as_point(x)
    if len(s) % 2 == 0:
        raise PreconditionError("check_point_odd needs an odd number of voters")
    if x not in s:
        raise PreconditionError("with an odd number of voters only a voter can win")
    return _odd_violation(x, s, Stats())[0] is None


def check_point_even(x: Sequence, s: VoterSet) -> bool:
    if len(s) % 2 == 1:
        raise PreconditionError("check_point_even needs an even number of voters")
    return _even_violation(as_point(x), s, Stats()) is None


# ---------------------------------------------------------------------------
# witnesses


def validate_witness(s: VoterSet, w: Witness) -> bool:
    """Replay ``w`` against ``s``; True iff it really shows ``w.candidate`` loses."""
    x = w.candidate
    n = len(s)
    in_s = x in s
    if w.kind is WitnessKind.UNBALANCED_LINE:
        r = classify_line(x, w.line, s)
        if w.counts is not None and (r.u, r.v) != tuple(w.counts):
            return False
        if n % 2 == 0 and in_s:
            return abs(r.u - r.v) >= 2
        return r.u != r.v
    if w.kind is WitnessKind.NON_COPLANAR:
        if n % 2 or not in_s or len(w.lines) != 3:
            return False
        reports = [classify_line(x, l, s) for l in w.lines]
        return all(r.cls is BalanceClass.ODD for r in reports) and rank([l.dir for l in w.lines]) == 3
    if w.kind is WitnessKind.ALTERNATION:
        if n % 2 or not in_s:
            return False
        reports = line_reports(x, s)
        if any(not r.balanced for r in reports):
            return False
        odd = [r for r in reports if r.cls is BalanceClass.ODD]
        if {r.line for r in odd} != set(w.lines):
            return False
        plane = odd_lines_coplanar(x, [r.line for r in odd])
        return plane is not None and not alternation_check(x, plane, odd)
    if w.kind is WitnessKind.PERFECT_HYPERPLANE_MISSED:
        h = w.hyperplane
        rep = hyperplane_report(h, s)
        perfect = rep.perfect_odd if n % 2 else rep.perfect_even
        return perfect and not h.contains(x)
    if w.kind is WitnessKind.HALFSPACE_MAJORITY:
        h = w.hyperplane
        rep = hyperplane_report(h, s)
        return h.contains(x) and 2 * max(rep.plus, rep.minus) > n
    return False


# ---------------------------------------------------------------------------
# candidate scanning


@dataclass
class _Probe:
    index: int
    witness: Optional[Witness]
    score: int
    stats: Stats


def _scan(count: int, probe: Callable[[int], _Probe], workers: Optional[int]) -> list[_Probe]:
    """Probe candidates ``0..count-1`` in order up to and including the first pass.

    With ``workers > 1`` the candidates are split into contiguous chunks probed
    concurrently; the merged result is identical to the sequential one.
    """
    if not workers or workers <= 1 or count < 2:
        out = []
        for i in range(count):
            p = probe(i)
            out.append(p)
            if p.witness is None:
                break
        return out

    size = -(-count // workers)
    chunks = [range(k, min(k + size, count)) for k in range(0, count, size)]

    def run(chunk: range) -> list[_Probe]:
        res = []
        for i in chunk:
            p = probe(i)
            res.append(p)
            if p.witness is None:
                break
        return res

    with ThreadPoolExecutor(max_workers=workers) as ex:
        results = list(ex.map(run, chunks))
    out = []
    for res in results:
        out.extend(res)
        if res and res[-1].witness is None:
            break
    return out


def _total(probes: list[_Probe]) -> Stats:
    st = Stats()
    for p in probes:
        st.merge(p.stats)
    st.candidates_scanned = len(probes)
    return st


# ---------------------------------------------------------------------------
# solvers


def _line_parameter_order(s: VoterSet) -> tuple[Line, list]:
    hull = affine_rank_probe(s)
    if hull.kind == "single-point":
        return None, [(Fraction(0), s[0])]
    if hull.kind != "collinear":
        raise PreconditionError("voters are not collinear")
    line = hull.line
    return line, sorted(((line.parameter(p), p) for p in s), key=lambda tp: tp[0])


def solve_1d(s: VoterSet) -> Verdict:
    """Median voter rule for voters on a single line (in any dimension)."""
    _, ordered = _line_parameter_order(s)
    n = len(ordered)
    stats = Stats(candidates_scanned=1, point_visits=n)
    if n % 2 == 1:
        return Verdict(Outcome.ALICE, winning_point=ordered[n // 2][1], unique=True, stats=stats)
    lo, hi = ordered[n // 2 - 1][1], ordered[n // 2][1]
    return Verdict(Outcome.ALICE, winning_segment=(lo, hi), unique=False, stats=stats)


def solve_odd(s: VoterSet, workers: Optional[int] = None) -> Verdict:
    """Scan the voters for one about which every line is even-balanced."""
    if len(s) % 2 == 0 or len(s) < 3:
        raise PreconditionError("solve_odd needs an odd number (>= 3) of voters")
    pts = s.points

    def probe(i: int) -> _Probe:
        st = Stats()
        w, bad = _odd_violation(pts[i], s, st)
        return _Probe(i, w, bad, st)

    probes = _scan(len(pts), probe, workers)
    stats = _total(probes)
    last = probes[-1]
    if last.witness is None:
        return Verdict(Outcome.ALICE, winning_point=pts[last.index], unique=True, stats=stats)
    best = min(probes, key=lambda p: (p.score, p.index))
    witness = best.witness
    if not validate_witness(s, witness):
        raise AssertionError(f"emitted witness failed replay: {witness}")
    return Verdict(Outcome.BOB, witness=witness, stats=stats)


def _lines_through_voters(s: VoterSet) -> list[Line]:
    """Distinct lines containing at least two voters (first-seen order)."""
    seen: dict = {}
    for i, p in enumerate(s):
        for key, (u, v) in direction_counts(p, s).items():
            l = Line(p, key)
            seen.setdefault(line_key(l), l)
    return list(seen.values())


def enumerate_candidates_even(s: VoterSet) -> list[Point]:
    """Voters (input order) then every intersection point of two voter lines.

    Intersections that are voters are not repeated; the rest are sorted
    lexicographically.  This is the exhaustive candidate set, O(n^4) in size.
    """
    if s.dim == 2:
        return list(s.points) + _all_intersections_2d(s)
    lines = _lines_through_voters(s)
    extra = set()
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            p = intersect_lines(lines[i], lines[j])
            if p is not None and p not in s:
                extra.add(p)
    return list(s.points) + sorted(extra)


def _voter_lines_2d(s: VoterSet) -> list[tuple[int, int, int]]:
    """Distinct voter lines ``a*X + b*Y = c`` in the integer frame of ``s``."""
    _, pts = s.scaled
    seen = {}
    for (x1, y1), (x2, y2) in combinations(pts, 2):
        a, b = y2 - y1, x1 - x2
        key, _ = _primitive_int((a, b, a * x1 + b * y1))
        seen.setdefault(key)
    return list(seen)


def _all_intersections_2d(s: VoterSet) -> list[Point]:
    m, _ = s.scaled
    lines = _voter_lines_2d(s)
    hom = set()
    for i, (a1, b1, c1) in enumerate(lines):
        for a2, b2, c2 in lines[i + 1:]:
            det = a1 * b2 - a2 * b1
            if det:
                hom.add((c1 * b2 - c2 * b1, a1 * c2 - a2 * c1, det))
    out = {(Fraction(x, w * m), Fraction(y, w * m)) for x, y, w in hom}
    return sorted(p for p in out if p not in s)


def _pruned_intersections(s: VoterSet) -> list[Point]:
    """Non-voter points that can possibly win, sorted lexicographically.

    A winning non-voter ``x`` has every voter paired with another across it,
    so ``x`` lies on a voter line through ``S[0]`` and on one through
    ``S[1]``; if those coincide, on the line ``S[0]S[1]`` and a voter line
    through the first voter off that line.
    """
    if s.dim == 2:
        return _pruned_intersections_2d(s)
    p0, p1 = s[0], s[1]
    l0 = [Line(p0, k) for k in direction_counts(p0, s)]
    l1 = [Line(p1, k) for k in direction_counts(p1, s)]
    join = line_through(p0, p1)
    out = set()
    for a in l0:
        if a.dir == join.dir:
            continue
        for b in l1:
            if b.dir == join.dir:
                continue
            p = intersect_lines(a, b)
            if p is not None:
                out.add(p)
    p2 = next(p for p in s if not join.contains(p))
    for k in direction_counts(p2, s):
        p = intersect_lines(join, Line(p2, k))
        if p is not None:
            out.add(p)
    return sorted(p for p in out if p not in s)


def _pruned_intersections_2d(s: VoterSet) -> list[Point]:
    m, pts = s.scaled

    def lines_through(i: int) -> list[tuple[int, int, int]]:
        (px, py) = pts[i]
        out = []
        for dx, dy in direction_counts(s[i], s):
            out.append((dy, -dx, dy * px - dx * py))
        return out

    def meet(l1, l2):
        a1, b1, c1 = l1
        a2, b2, c2 = l2
        det = a1 * b2 - a2 * b1
        if det == 0:
            return None
        return (c1 * b2 - c2 * b1, a1 * c2 - a2 * c1, det)

    p0, p1 = pts[0], pts[1]
    jd = (p1[0] - p0[0], p1[1] - p0[1])
    join = (jd[1], -jd[0], jd[1] * p0[0] - jd[0] * p0[1])

    def on_join(l) -> bool:
        return l[0] * jd[0] + l[1] * jd[1] == 0 and l[2] * join[0] == join[2] * l[0] and l[2] * join[1] == join[2] * l[1]

    l0 = [l for l in lines_through(0) if not on_join(l)]
    l1 = [l for l in lines_through(1) if not on_join(l)]
    hom = set()
    for a in l0:
        for b in l1:
            h = meet(a, b)
            if h is not None:
                hom.add(h)
    k2 = next(i for i, (x, y) in enumerate(pts) if join[0] * x + join[1] * y != join[2])
    for l in lines_through(k2):
        h = meet(join, l)
        if h is not None:
            hom.add(h)
    out = {(Fraction(x, w * m), Fraction(y, w * m)) for x, y, w in hom}
    return sorted(p for p in out if p not in s)


def solve_even(s: VoterSet, workers: Optional[int] = None) -> Verdict:
    if len(s) % 2 == 1 or len(s) < 2:
        raise PreconditionError("solve_even needs an even number of voters")
    if affine_rank_probe(s).kind in ("single-point", "collinear"):
        raise PreconditionError("solve_even needs non-collinear voters")
    pts = s.points
    cands = list(pts) + _pruned_intersections(s)
    n_voters = len(pts)
    # canonical directions from each voter to every other voter
    dirs_from = [None] * n_voters

    def reachable(x: Point, i: int, st: Stats) -> bool:
        if dirs_from[i] is None:
            dirs_from[i] = frozenset(direction_counts(pts[i], s))
        st.point_visits += 1
        return canonical_direction(sub(x, pts[i])) in dirs_from[i]

    def probe(i: int) -> _Probe:
        st = Stats()
        x = cands[i]
        if i >= n_voters:
            for j in range(n_voters):
                if not reachable(x, j, st):
                    # the line from x through voter j carries no other voter
                    w = Witness(WitnessKind.UNBALANCED_LINE, x, line=line_through(x, pts[j]))
                    return _Probe(i, w, 1, st)
        w = _even_violation(x, s, st)
        return _Probe(i, w, 0 if w is None else 1, st)

    # dirs_from is filled lazily; fill it up front when running threads
    if workers and workers > 1:
        for j in range(n_voters):
            dirs_from[j] = frozenset(direction_counts(pts[j], s))

    probes = _scan(len(cands), probe, workers)
    stats = _total(probes)
    last = probes[-1]
    if last.witness is None:
        return Verdict(Outcome.ALICE, winning_point=cands[last.index], unique=True, stats=stats)
    witness = probes[0].witness
    if not validate_witness(s, witness):
        raise AssertionError(f"emitted witness failed replay: {witness}")
    return Verdict(Outcome.BOB, witness=witness, stats=stats)


def solve(s: VoterSet, workers: Optional[int] = None) -> Verdict:
    """Decide the game on ``s``; returns Alice's winning point/segment or a Bob witness."""
    kind = affine_rank_probe(s).kind
    log.debug("solve: n=%d dim=%d hull=%s", len(s), s.dim, kind)
    if kind in ("single-point", "collinear"):
        return solve_1d(s)
    if len(s) % 2 == 1:
        return solve_odd(s, workers)
    return solve_even(s, workers)
