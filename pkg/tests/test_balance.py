import math
import random
from fractions import Fraction as F

import pytest

from euclidvote.balance import (
    BalanceClass,
    alternation_check,
    balance_class,
    classify_line,
    hyperplane_report,
    line_reports,
    odd_lines_coplanar,
)
from euclidvote.errors import DimensionMismatchError, PreconditionError
from euclidvote.generate import fig1, fig2
from euclidvote.geometry import Hyperplane, Line, VoterSet, canonical_direction, line_through


def test_balance_class_table():
    assert balance_class(0, 0) is BalanceClass.TRIVIAL_EVEN
    assert balance_class(3, 3) is BalanceClass.EVEN
    assert balance_class(2, 1) is BalanceClass.ODD
    assert balance_class(0, 1) is BalanceClass.ODD
    assert balance_class(4, 2) is BalanceClass.UNBALANCED


def test_classify_line_trivial_even():
    s = VoterSet([(0, 0), (1, 0), (-1, 0)])
    r = classify_line((0, 0), Line((F(0), F(0)), (0, 1)), s)
    assert (r.u, r.v, r.cls) == (0, 0, BalanceClass.TRIVIAL_EVEN)
    assert r.heavy_plus is None


def test_classify_line_base_must_be_x():
    s = VoterSet([(0, 0), (1, 0)])
    with pytest.raises(PreconditionError):
        classify_line((1, 1), line_through((0, 0), (1, 0)), s)


def test_reference_odd_configuration_steepest_line():
    s = fig1()
    reports = line_reports((0, 0), s)
    # steepest line through the origin = largest |dy/dx|
    steep = max(reports, key=lambda r: math.inf if r.line.dir[0] == 0 else abs(r.line.dir[1] / r.line.dir[0]))
    assert (steep.u, steep.v, steep.cls) == (3, 3, BalanceClass.EVEN)
    assert all(r.cls is BalanceClass.EVEN for r in reports)


def test_reference_even_configuration_vertical_line():
    s = fig2()
    r = classify_line((0, 0), Line((F(0), F(0)), (0, 1)), s)
    assert (r.u, r.v) == (2, 1)
    assert r.cls is BalanceClass.ODD and r.heavy_plus is True


def test_hyperplane_report_flags():
    s = VoterSet([(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)])
    rep = hyperplane_report(Hyperplane.from_equation((1, 0), 0), s)
    assert (rep.plus, rep.on, rep.minus) == (1, 3, 1)
    assert rep.good and not rep.perfect_odd
    rep = hyperplane_report(Hyperplane.from_equation((1, 1), 0), s)
    assert rep.perfect_odd
    s4 = VoterSet([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert hyperplane_report(Hyperplane.from_equation((1, 1), 1), s4).perfect_even
    assert not hyperplane_report(Hyperplane.from_equation((1, 0), F(1, 2)), s4).perfect_even
    with pytest.raises(DimensionMismatchError):
        hyperplane_report(Hyperplane.from_equation((1, 0, 0), 0), s4)


def test_hyperplane_report_partition():
    rng = random.Random(3)
    for _ in range(200):
        s = VoterSet({(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(12)})
        h = Hyperplane.from_equation((rng.randint(-3, 3), rng.randint(1, 3)), rng.randint(-4, 4))
        rep = hyperplane_report(h, s)
        assert rep.plus + rep.on + rep.minus == len(s)


def test_odd_lines_coplanar():
    x = (F(0), F(0), F(0))
    l1, l2, l3 = Line(x, (1, 0, 0)), Line(x, (0, 1, 0)), Line(x, (1, 1, 0))
    plane = odd_lines_coplanar(x, [l1, l2, l3])
    assert plane is not None and plane.contains_direction((3, -2, 0))
    assert odd_lines_coplanar(x, [l1, l2, Line(x, (0, 0, 1))]) is None
    assert odd_lines_coplanar(x, []) is None
    with pytest.raises(PreconditionError):
        odd_lines_coplanar(x, [Line((F(1), F(0), F(0)), (1, 0, 0))])


def test_alternation_check_rejects_bad_reports():
    s = VoterSet([(0, 0), (1, 0), (2, 0), (-1, 0)])
    reports = line_reports((0, 0), s)
    plane = odd_lines_coplanar((0, 0), [r.line for r in reports])
    assert reports[0].cls is BalanceClass.ODD
    assert alternation_check((0, 0), plane, reports) is True  # a single odd line alternates trivially
    s2 = VoterSet([(0, 0), (1, 0), (-1, 0)])
    with pytest.raises(PreconditionError):
        alternation_check((0, 0), plane, line_reports((0, 0), s2))


# --- literal transcription oracle ----------------------------------------------


def _angle(v):
    return math.atan2(v[1], v[0]) % (2 * math.pi)


def _oracle_alternates(lines):
    """Label every half-line heavy/light, sort by atan2 angle, demand alternation."""
    halves = []
    for d, heavy_plus in lines:
        halves.append((_angle(d), heavy_plus))
        halves.append((_angle((-d[0], -d[1])), not heavy_plus))
    halves.sort()
    labels = [h for _, h in halves]
    return all(labels[i] != labels[i - 1] for i in range(len(labels)))


def _configuration(rng, k, alternate):
    """``k`` odd-balanced lines through the origin plus a few even-balanced ones."""
    dirs = set()
    while len(dirs) < k + 2:
        v = (rng.randint(-9, 9), rng.randint(-9, 9))
        if any(v):
            dirs.add(canonical_direction(v))
    dirs = sorted(dirs)
    rng.shuffle(dirs)
    odd, even = dirs[:k], dirs[k:]
    if alternate:
        halves = sorted([(_angle(d), i, True) for i, d in enumerate(odd)]
                        + [(_angle((-d[0], -d[1])), i, False) for i, d in enumerate(odd)])
        heavy = [None] * k
        for pos, (_, i, plus) in enumerate(halves):
            if plus:
                heavy[i] = pos % 2 == 0
        if rng.random() < 0.3:
            j = rng.randrange(k)
            heavy[j] = not heavy[j]
    else:
        heavy = [rng.random() < 0.5 for _ in range(k)]
    pts = [(0, 0)]
    for d, hp in zip(odd, heavy):
        light = rng.randint(0, 2)
        up, down = (light + 1, light) if hp else (light, light + 1)
        pts += [(d[0] * t, d[1] * t) for t in range(1, up + 1)]
        pts += [(-d[0] * t, -d[1] * t) for t in range(1, down + 1)]
    for d in even[: rng.randint(0, 2)]:
        m = rng.randint(1, 2)
        pts += [(d[0] * t, d[1] * t) for t in range(1, m + 1)]
        pts += [(-d[0] * t, -d[1] * t) for t in range(1, m + 1)]
    return pts, list(zip(odd, heavy))


def _embed(rng):
    """A random injective linear map from the plane into 3-space."""
    while True:
        cols = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(2)]
        cr = (cols[0][1] * cols[1][2] - cols[0][2] * cols[1][1],
              cols[0][2] * cols[1][0] - cols[0][0] * cols[1][2],
              cols[0][0] * cols[1][1] - cols[0][1] * cols[1][0])
        if any(cr):
            return lambda p: tuple(p[0] * cols[0][i] + p[1] * cols[1][i] for i in range(3))


def test_alternation_matches_transcription_oracle():
    rng = random.Random(2024)
    agree = positives = 0
    runs = 10_000
    for trial in range(runs):
        k = rng.randint(1, 9)
        pts, lines = _configuration(rng, k, alternate=trial % 2 == 0)
        expected = _oracle_alternates(lines)
        if trial % 4 == 3:
            f = _embed(rng)
            pts = [f(p) for p in pts]
        s = VoterSet(pts)
        x = s[0]
        odd = [r for r in line_reports(x, s) if r.cls is BalanceClass.ODD]
        assert len(odd) == k
        plane = odd_lines_coplanar(x, [r.line for r in odd])
        assert plane is not None
        got = alternation_check(x, plane, odd)
        assert got == expected, (pts, lines)
        agree += 1
        positives += got
    assert agree == runs
    assert positives > runs // 10  # both outcomes are well represented
