import random
from dataclasses import replace
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from euclidvote.errors import PreconditionError
from euclidvote.generate import (
    fig1,
    fig1_even,
    fig2,
    perturbed_circle,
    polygon_center,
    quadrilateral,
    random_general_position,
    simplex,
)
from euclidvote.geometry import Line, VoterSet
from euclidvote.oracle import best_response
from euclidvote.solver import (
    Outcome,
    WitnessKind,
    check_point_even,
    check_point_odd,
    enumerate_candidates_even,
    solve,
    solve_1d,
    solve_even,
    solve_odd,
    validate_witness,
)

from _support import random_affine, random_set


def _check(s, x):
    return check_point_odd(x, s) if len(s) % 2 else check_point_even(x, s)


def _candidates(s):
    return list(s) if len(s) % 2 else enumerate_candidates_even(s)


def _slow_solve(s):
    """Exhaustive scan of the full candidate set with the per-point checks."""
    winners = [x for x in _candidates(s) if _check(s, x)]
    assert len(winners) <= 1
    return winners[0] if winners else None


# --- named configurations ------------------------------------------------------


@pytest.mark.parametrize("make, point", [
    (fig1, (0, 0)),
    (fig1_even, (0, 0)),
    (fig2, (0, 0)),
    (quadrilateral, (F(40, 19), F(24, 19))),
])
def test_alice_configurations(make, point):
    v = solve(make())
    assert v.outcome is Outcome.ALICE and v.unique
    assert v.winning_point == point


@pytest.mark.parametrize("m", [3, 4, 5, 6, 7, 8])
def test_polygon_with_center(m):
    v = solve(polygon_center(m))
    assert v.alice_wins and v.winning_point == (0, 0)


def test_perturbed_circle_with_four_points_is_alice():
    # four points in the plane always admit a winner
    assert solve(perturbed_circle(4)).alice_wins


@pytest.mark.parametrize("n", [6, 8, 10])
def test_perturbed_circle_is_bob(n):
    v = solve(perturbed_circle(n))
    assert v.outcome is Outcome.BOB
    assert validate_witness(perturbed_circle(n), v.witness)


def test_unperturbed_circle_is_alice():
    # the same construction with antipodal pairs intact has its centre as the winner
    s = perturbed_circle(6)
    pts = list(s)
    pts[0] = tuple(-c for c in pts[3])
    v = solve(VoterSet(pts))
    assert v.alice_wins and v.winning_point == (0, 0)


def test_simplex_is_bob():
    v2, v3 = solve(simplex(2)), solve(simplex(3))
    assert v2.outcome is Outcome.BOB and v2.witness.kind is WitnessKind.UNBALANCED_LINE
    assert v3.outcome is Outcome.BOB and v3.witness.kind is WitnessKind.NON_COPLANAR


def test_fig1_even_winner_is_not_a_voter():
    s = fig1_even()
    assert len(s) == 18 and (0, 0) not in s


# --- one-dimensional and collinear inputs ---------------------------------------


def test_median_voter_odd():
    v = solve_1d(VoterSet([(1,), (3,), (7,)]))
    assert v.winning_point == (3,) and v.unique


def test_median_voter_even_segment():
    v = solve(VoterSet([(7,), (1,), (9,), (3,)]))
    assert v.winning_point is None and v.winning_segment == ((3,), (7,)) and not v.unique


def test_median_voter_embedded_in_3d():
    def f(t):
        return (1 + 2 * t, -1 + t, F(1, 2) - 3 * t)
    v = solve(VoterSet([f(1), f(3), f(7)]))
    assert v.winning_point == f(3)
    v = solve(VoterSet([f(9), f(1), f(3), f(7)]))
    assert set(v.winning_segment) == {f(3), f(7)}


def test_two_voters_and_single_voter():
    v = solve(VoterSet([(0, 0), (2, 2)]))
    assert set(v.winning_segment) == {(0, 0), (2, 2)}
    v = solve(VoterSet([(5, 1)]))
    assert v.winning_point == (5, 1) and v.unique


def test_preconditions():
    odd = VoterSet([(0, 0), (1, 0), (0, 1)])
    even = VoterSet([(0, 0), (1, 0), (0, 1), (1, 1)])
    with pytest.raises(PreconditionError):
        check_point_odd((0, 0), even)
    with pytest.raises(PreconditionError):
        check_point_odd((5, 5), odd)
    with pytest.raises(PreconditionError):
        check_point_even((0, 0), odd)
    with pytest.raises(PreconditionError):
        solve_odd(even)
    with pytest.raises(PreconditionError):
        solve_even(odd)
    with pytest.raises(PreconditionError):
        solve_even(VoterSet([(0, 0), (1, 1), (2, 2), (3, 3)]))
    with pytest.raises(PreconditionError):
        solve_1d(odd)


# --- witnesses -------------------------------------------------------------------


def test_witnesses_replay_and_tampering_is_caught():
    rng = random.Random(8)
    kinds = set()
    for _ in range(300):
        s = random_set(rng, rng.choice([2, 3]), rng.randint(3, 9))
        v = solve(s)
        if v.outcome is Outcome.ALICE:
            continue
        w = v.witness
        kinds.add(w.kind)
        assert validate_witness(s, w)
        if w.kind is WitnessKind.UNBALANCED_LINE:
            assert not validate_witness(s, replace(w, counts=(w.counts[0] + 1, w.counts[1])))
        else:
            assert not validate_witness(s, replace(w, lines=w.lines[:1]))
    assert {WitnessKind.UNBALANCED_LINE, WitnessKind.NON_COPLANAR} <= kinds


def test_alternation_witness_replays():
    s = perturbed_circle(6)
    v = solve(s)
    assert v.witness.kind is WitnessKind.ALTERNATION
    assert validate_witness(s, v.witness)
    assert not validate_witness(s, replace(v.witness, candidate=(F(7), F(7))))


def test_witness_for_unused_kinds_is_replayed():
    from euclidvote.geometry import Hyperplane
    from euclidvote.solver import Witness
    s = simplex(2)
    h = Hyperplane.from_equation((1, 0), F(1, 2))  # one voter right, two left
    w = Witness(WitnessKind.HALFSPACE_MAJORITY, (F(1, 2), F(0)), hyperplane=h)
    assert validate_witness(s, w)
    assert not validate_witness(s, replace(w, candidate=(F(9), F(9))))
    p = Witness(WitnessKind.PERFECT_HYPERPLANE_MISSED, (F(1, 2), F(0)),
                hyperplane=Hyperplane.from_equation((1, -1), 0))
    assert validate_witness(s, p)
    assert not validate_witness(s, replace(p, candidate=(F(1, 2), F(1, 2))))


# --- structural properties --------------------------------------------------------


def test_pruned_scan_matches_exhaustive_scan():
    rng = random.Random(31)
    alice = 0
    for _ in range(250):
        s = random_set(rng, rng.choice([2, 2, 3]), rng.choice([4, 6, 8, 10]), box=3)
        v = solve(s)
        if v.winning_segment is not None:
            continue
        expected = _slow_solve(s)
        assert v.winning_point == expected
        alice += expected is not None
    assert alice > 10


def test_uniqueness_on_solved_instances():
    rng = random.Random(5)
    for _ in range(200):
        s = random_set(rng, 2, rng.randint(4, 9), box=3)
        v = solve(s)
        if not v.alice_wins or v.winning_segment is not None:
            continue
        for x in _candidates(s):
            assert _check(s, x) == (x == v.winning_point)


def test_affine_equivariance():
    rng = random.Random(17)
    instances = [fig2(), quadrilateral(), polygon_center(5), perturbed_circle(6)]
    instances += [random_set(rng, d, rng.randint(4, 9)) for d in (2, 3) for _ in range(25)]
    for s in instances:
        f = random_affine(rng, s.dim)
        v, w = solve(s), solve(s.map(f))
        assert v.outcome == w.outcome
        if v.winning_point is not None:
            assert w.winning_point == f(v.winning_point)


@settings(max_examples=150)
@given(st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=4, max_size=4, unique=True))
def test_four_points_in_the_plane_alice_wins(pts):
    assert solve(VoterSet(pts)).alice_wins


@pytest.mark.parametrize("d, sizes", [(2, [3, 5, 7, 9]), (3, [4, 5, 6, 7])])
def test_general_position_is_bob(d, sizes):
    for n in sizes:
        for seed in range(5):
            assert solve(random_general_position(n, d, seed)).outcome is Outcome.BOB


def test_consistency_with_best_response_small_sample():
    rng = random.Random(77)
    for _ in range(40):
        s = random_set(rng, 2, rng.randint(3, 7), box=3)
        v = solve(s)
        if v.winning_segment is not None:
            continue
        for x in _candidates(s):
            m = best_response(s, x).margin
            assert (m <= 0) == (v.alice_wins and x == v.winning_point)


def test_threads_give_identical_results():
    rng = random.Random(4)
    sets = [fig2(), fig1(), fig1_even(), perturbed_circle(8)]
    sets += [random_set(rng, 2, n, box=5) for n in (8, 9, 12, 16)]
    for s in sets:
        seq, par = solve(s), solve(s, workers=4)
        assert seq == par
        assert seq.stats == par.stats


def test_operation_counters_are_polynomial():
    for n in (8, 16, 24):
        odd = random_general_position(n + 1, 2, seed=n, box=10_000)
        even = random_general_position(n, 2, seed=n, box=10_000)
        so, se = solve(odd).stats, solve(even).stats
        assert so.lines_classified <= (n + 1) ** 2
        assert so.point_visits <= (n + 1) ** 2
        assert se.point_visits <= n ** 5


def test_even_witness_is_reported_at_first_voter():
    s = simplex(3)
    assert solve(s).witness.candidate == s[0]
    assert isinstance(solve(s).witness.lines[0], Line)
