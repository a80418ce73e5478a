"""Balance of lines and hyperplanes about a reference point."""
from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from enum import Enum
from typing import Optional, Sequence

from .errors import DimensionMismatchError, PreconditionError
from .geometry import (
    Hyperplane,
    Line,
    PlaneBasis,
    VoterSet,
    as_point,
    circular_order,
    direction_counts,
    plane_from_directions,
)


class BalanceClass(str, Enum):
    TRIVIAL_EVEN = "trivial-even"
    EVEN = "even-balanced"
    ODD = "odd-balanced"
    UNBALANCED = "unbalanced"


def balance_class(u: int, v: int) -> BalanceClass:
    if u == v == 0:
        return BalanceClass.TRIVIAL_EVEN
    gap = abs(u - v)
    if gap == 0:
        return BalanceClass.EVEN
    if gap == 1:
        return BalanceClass.ODD
    return BalanceClass.UNBALANCED


@dataclass(frozen=True)
class BalanceReport:
    """Voter counts ``u`` on ``line``'s positive half-line and ``v`` on the negative one."""

    line: Line
    u: int
    v: int

    @property
    def cls(self) -> BalanceClass:
        return balance_class(self.u, self.v)

    @property
    def balanced(self) -> bool:
        return abs(self.u - self.v) <= 1

    @property
    def even(self) -> bool:
        return self.u == self.v

    @property
    def heavy_plus(self) -> Optional[bool]:
        """True if the positive half-line holds the extra voter; None unless odd-balanced."""
        if abs(self.u - self.v) != 1:
            return None
        return self.u > self.v


@dataclass(frozen=True)
class HyperplaneReport:
    plus: int
    on: int
    minus: int

    @property
    def total(self) -> int:
        return self.plus + self.on + self.minus

    @property
    def good(self) -> bool:
        # only defined for an odd number of voters
        return self.total % 2 == 1 and self.plus == self.minus

    @property
    def perfect_odd(self) -> bool:
        return self.good and self.on == 1

    @property
    def perfect_even(self) -> bool:
        n = self.total
        return n % 2 == 0 and 2 * self.plus < n and 2 * self.minus < n


def classify_line(x: Sequence, line: Line, s: VoterSet) -> BalanceReport:
    x = as_point(x)
    if line.base != x:
        raise PreconditionError("line must be based at the reference point")
    u = v = 0
    for p in s:
        side = line.side(p)
        if side == 1:
            u += 1
        elif side == -1:
            v += 1
    return BalanceReport(line, u, v)


def line_reports(x: Sequence, s: VoterSet) -> list[BalanceReport]:
    """Reports for every line through ``x`` carrying at least one other voter."""
    x = as_point(x)
    return [BalanceReport(Line(x, key), u, v) for key, (u, v) in direction_counts(x, s).items()]


def hyperplane_report(h: Hyperplane, s: VoterSet) -> HyperplaneReport:
    if h.dim != s.dim:
        raise DimensionMismatchError(f"hyperplane dim {h.dim} != voter dim {s.dim}")
    counts = [0, 0, 0]
    for p in s:
        counts[1 - h.side(p)] += 1
    return HyperplaneReport(plus=counts[0], on=counts[1], minus=counts[2])


def odd_lines_coplanar(x: Sequence, odd_lines: Sequence[Line]) -> Optional[PlaneBasis]:
    """A plane through ``x`` containing every line, or None.

    An empty input returns None by convention.
    """
    x = as_point(x)
    if not odd_lines:
        return None
    for l in odd_lines:
        if l.base != x:
            raise PreconditionError("all lines must be based at x")
    return plane_from_directions(x, [l.dir for l in odd_lines])


def alternation_check(x: Sequence, plane: PlaneBasis, odd_reports: Sequence[BalanceReport]) -> bool:
    """Do heavy and light half-lines strictly alternate around ``x`` in ``plane``?

    Each odd-balanced line contributes two half-lines, its heavy side and its
    light side.  Strict alternation around the circle forces the number of
    lines to be odd.  An empty input passes vacuously.
    """
    x = as_point(x)
    halves = []
    for r in odd_reports:
        if r.line.base != x:
            raise PreconditionError("all lines must be based at x")
        if r.cls is not BalanceClass.ODD:
            raise PreconditionError(f"expected an odd-balanced line, got {r.cls.value}")
        ab = plane.coordinates(r.line.dir)
        if ab is None:
            raise PreconditionError("line does not lie in the plane")
        den = lcm(ab[0].denominator, ab[1].denominator)
        a, b = int(ab[0] * den), int(ab[1] * den)
        halves.append(((a, b), r.u > r.v))
        halves.append(((-a, -b), r.u < r.v))
    if not halves:
        return True
    order = circular_order([h[0] for h in halves])
    seq = [halves[i][1] for i in order]
    return all(seq[i] != seq[i - 1] for i in range(len(seq)))
