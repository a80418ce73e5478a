"""Named voter configurations.

``fig1``/``fig2`` are read from the JSON fixtures shipped in ``data/``.  The
regular-polygon style sets use rational points on the unit circle,
``((1 - t^2) / (1 + t^2), 2t / (1 + t^2))`` with rational ``t`` close to
``tan(angle / 2)``; they reproduce the incidence pattern of the regular
polygon (and hence the verdict) but are not metrically regular.
"""
from __future__ import annotations

import json
import math
import random
from fractions import Fraction
from importlib import resources
from itertools import combinations
from typing import Sequence

from .errors import EuclidVoteError
from .geometry import Point, VoterSet, rank, sub

CONFIGS = (
    "fig1",
    "fig1-even",
    "fig2",
    "polygon-center",
    "perturbed-circle",
    "simplex",
    "quadrilateral",
    "random-general-position",
)


class ConfigError(EuclidVoteError):
    pass


def load_fixture(name: str) -> VoterSet:
    text = resources.files("euclidvote").joinpath("data").joinpath(f"{name}.json").read_text()
    return VoterSet(json.loads(text)["points"])


def expected_outcomes() -> dict:
    text = resources.files("euclidvote").joinpath("data").joinpath("expected_outcomes.json").read_text()
    return json.loads(text)


def fig1() -> VoterSet:
    return load_fixture("fig1")


def fig1_even() -> VoterSet:
    s = fig1()
    return VoterSet(p for p in s if any(p))


def fig2() -> VoterSet:
    return load_fixture("fig2")


def circle_point(t: Fraction) -> Point:
    t = Fraction(t)
    q = 1 + t * t
    return ((1 - t * t) / q, 2 * t / q)


def _circle_param(angle: float, max_den: int) -> Fraction:
    return Fraction(math.tan(angle / 2)).limit_denominator(max_den)


def polygon_center(m: int = 5, max_den: int = 1000) -> VoterSet:
    """``m`` near-regular polygon vertices on the unit circle, then the center."""
    if m < 3:
        raise ConfigError("polygon-center needs m >= 3")
    phase = math.pi / (2 * m)  # keeps every angle away from pi
    if m % 2 == 0:
        half = [circle_point(_circle_param(2 * math.pi * j / m + phase, max_den)) for j in range(m // 2)]
        verts = half + [tuple(-c for c in p) for p in half]
    else:
        verts = [circle_point(_circle_param(2 * math.pi * j / m + phase, max_den)) for j in range(m)]
    return VoterSet(verts + [(Fraction(0), Fraction(0))])


def perturbed_circle(n: int = 6, shift: Fraction = Fraction(1, 100), max_den: int = 1000) -> VoterSet:
    """``n`` (even) points of a near-regular polygon with exact antipodal pairs,
    the first point slid along the circle by ``shift`` in the rational parameter."""
    if n < 4 or n % 2:
        raise ConfigError("perturbed-circle needs an even n >= 4")
    shift = Fraction(shift)
    if shift == 0:
        raise ConfigError("perturbed-circle needs a nonzero shift")
    phase = math.pi / (2 * n)
    params = [_circle_param(2 * math.pi * j / n + phase, max_den) for j in range(n // 2)]
    half = [circle_point(t) for t in params]
    pts = half + [tuple(-c for c in p) for p in half]
    pts[0] = circle_point(params[0] + shift)
    return VoterSet(pts)


def simplex(d: int = 2) -> VoterSet:
    """Origin plus the unit vectors: an affine image of the regular simplex."""
    if d < 1:
        raise ConfigError("simplex needs d >= 1")
    zero = tuple(Fraction(0) for _ in range(d))
    units = [tuple(Fraction(int(i == k)) for i in range(d)) for k in range(d)]
    return VoterSet([zero] + units)


def quadrilateral() -> VoterSet:
    return VoterSet([(0, 0), (4, 0), (5, 3), (1, 2)])


def in_general_position(points: Sequence[Sequence]) -> bool:
    """True iff every subset of at most ``d + 1`` points is affinely independent."""
    pts = [tuple(Fraction(c) for c in p) for p in points]
    if not pts:
        return True
    d = len(pts[0])
    for k in range(3, min(d + 1, len(pts)) + 1):
        for sub_pts in combinations(pts, k):
            if rank([sub(p, sub_pts[0]) for p in sub_pts[1:]]) < k - 1:
                return False
    return True


def random_general_position(n: int, d: int = 2, seed: int = 0, box: int = 100) -> VoterSet:
    """``n`` integer points in ``[-box, box]^d`` in general position.

    Each draw that would create a degenerate subset (three collinear, four
    coplanar, ...) is rejected and redrawn.
    """
    if n < 1 or d < 1 or box < 1:
        raise ConfigError("random-general-position needs n, d, box >= 1")
    rng = random.Random(seed)
    pts: list[tuple] = []
    attempts = 0
    while len(pts) < n:
        attempts += 1
        if attempts > 1000 * n:
            raise ConfigError("could not place points in general position; enlarge box")
        p = tuple(rng.randint(-box, box) for _ in range(d))
        if p in pts:
            continue
        ok = True
        for k in range(2, min(d, len(pts)) + 1):
            for others in combinations(pts, k):
                if rank([sub(q, p) for q in others]) < k:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            pts.append(p)
    return VoterSet(pts)


def generate(name: str, **params) -> VoterSet:
    """Build a named configuration; unused parameters must be None."""
    params = {k: v for k, v in params.items() if v is not None}

    def take(*allowed):
        extra = set(params) - set(allowed)
        if extra:
            raise ConfigError(f"{name} does not take {', '.join(sorted(extra))}")
        return params

    if name == "fig1":
        take()
        return fig1()
    if name == "fig1-even":
        take()
        return fig1_even()
    if name == "fig2":
        take()
        return fig2()
    if name == "polygon-center":
        p = take("m", "n")
        m = p.get("m", p.get("n", 5))
        return polygon_center(int(m))
    if name == "perturbed-circle":
        p = take("n", "shift")
        return perturbed_circle(int(p.get("n", 6)), Fraction(p.get("shift", Fraction(1, 100))))
    if name == "simplex":
        p = take("d")
        return simplex(int(p.get("d", 2)))
    if name == "quadrilateral":
        take()
        return quadrilateral()
    if name == "random-general-position":
        p = take("n", "d", "seed", "box")
        return random_general_position(
            int(p.get("n", 7)), int(p.get("d", 2)), int(p.get("seed", 0)), int(p.get("box", 100))
        )
    raise ConfigError(f"unknown configuration {name!r}; choose from {', '.join(CONFIGS)}")
