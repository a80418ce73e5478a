"""Reading voter sets and writing JSON documents.

Numbers travel as strings: a decimal literal (``"0.25"``, ``"-3"``,
``"1e-2"``) or a ratio ``"p/q"``.  Both convert exactly; binary floating
point is never involved.  Output coordinates are written as ``str(Fraction)``,
so ``parse(emit(x)) == x`` exactly.
"""
from __future__ import annotations

import csv
import io
import json
from decimal import Decimal
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DuplicatePointError, ParseError
from .geometry import Hyperplane, Line, VoterSet

FORMATS = ("csv", "json")


def parse_number(text, where: str = "") -> Fraction:
    """Exact rational from a decimal or ``p/q`` string (or a JSON integer/decimal)."""
    if isinstance(text, bool):
        raise ParseError(f"malformed number {text!r}{where}")
    if isinstance(text, (int, Decimal)):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"malformed number {text!r}{where}")
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"malformed number {text!r}{where}") from None
    return value


def parse_coords(text: str) -> tuple:
    """Comma-separated rationals, as used on command-line flags."""
    parts = text.split(",")
    if not text.strip() or any(not p.strip() for p in parts):
        raise ParseError(f"malformed coordinate list {text!r}")
    return tuple(parse_number(p) for p in parts)


def _build(rows: list[list], label: str) -> VoterSet:
    if not rows:
        raise ParseError("no points given")
    dim = len(rows[0])
    if dim < 1:
        raise ParseError("dimension must be at least 1")
    points = []
    for i, row in enumerate(rows):
        if len(row) != dim:
            raise ParseError(f"{label} {i} has {len(row)} coordinates, expected {dim}")
        points.append(tuple(parse_number(c, f" in {label} {i}") for c in row))
    try:
        return VoterSet(points)
    except DuplicatePointError as e:
        raise ParseError(f"duplicate point: {label}s {e.first} and {e.second} are equal") from e


def parse_points(data, fmt: str = "json") -> VoterSet:
    """Parse CSV (one point per row) or a JSON InputDocument into a VoterSet."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(f"input is not UTF-8: {e}") from None
    if fmt == "csv":
        rows = [r for r in csv.reader(io.StringIO(data)) if r and not (len(r) == 1 and not r[0].strip())]
        rows = [r for r in rows if not r[0].lstrip().startswith("#")]
        return _build(rows, "row")
    if fmt == "json":
        try:
            doc = json.loads(data, parse_float=Decimal)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e}") from None
        if not isinstance(doc, dict) or "points" not in doc:
            raise ParseError("JSON input must be an object with a 'points' list")
        rows = doc["points"]
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise ParseError("'points' must be a list of coordinate lists")
        dim = doc.get("dim")
        if dim is not None:
            if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
                raise ParseError("'dim' must be a positive integer")
            if rows and len(rows[0]) != dim:
                raise ParseError(f"point 0 has {len(rows[0])} coordinates, expected {dim}")
        return _build(rows, "point")
    raise ParseError(f"unknown format {fmt!r}; choose csv or json")


def num(x: Fraction) -> str:
    return str(Fraction(x))


def coords(p: Optional[Sequence]) -> Optional[list]:
    return None if p is None else [num(c) for c in p]


def emit_points(s: VoterSet, notes: Optional[str] = None) -> str:
    """Canonical InputDocument text: one point per line, trailing newline."""
    lines = ["{", f'  "dim": {s.dim},', '  "points": [']
    body = [json.dumps(coords(p)) for p in s]
    lines += [f"    {b}," for b in body[:-1]] + [f"    {body[-1]}"]
    lines.append("  ]" + ("," if notes is not None else ""))
    if notes is not None:
        lines.append(f'  "notes": {json.dumps(notes)}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def line_doc(l: Line) -> dict:
    return {"base": coords(l.base), "dir": list(l.dir)}


def hyperplane_doc(h: Hyperplane) -> dict:
    return {"normal": list(h.normal), "offset": num(h.offset)}


def witness_doc(w) -> Optional[dict]:
    if w is None:
        return None
    return {
        "kind": w.kind.value,
        "candidate": coords(w.candidate),
        "line": None if w.line is None else line_doc(w.line),
        "lines": [line_doc(l) for l in w.lines],
        "hyperplane": None if w.hyperplane is None else hyperplane_doc(w.hyperplane),
        "counts": None if w.counts is None else list(w.counts),
    }


def verdict_doc(v, elapsed: Optional[float] = None) -> dict:
    stats = {
        "candidates_scanned": v.stats.candidates_scanned,
        "lines_classified": v.stats.lines_classified,
        "point_visits": v.stats.point_visits,
    }
    if elapsed is not None:
        stats["elapsed_seconds"] = round(elapsed, 6)
    return {
        "outcome": v.outcome.value,
        "winning_point": coords(v.winning_point),
        "winning_segment": None if v.winning_segment is None else [coords(p) for p in v.winning_segment],
        "unique": v.unique,
        "witness": witness_doc(v.witness),
        "stats": stats,
    }


def scores_doc(sc) -> dict:
    return {"v_a": sc.v_a, "v_b": sc.v_b, "abstentions": sc.abstentions, "margin": sc.margin}


def best_response_doc(br) -> dict:
    return {
        "b": coords(br.b),
        "scores": scores_doc(br.scores),
        "margin": br.margin,
        "separating": hyperplane_doc(br.separating),
    }


__all__ = [
    "FORMATS",
    "best_response_doc",
    "coords",
    "dumps",
    "emit_points",
    "parse_coords",
    "parse_number",
    "parse_points",
    "scores_doc",
    "verdict_doc",
    "witness_doc",
]
