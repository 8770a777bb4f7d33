"""Flat-file serialisation of point sets.

Format: a header line `base m s precision count` (m is the smallest
integer with base^m >= count), an optional `# provenance: {json}` comment
carrying the construction family and parameters, then one line per point
holding s whitespace-separated digit strings, most significant digit
first.  Bases up to 10 use one character per digit; larger bases separate
digits with commas.  Round trips are bit-exact.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import ParameterError
from .nets import DigitVector, PointSet

__all__ = ["write_point_file", "read_point_file", "dumps_point_file", "loads_point_file"]


def _coord_string(dv: DigitVector) -> str:
    if dv.base <= 10:
        return "".join(str(d) for d in dv.digits)
    return ",".join(str(d) for d in dv.digits)


def _parse_coord(text: str, base: int, precision: int, lineno: int) -> DigitVector:
    try:
        if base <= 10:
            digits = tuple(int(c) for c in text)
        else:
            digits = tuple(int(c) for c in text.split(","))
    except ValueError as exc:
        raise ParameterError(f"line {lineno}: bad digit string {text!r}") from exc
    if len(digits) != precision:
        raise ParameterError(
            f"line {lineno}: coordinate has {len(digits)} digits, expected {precision}"
        )
    if any(d < 0 or d >= base for d in digits):
        raise ParameterError(f"line {lineno}: digit out of range for base {base}")
    return DigitVector(base, digits)


def dumps_point_file(ps: PointSet) -> str:
    m = 0
    while ps.base**m < len(ps):
        m += 1
    lines = [f"{ps.base} {m} {ps.s} {ps.precision} {len(ps)}"]
    if ps.provenance is not None:
        lines.append("# provenance: " + json.dumps(ps.provenance, sort_keys=True))
    for pt in ps.points:
        lines.append(" ".join(_coord_string(dv) for dv in pt))
    return "\n".join(lines) + "\n"


def write_point_file(ps: PointSet, path) -> None:
    Path(path).write_text(dumps_point_file(ps), encoding="ascii")


def loads_point_file(text: str) -> PointSet:
    lines = text.splitlines()
    if not lines:
        raise ParameterError("line 1: empty point file")
    header = lines[0].split()
    if len(header) != 5:
        raise ParameterError("line 1: header must be 'base m s precision count'")
    try:
        base, _m, s, precision, count = (int(h) for h in header)
    except ValueError as exc:
        raise ParameterError(f"line 1: bad header field: {exc}") from exc
    provenance = None
    points = []
    lineno = 1
    for raw in lines[1:]:
        lineno += 1
        if raw.startswith("#"):
            body = raw[1:].strip()
            if body.startswith("provenance:"):
                try:
                    provenance = json.loads(body[len("provenance:") :])
                except json.JSONDecodeError as exc:
                    raise ParameterError(f"line {lineno}: bad provenance json") from exc
            continue
        if not raw.strip():
            continue
        fields = raw.split()
        if len(fields) != s:
            raise ParameterError(f"line {lineno}: point has {len(fields)} coordinates, expected {s}")
        points.append(tuple(_parse_coord(f, base, precision, lineno) for f in fields))
    if len(points) != count:
        raise ParameterError(f"line {lineno}: file has {len(points)} points, header says {count}")
    return PointSet(points, base=base, s=s, precision=precision, provenance=provenance)


def read_point_file(path) -> PointSet:
    return loads_point_file(Path(path).read_text(encoding="ascii"))
