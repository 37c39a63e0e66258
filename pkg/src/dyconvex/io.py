"""Point files and JSON report documents.

A point file starts with a dimension header (``dim N`` or a bare ``N``),
followed by one point per line with comma-separated dyadic literals.
Blank lines and ``#`` comments are ignored::

    # the notdpol generators
    dim 2
    0, 0
    1, 3
    3*2^0, 0
    1/2, 1/2
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .dyadic import Dyadic, DyadicPoint, parse_dyadic

__all__ = ["PointFile", "ParseError", "parse_point", "read_points", "report", "dumps_report"]


class ParseError(ValueError):
    pass


def parse_point(text: str, dim: int | None = None) -> DyadicPoint:
    try:
        p = DyadicPoint(parse_dyadic(tok) for tok in text.split(","))
    except ValueError as exc:
        raise ParseError(f"bad point {text!r}: {exc}") from None
    if dim is not None and p.dim != dim:
        raise ParseError(f"point {text!r} has dimension {p.dim}, expected {dim}")
    return p


@dataclass(frozen=True)
class PointFile:
    dim: int
    points: tuple

    @classmethod
    def parse(cls, text: str) -> "PointFile":
        dim = None
        points = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if dim is None:
                head = line.split()
                try:
                    if len(head) == 2 and head[0].lower() == "dim":
                        dim = int(head[1])
                    elif len(head) == 1 and "," not in line:
                        dim = int(head[0])
                    else:
                        raise ValueError
                except ValueError:
                    raise ParseError(f"line {lineno}: expected a dimension header, got {raw!r}") from None
                if dim < 1:
                    raise ParseError(f"line {lineno}: dimension must be positive")
                continue
            try:
                points.append(parse_point(line, dim))
            except ParseError as exc:
                raise ParseError(f"line {lineno}: {exc}") from None
        if dim is None:
            raise ParseError("missing dimension header")
        if not points:
            raise ParseError("no points")
        return cls(dim, tuple(points))

    @classmethod
    def read(cls, path) -> "PointFile":
        return cls.parse(Path(path).read_text())

    def dumps(self) -> str:
        lines = [f"dim {self.dim}"] + [", ".join(str(c) for c in p) for p in self.points]
        return "\n".join(lines) + "\n"


def read_points(path) -> list[DyadicPoint]:
    return list(PointFile.read(path).points)


def _canon(obj):
    if isinstance(obj, Dyadic):
        return str(obj)
    if isinstance(obj, DyadicPoint):
        return [str(c) for c in obj]
    if isinstance(obj, dict):
        return {str(k): _canon(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [_canon(v) for v in obj]
        return items
    return obj


def report(op: str, inputs, result, certificate=None, evidence=None) -> dict:
    return {
        "op": op,
        "inputs": _canon(inputs),
        "result": _canon(result),
        "certificate": _canon(certificate),
        "evidence": _canon(evidence),
    }


def dumps_report(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)
