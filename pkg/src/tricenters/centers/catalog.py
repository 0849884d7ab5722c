"""The center catalog, compiled from ``catalog.txt``."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Dict, Tuple

from ..algebra.slinear import SLinearPoly
from .expr import parse_expression

INDICES = tuple(range(1, 21))


@dataclass(frozen=True)
class CenterDef:
    index: int
    expression: str
    name: str
    first_coord: SLinearPoly

    def coordinates(self) -> Tuple[SLinearPoly, SLinearPoly, SLinearPoly]:
        """(f(a,b,c), f(b,c,a), f(c,a,b)) by cyclic substitution."""
        return coordinate_triple(self.index)


def check_index(index: int) -> int:
    if not isinstance(index, int) or isinstance(index, bool) or not 1 <= index <= 20:
        raise ValueError(f"center index must be an integer in 1..20, got {index!r}")
    return index


def parse_table(text: str) -> Dict[int, CenterDef]:
    out: Dict[int, CenterDef] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 3:
            raise ValueError(f"catalog line {lineno}: expected 3 fields, got {len(parts)}")
        idx = int(parts[0])
        out[idx] = CenterDef(idx, parts[1], parts[2], parse_expression(parts[1]))
    return out


@lru_cache(maxsize=1)
def catalog() -> Dict[int, CenterDef]:
    text = resources.files(__package__).joinpath("catalog.txt").read_text(encoding="utf-8")
    table = parse_table(text)
    if sorted(table) != list(INDICES):
        raise ValueError("catalog must define exactly the centers 1..20")
    return table


def center(index: int) -> CenterDef:
    return catalog()[check_index(index)]


def first_coordinate(index: int) -> SLinearPoly:
    return center(index).first_coord


@lru_cache(maxsize=None)
def coordinate_triple(index: int) -> Tuple[SLinearPoly, SLinearPoly, SLinearPoly]:
    f = first_coordinate(index)
    g = f.cyclic()
    return f, g, g.cyclic()


@lru_cache(maxsize=None)
def coordinate_sum(index: int) -> SLinearPoly:
    u, v, w = coordinate_triple(index)
    return u + v + w
