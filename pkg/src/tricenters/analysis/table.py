"""Loader for the best-constant table in ``bounds.txt``."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Dict, List, Optional, Tuple

from ..certify.constants import Constant, QuadraticConstant, RootConstant, parse_constant


@dataclass(frozen=True)
class BoundTableEntry:
    n: int
    i: int
    j: int
    lower: Optional[Constant]  # None means 0 (no positive lower bound)
    upper: Optional[Constant]  # None means unbounded
    lower_text: str
    upper_text: str
    tag: str

    @property
    def is_identity(self) -> bool:
        return self.lower is not None and self.lower_text == self.upper_text

    def describe(self) -> str:
        if self.is_identity:
            return f"D({self.n},{self.i})/D({self.n},{self.j}) = {self.upper_text}"
        lo = "" if self.lower is None else f"{self.lower_text} <= "
        hi = "" if self.upper is None else f" <= {self.upper_text}"
        return f"{lo}D({self.n},{self.i})/D({self.n},{self.j}){hi}"


@dataclass(frozen=True)
class BoundTable:
    constants: Dict[str, RootConstant]
    approximations: Dict[str, str]
    entries: Tuple[BoundTableEntry, ...]

    def lookup(self, n: int, i: int, j: int) -> Optional[BoundTableEntry]:
        for e in self.entries:
            if (e.n, e.i, e.j) == (n, i, j):
                return e
        return None

    def exact_constants(self) -> List[Tuple[str, Constant]]:
        """Every distinct closed form appearing in the table, in file order."""
        seen: Dict[str, Constant] = {}
        for e in self.entries:
            for text, k in ((e.lower_text, e.lower), (e.upper_text, e.upper)):
                if k is not None and text not in seen:
                    seen[text] = k
        return list(seen.items())


def _parse_bound(text: str, names, allow_inf: bool) -> Optional[Constant]:
    if text == "0":
        return None
    if text == "inf":
        if not allow_inf:
            raise ValueError("inf is only valid as an upper bound")
        return None
    return parse_constant(text, names)


def parse_table(text: str) -> BoundTable:
    constants: Dict[str, RootConstant] = {}
    approx: Dict[str, str] = {}
    rows: List[BoundTableEntry] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split("|")]
        if line.startswith("@const"):
            name = fields[0].split()[1]
            coeffs = tuple(int(c) for c in fields[1].split(","))
            constants[name] = RootConstant(coeffs, fields[2], name)
            continue
        if line.startswith("@approx"):
            approx[fields[0].split()[1]] = fields[1]
            continue
        if len(fields) != 4:
            raise ValueError(f"bounds line {lineno}: expected 4 fields")
        n, i, j = (int(x) for x in fields[0].split())
        lower = _parse_bound(fields[1], constants, allow_inf=False)
        upper = _parse_bound(fields[2], constants, allow_inf=True)
        rows.append(BoundTableEntry(n, i, j, lower, upper, fields[1], fields[2], fields[3]))
    return BoundTable(constants, approx, tuple(rows))


@lru_cache(maxsize=1)
def bound_table() -> BoundTable:
    text = resources.files(__package__).joinpath("bounds.txt").read_text(encoding="utf-8")
    return parse_table(text)


def root_constants() -> Dict[str, RootConstant]:
    return bound_table().constants


def is_quadratic(k) -> bool:
    return isinstance(k, QuadraticConstant)
