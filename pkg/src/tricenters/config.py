"""Run configuration shared by the certifier, the analyses and the CLI."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction
from typing import Tuple

FORMATS = ("human", "structured", "dot")


def _default_schedule() -> Tuple[Fraction, ...]:
    return (Fraction(1, 100), Fraction(1, 1000), Fraction(1, 10000))


@dataclass(frozen=True)
class RunConfig:
    precision_bits: int = 128
    epsilon_schedule: Tuple[Fraction, ...] = field(default_factory=_default_schedule)
    max_subdivisions: int = 10 ** 6
    sample_count: int = 10 ** 4
    seed: int = 0
    output_format: str = "human"
    batch: int = 1024

    def __post_init__(self):
        sched = tuple(Fraction(e) for e in self.epsilon_schedule)
        object.__setattr__(self, "epsilon_schedule", sched)
        if self.precision_bits <= 0 or self.max_subdivisions <= 0 or self.sample_count <= 0:
            raise ValueError("precision, subdivision limit and sample count must be positive")
        if self.seed < 0 or self.batch <= 0:
            raise ValueError("seed must be non-negative and batch positive")
        if not sched or any(not 0 < e < Fraction(1, 4) for e in sched):
            raise ValueError("epsilon schedule entries must lie in (0, 1/4)")
        if list(sched) != sorted(sched, reverse=True):
            raise ValueError("epsilon schedule must be descending")
        if self.output_format not in FORMATS:
            raise ValueError(f"output format must be one of {FORMATS}")

    @property
    def finest_epsilon(self) -> Fraction:
        return self.epsilon_schedule[-1]

    def with_(self, **changes) -> RunConfig:
        return replace(self, **changes)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["epsilon_schedule"] = [str(e) for e in self.epsilon_schedule]
        return d


DEFAULT = RunConfig()
