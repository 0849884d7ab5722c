"""Chains D(hub, s1) <= D(hub, s2) <= ... checked link by link."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

from ..centers.catalog import check_index
from ..certify.objective import RatioProblem
from ..certify.verify import verify_inequality
from ..config import DEFAULT, RunConfig
from .graph import MODES, Certified, RefutedAbsent, Sampled, certificate_id, find_counterexample, sample_shapes
from .sampling import SampleEvaluator


@dataclass
class LinkResult:
    i: int
    j: int
    status: str  # pass | fail | inconclusive
    evidence: Optional[Union[Sampled, Certified, RefutedAbsent]] = None
    certificate: object = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_dict(self) -> dict:
        out = {"from": self.i, "to": self.j, "status": self.status}
        if self.evidence is not None:
            out["evidence"] = self.evidence.as_dict()
        return out


@dataclass
class ChainResult:
    hub: int
    sequence: tuple
    mode: str
    links: List[LinkResult]

    @property
    def passed(self) -> bool:
        return all(link.passed for link in self.links)

    def as_dict(self) -> dict:
        return {"hub": self.hub, "sequence": list(self.sequence), "mode": self.mode,
                "passed": self.passed, "links": [link.as_dict() for link in self.links]}


def check_chain(hub: int, sequence: Sequence[int], mode: str = "sampled",
                config: RunConfig = DEFAULT) -> ChainResult:
    check_index(hub)
    if len(sequence) < 2:
        raise ValueError("a chain needs at least two centers")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    for k in sequence:
        check_index(k)
    ev = None
    links = []
    for i, j in zip(sequence, sequence[1:]):
        if i == j:
            links.append(LinkResult(i, j, "pass"))
            continue
        if ev is None:
            ev = SampleEvaluator(sample_shapes(config))
        ce = find_counterexample(ev, hub, i, j)
        if ce is not None:
            links.append(LinkResult(i, j, "fail", ce))
        elif mode == "sampled":
            links.append(LinkResult(i, j, "pass", Sampled(len(ev))))
        else:
            cert = verify_inequality(RatioProblem(hub, i, j), "le", 1, config)
            if cert.status == "proved":
                links.append(LinkResult(i, j, "pass", Certified(certificate_id(cert)), cert))
            elif cert.status == "refuted":
                c = cert.counterexample
                links.append(LinkResult(i, j, "fail", RefutedAbsent(tuple(c.sides), (c.ratio_lo, c.ratio_hi),
                                                                     ("1", "1")), cert))
            else:
                links.append(LinkResult(i, j, "inconclusive", None, cert))
    return ChainResult(hub, tuple(sequence), mode, links)
