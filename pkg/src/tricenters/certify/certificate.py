"""Certificates: serialization and independent replay.

A cover is stored as its subdivision tree in preorder.  Each node is one
character: ``S`` for a node split by :func:`bnb.split`, ``O`` for a box
outside the canonical region, ``C`` for a box inside a contact chart, ``X``
for an undecided frontier box, and a lowercase letter for a box whose sign
was proved, the letter naming the evaluation tier through ``legend``.
Rebuilding the boxes needs only the root and the split rule, so the record
is compact and replay cannot be fooled by a box list that misses a region.

JSON output uses sorted keys and exact rationals written as ``"p/q"``, so
identical runs produce identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..config import RunConfig
from .bnb import CoverResult, exact_check, escalation, outside_canonical, split
from .contact import Chart, replay_chart
from .evaluator import Box

SCHEMA = "tricenters.certificate/1"
_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def frac(x) -> str:
    return str(Fraction(x))


def unfrac(s) -> Fraction:
    return Fraction(s)


def box_str(box: Box) -> List[str]:
    return [frac(x) for x in box]


def box_parse(items) -> Box:
    return tuple(unfrac(x) for x in items)


# -- tree encoding ---------------------------------------------------------------

def encode_cover(root: Box, result: CoverResult) -> Tuple[str, Dict[str, str]]:
    """Preorder tree string and the tier legend for a cover."""
    tiers = sorted({lf.tier for lf in result.leaves if lf.verdict == "sign"})
    if len(tiers) > len(_LETTERS):
        raise ValueError("too many evaluation tiers")
    legend = {_LETTERS[i]: t for i, t in enumerate(tiers)}
    code_of = {t: c for c, t in legend.items()}
    leaf = {}
    for lf in result.leaves:
        if lf.verdict == "sign":
            leaf[lf.box] = code_of[lf.tier]
        elif lf.verdict == "outside":
            leaf[lf.box] = "O"
        else:
            leaf[lf.box] = "C"
    for bx in result.frontier:
        leaf[bx] = "X"
    out = []
    stack = [root]
    while stack:
        bx = stack.pop()
        c = leaf.get(bx)
        if c is not None:
            out.append(c)
            continue
        out.append("S")
        lo, hi = split(bx)
        stack.append(hi)
        stack.append(lo)
    return "".join(out), legend


def decode_cover(root: Box, tree: str) -> List[Tuple[Box, str]]:
    """(box, code) for every leaf, in preorder; raises on a malformed tree."""
    leaves = []
    stack = [root]
    pos = 0
    while stack:
        if pos >= len(tree):
            raise ValueError("certificate tree ended early")
        bx = stack.pop()
        c = tree[pos]
        pos += 1
        if c == "S":
            lo, hi = split(bx)
            stack.append(hi)
            stack.append(lo)
        else:
            leaves.append((bx, c))
    if pos != len(tree):
        raise ValueError("certificate tree has trailing nodes")
    return leaves


# -- certificate records ---------------------------------------------------------

@dataclass
class InteriorCover:
    """The cover of one eps-interior."""

    epsilon: Fraction
    root: Box
    status: str
    tree: str
    legend: Dict[str, str]
    subdivisions: int
    evaluated: int

    @classmethod
    def from_result(cls, eps, root, result: CoverResult) -> InteriorCover:
        tree, legend = encode_cover(root, result)
        return cls(Fraction(eps), root, result.status, tree, legend, result.subdivisions, result.evaluated)

    def counts(self) -> Dict[str, int]:
        out = {"sign": 0, "outside": 0, "contact": 0, "frontier": 0, "split": 0}
        for ch in self.tree:
            if ch == "S":
                out["split"] += 1
            elif ch == "O":
                out["outside"] += 1
            elif ch == "C":
                out["contact"] += 1
            elif ch == "X":
                out["frontier"] += 1
            else:
                out["sign"] += 1
        return out

    def frontier(self) -> List[Box]:
        return [bx for bx, c in decode_cover(self.root, self.tree) if c == "X"]

    def to_dict(self) -> dict:
        return {"epsilon": frac(self.epsilon), "root": box_str(self.root), "status": self.status,
                "tree": self.tree, "legend": self.legend, "subdivisions": self.subdivisions,
                "evaluated": self.evaluated, "counts": self.counts()}

    @classmethod
    def from_dict(cls, d) -> InteriorCover:
        return cls(unfrac(d["epsilon"]), box_parse(d["root"]), d["status"], d["tree"],
                   dict(d["legend"]), int(d["subdivisions"]), int(d["evaluated"]))


@dataclass
class ChartRecord:
    chart: Chart
    cover: InteriorCover  # cover of the chart box proving dG/dy <= 0

    def to_dict(self) -> dict:
        d = self.chart.as_dict()
        d["derivative_cover"] = self.cover.to_dict()
        return d

    @classmethod
    def from_dict(cls, d) -> ChartRecord:
        ch = Chart(d["mirror"], unfrac(d["w_lo"]), unfrac(d["w_hi"]), unfrac(d["y_hi"]), float(d["touch"]))
        return cls(ch, InteriorCover.from_dict(d["derivative_cover"]))


@dataclass
class Counterexample:
    """A shape where the claim fails, with its ratio enclosure."""

    sides: Tuple[Fraction, Fraction, Fraction]
    ratio_lo: str  # enclosure of D(n,i)/D(n,j), decimal strings rounded outward
    ratio_hi: str
    precision: int

    def to_dict(self) -> dict:
        return {"sides": [frac(s) for s in self.sides], "ratio": [self.ratio_lo, self.ratio_hi],
                "precision": self.precision}

    @classmethod
    def from_dict(cls, d) -> Counterexample:
        return cls(tuple(unfrac(s) for s in d["sides"]), d["ratio"][0], d["ratio"][1], int(d["precision"]))


@dataclass
class BoundCertificate:
    """Outcome of :func:`verify_inequality`; see the module docstring."""

    problem: Tuple[int, int, int]
    direction: str  # "le" or "ge"
    constant: str
    config: RunConfig
    status: str  # "proved", "refuted" or "inconclusive"
    interior: List[InteriorCover] = field(default_factory=list)
    charts: List[ChartRecord] = field(default_factory=list)
    boundary: List[dict] = field(default_factory=list)
    counterexample: Optional[Counterexample] = None
    note: str = ""

    @property
    def proved(self) -> bool:
        return self.status == "proved"

    def claim_text(self) -> str:
        n, i, j = self.problem
        op = "<=" if self.direction == "le" else ">="
        return f"D({n},{i}) {op} {self.constant} * D({n},{j})"

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "problem": list(self.problem),
            "claim": {"direction": self.direction, "k": self.constant, "text": self.claim_text()},
            "config": self.config.as_dict(),
            "status": self.status,
            "epsilon_schedule": [frac(c.epsilon) for c in self.interior],
            "interior": [c.to_dict() for c in self.interior],
            "charts": [c.to_dict() for c in self.charts],
            "boundary": self.boundary,
            "counterexample": self.counterexample.to_dict() if self.counterexample else None,
            "note": self.note,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1) + "\n"

    @classmethod
    def from_dict(cls, d) -> BoundCertificate:
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unknown certificate schema {d.get('schema')!r}")
        cfg = dict(d["config"])
        cfg["epsilon_schedule"] = tuple(unfrac(e) for e in cfg["epsilon_schedule"])
        return cls(
            tuple(d["problem"]), d["claim"]["direction"], d["claim"]["k"], RunConfig(**cfg), d["status"],
            [InteriorCover.from_dict(c) for c in d["interior"]],
            [ChartRecord.from_dict(c) for c in d["charts"]],
            list(d["boundary"]),
            Counterexample.from_dict(d["counterexample"]) if d.get("counterexample") else None,
            d.get("note", ""),
        )

    @classmethod
    def from_json(cls, text: str) -> BoundCertificate:
        return cls.from_dict(json.loads(text))


# -- replay ----------------------------------------------------------------------

@dataclass
class ReplayReport:
    ok: bool
    boxes: int = 0
    exact_rechecks: int = 0
    failures: List[str] = field(default_factory=list)

    def fail(self, msg: str) -> None:
        self.ok = False
        self.failures.append(msg)


def _replay_sign_leaves(target, boxes: List[Box], precision: int, batch: int, report: ReplayReport,
                        label: str) -> None:
    """Each box must satisfy target <= 0: rigorous float bounds first, then exact."""
    precs = escalation(precision)
    for start in range(0, len(boxes), batch):
        chunk = boxes[start:start + batch]
        arr = np.array([[float(x) for x in bx] for bx in chunk])
        hi = target.float_bounds(arr)[1]
        for bx, h in zip(chunk, hi):
            if h <= 0:
                continue
            report.exact_rechecks += 1
            if exact_check(target, bx, precs) is None:
                report.fail(f"{label}: sign not confirmed on box {box_str(bx)}")


def replay(cert: BoundCertificate) -> ReplayReport:
    """Re-verify a proved certificate from the problem statement alone.

    The objective is recompiled from the catalogue, every cover tree is
    rebuilt from its root, every sign leaf is re-evaluated, chart leaves are
    checked for containment and each chart's conditions are re-proved, and
    the boundary limits are re-derived exactly where the certificate claims
    an exact check.
    """
    # deferred imports keep this module free of optimizer logic
    from .constants import parse_constant
    from .evaluator import Kappa, SignTarget
    from .objective import RatioProblem, compile_ratio
    from .verify import IDENTITY_NOTE, boundary_consistency, is_polynomial_identity, kappa_for, target_polynomial

    report = ReplayReport(True)
    if cert.status != "proved":
        report.fail(f"certificate status is {cert.status}, not proved")
        return report
    problem = RatioProblem(*cert.problem)
    k = parse_constant(cert.constant)
    if problem.trivial:
        c = k.compare(1)
        if not (c >= 0 if cert.direction == "le" else c <= 0):
            report.fail("trivial ratio 1 does not satisfy the claim")
        return report
    obj = compile_ratio.__wrapped__(problem)
    kappa = kappa_for(k)
    if cert.note == IDENTITY_NOTE:
        if not is_polynomial_identity(obj, kappa):
            report.fail("claimed identity does not hold")
        return report
    sign = 1 if cert.direction == "le" else -1
    target = SignTarget.for_objective(obj, kappa, sign)
    prec = cert.config.precision_bits
    charts = [rec.chart for rec in cert.charts]

    if charts:
        F = target_polynomial(obj, kappa, sign)
        if F is None:
            report.fail("charts recorded for a claim without an exact polynomial form")
            return report
        for idx, rec in enumerate(cert.charts):
            leaves = decode_cover(rec.cover.root, rec.cover.tree)
            if rec.cover.root != rec.chart.box():
                report.fail(f"chart {idx}: cover root does not match the chart box")
            if any(c == "X" or c == "O" or c == "C" for _, c in leaves):
                report.fail(f"chart {idx}: derivative cover has undecided boxes")
            boxes = [bx for bx, _ in leaves]
            report.boxes += len(boxes)
            if not replay_chart(F, rec.chart, boxes):
                report.fail(f"chart {idx}: conditions not confirmed")

    schedule = list(cert.config.epsilon_schedule)
    if [c.epsilon for c in cert.interior] != schedule:
        report.fail("covers do not match the epsilon schedule")
    from .bnb import interior_root
    for cov in cert.interior:
        label = f"eps={cov.epsilon}"
        if cov.root != interior_root(cov.epsilon):
            report.fail(f"{label}: root box does not contain the eps-interior")
            continue
        try:
            leaves = decode_cover(cov.root, cov.tree)
        except ValueError as exc:
            report.fail(f"{label}: {exc}")
            continue
        report.boxes += len(leaves)
        sign_boxes = []
        for bx, c in leaves:
            if c == "S":
                continue
            if c == "X":
                report.fail(f"{label}: undecided box {box_str(bx)}")
            elif c == "O":
                if not outside_canonical(bx):
                    report.fail(f"{label}: box {box_str(bx)} is not outside the region")
            elif c == "C":
                if not any(ch.covers(bx) for ch in charts):
                    report.fail(f"{label}: box {box_str(bx)} is in no chart")
            else:
                sign_boxes.append(bx)
        _replay_sign_leaves(target, sign_boxes, prec, cert.config.batch, report, label)

    ok, _ = boundary_consistency(obj, k, kappa, cert.direction)
    if not ok:
        report.fail("boundary limits are not consistent with the claim")
    return report

