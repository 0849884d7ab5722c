"""Inequality digraphs around a hub center.

An edge i -> j means D(hub, i) <= D(hub, j) for every triangle.  Edges carry
their evidence: a sample count, or the id of a proved certificate.  Missing
edges carry the counterexample that rules them out, and undecided pairs are
kept in a separate list.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from ..centers.catalog import check_index
from ..certify.objective import RatioProblem
from ..certify.verify import verify_inequality
from ..config import DEFAULT, RunConfig
from ..errors import CycleBeyondEquality
from ..shapespace import TriangleShape, random_sample
from .sampling import SampleEvaluator, strictly_greater

CENTERS = tuple(range(1, 21))
MODES = ("sampled", "certified")


@dataclass(frozen=True)
class Sampled:
    sample_count: int

    def as_dict(self) -> dict:
        return {"kind": "sampled", "samples": self.sample_count}


@dataclass(frozen=True)
class Certified:
    certificate_id: str

    def as_dict(self) -> dict:
        return {"kind": "certified", "certificate": self.certificate_id}


@dataclass(frozen=True)
class RefutedAbsent:
    """A triangle where D(hub, i) > D(hub, j), with both squared distances enclosed."""

    sides: Tuple[Fraction, Fraction, Fraction]
    d2_i: Tuple[str, str]
    d2_j: Tuple[str, str]

    def as_dict(self) -> dict:
        return {"kind": "refuted", "sides": [str(s) for s in self.sides],
                "d2_i": list(self.d2_i), "d2_j": list(self.d2_j)}


Evidence = Union[Sampled, Certified, RefutedAbsent]


@dataclass(frozen=True)
class InequalityGraph:
    hub: int
    mode: str
    nodes: Tuple[int, ...]
    edges: Tuple[Tuple[int, int, Evidence], ...]
    absent: Tuple[Tuple[int, int, RefutedAbsent], ...] = ()
    inconclusive: Tuple[Tuple[int, int, str], ...] = ()
    # equivalence classes of nodes collapsed by transitive_reduction
    classes: Tuple[Tuple[int, ...], ...] = ()

    def edge_set(self) -> FrozenSet[Tuple[int, int]]:
        return frozenset((i, j) for i, j, _ in self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        return (i, j) in self.edge_set()

    def evidence(self, i: int, j: int) -> Optional[Evidence]:
        for a, b, ev in self.edges:
            if (a, b) == (i, j):
                return ev
        return None

    def mutual_pairs(self) -> List[Tuple[int, int]]:
        es = self.edge_set()
        return sorted((i, j) for i, j in es if i < j and (j, i) in es)

    def reachability(self) -> Dict[int, FrozenSet[int]]:
        """Nodes reachable from each node (paths of length >= 1), through classes."""
        members = {k: (k,) for k in self.nodes}
        for cls in self.classes:
            for k in cls:
                members[k] = cls
        adj: Dict[int, set] = {k: set() for k in self.nodes}
        for i, j, _ in self.edges:
            for a in members[i]:
                adj[a].update(members[j])
        for cls in self.classes:
            for a in cls:
                adj[a].update(b for b in cls if b != a)
        return {k: frozenset(_reach(adj, k)) for k in self.nodes}

    def reaches(self, i: int, j: int) -> bool:
        return j in self.reachability()[i]

    def as_dict(self) -> dict:
        return {
            "hub": self.hub,
            "mode": self.mode,
            "nodes": list(self.nodes),
            "edges": [{"from": i, "to": j, "evidence": ev.as_dict()} for i, j, ev in self.edges],
            "absent": [{"from": i, "to": j, "evidence": ev.as_dict()} for i, j, ev in self.absent],
            "inconclusive": [{"from": i, "to": j, "note": note} for i, j, note in self.inconclusive],
            "classes": [list(c) for c in self.classes],
        }

    def to_dot(self) -> str:
        lines = [f"digraph X{self.hub} {{"]
        for k in self.nodes:
            lines.append(f"  {k};")
        for cls in self.classes:
            for a, b in zip(cls, cls[1:]):
                lines.append(f"  {a} -> {b} [dir=both];")
        for i, j, _ in self.edges:
            lines.append(f"  {i} -> {j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _reach(adj, start) -> set:
    seen: set = set()
    stack = list(adj[start])
    while stack:
        k = stack.pop()
        if k not in seen:
            seen.add(k)
            stack.extend(adj[k])
    return seen


def certificate_id(cert) -> str:
    return hashlib.sha256(cert.to_json().encode("utf-8")).hexdigest()[:16]


def sample_shapes(config: RunConfig) -> List[TriangleShape]:
    return random_sample(config.sample_count, config.seed)


def _interval_pair(iv) -> Tuple[str, str]:
    return iv.lo_str(20), iv.hi_str(20)


def find_counterexample(ev: SampleEvaluator, hub: int, i: int, j: int) -> Optional[RefutedAbsent]:
    """A certified shape with D(hub, i) > D(hub, j), tried in order of float margin."""
    a, b = ev.d2(hub, i), ev.d2(hub, j)
    gap = a[0] - b[1]
    idx = np.nonzero(gap > 0)[0]
    if idx.size == 0:
        return None
    # relative margin favours well-separated witnesses
    scale = np.maximum(np.abs(a[0][idx]) + np.abs(b[1][idx]), 1e-300)
    order = idx[np.argsort(-(gap[idx] / scale), kind="stable")]
    for k in order[:8]:
        shape = ev.shapes[int(k)]
        got = strictly_greater(hub, i, j, shape)
        if got is not None:
            return RefutedAbsent(shape.sides, _interval_pair(got[0]), _interval_pair(got[1]))
    return None


def _certify_pair(args):
    hub, i, j, config = args
    cert = verify_inequality(RatioProblem(hub, i, j), "le", 1, config)
    return i, j, cert


def build_graph(hub: int, mode: str = "sampled", config: RunConfig = DEFAULT,
                nodes: Optional[Sequence[int]] = None, workers: int = 1) -> InequalityGraph:
    """The inequality digraph of D(hub, .) over the other centers."""
    check_index(hub)
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    nodes = tuple(sorted(k for k in (nodes or CENTERS) if k != hub))
    ev = SampleEvaluator(sample_shapes(config))
    edges: List[Tuple[int, int, Evidence]] = []
    absent: List[Tuple[int, int, RefutedAbsent]] = []
    open_pairs: List[Tuple[int, int]] = []
    inconclusive: List[Tuple[int, int, str]] = []
    for i in nodes:
        for j in nodes:
            if i == j:
                continue
            ce = find_counterexample(ev, hub, i, j)
            if ce is not None:
                absent.append((i, j, ce))
            elif np.any(ev.d2(hub, i)[0] > ev.d2(hub, j)[1]):
                inconclusive.append((i, j, "sampled violation not confirmed at higher precision"))
            else:
                open_pairs.append((i, j))
    if mode == "sampled":
        edges = [(i, j, Sampled(len(ev))) for i, j in open_pairs]
    else:
        jobs = [(hub, i, j, config) for i, j in open_pairs]
        if workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_certify_pair, jobs))
        else:
            results = [_certify_pair(job) for job in jobs]
        for i, j, cert in results:
            if cert.status == "proved":
                edges.append((i, j, Certified(certificate_id(cert))))
            elif cert.status == "refuted":
                ce = cert.counterexample
                absent.append((i, j, RefutedAbsent(tuple(ce.sides), (ce.ratio_lo, ce.ratio_hi), ("1", "1"))))
            else:
                inconclusive.append((i, j, cert.note or "inconclusive"))
    return InequalityGraph(hub, mode, nodes, tuple(sorted(edges, key=lambda e: e[:2])),
                           tuple(sorted(absent, key=lambda e: e[:2])),
                           tuple(sorted(inconclusive)))


def transitive_reduction(graph: InequalityGraph, equalities: Optional[Iterable] = None) -> InequalityGraph:
    """Minimal edge set with the same reachability; equal-distance pairs become classes.

    ``equalities`` holds the known equality records (default: none); any
    2-cycle not backed by one raises :class:`CycleBeyondEquality`.
    """
    hub = graph.hub
    allowed = set()
    for rec in equalities or ():
        pairs = {tuple(sorted(rec.pair1)), tuple(sorted(rec.pair2))}
        for p in pairs:
            if hub in p:
                other = p[0] if p[1] == hub else p[1]
                for q in pairs:
                    if q != p and hub in q:
                        o2 = q[0] if q[1] == hub else q[1]
                        allowed.add(tuple(sorted((other, o2))))
    es = graph.edge_set()
    parent = {k: k for k in graph.nodes}

    def find(k):
        while parent[k] != k:
            k = parent[k]
        return k

    for i, j in graph.mutual_pairs():
        if (i, j) not in allowed:
            raise CycleBeyondEquality(f"D({hub},{i}) and D({hub},{j}) bound each other without an equality record")
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    rep = {k: find(k) for k in graph.nodes}
    groups: Dict[int, List[int]] = {}
    for k in graph.nodes:
        groups.setdefault(rep[k], []).append(k)
    classes = tuple(tuple(sorted(g)) for r, g in sorted(groups.items()) if len(g) > 1)

    dag = nx.DiGraph()
    dag.add_nodes_from(sorted(set(rep.values())))
    evid: Dict[Tuple[int, int], Evidence] = {}
    for i, j, ev in graph.edges:
        a, b = rep[i], rep[j]
        if a != b:
            dag.add_edge(a, b)
            evid.setdefault((a, b), ev)
    if not nx.is_directed_acyclic_graph(dag):
        raise CycleBeyondEquality(f"hub {hub}: cycle through distinct classes")
    kept = [(a, b, evid[(a, b)]) for a, b in sorted(nx.transitive_reduction(dag).edges())]
    return InequalityGraph(hub, graph.mode, graph.nodes, tuple(kept), graph.absent,
                           graph.inconclusive, classes)
