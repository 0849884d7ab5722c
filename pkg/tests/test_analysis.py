from __future__ import annotations

from fractions import Fraction

import pytest

from tricenters.analysis import (
    BoundTableEntry,
    InequalityGraph,
    RefutedAbsent,
    Sampled,
    best_constant,
    bound_table,
    build_graph,
    check_chain,
    check_table,
    detect_equalities,
    transitive_reduction,
    verify_paper_constant,
)
from tricenters.analysis.best import match_constants
from tricenters.analysis.sampling import SampleEvaluator, precise_d2
from tricenters.config import RunConfig
from tricenters.errors import CycleBeyondEquality
from tricenters.shapespace import random_sample

SMALL = RunConfig(sample_count=1000)


@pytest.fixture(scope="module")
def equalities():
    return detect_equalities()


def test_sample_evaluator_encloses_precise_values():
    shapes = random_sample(40, 9)
    ev = SampleEvaluator(shapes)
    for i, j in [(1, 2), (3, 13), (6, 17), (15, 16), (11, 20)]:
        lo, hi = ev.d2(i, j)
        for k, shape in enumerate(shapes):
            p = precise_d2(i, j, shape, 256)
            if p is None:
                continue
            assert lo[k] <= float(p.upper) and float(p.lower) <= hi[k]


def test_equalities_found(equalities):
    found = {frozenset((r.pair1, r.pair2)) for r in equalities}
    assert found == {
        frozenset(((1, 10), (8, 10))),
        frozenset(((3, 4), (3, 20))),
        frozenset(((3, 5), (4, 5))),
    }
    assert all(r.midpoint_verified for r in equalities)


def test_graph_hub_3_chain():
    g = build_graph(3, config=SMALL)
    for i, j in [(9, 10), (10, 2), (2, 12), (12, 7), (7, 4)]:
        assert g.has_edge(i, j)
        assert isinstance(g.evidence(i, j), Sampled)
    assert g.mutual_pairs() == [(4, 20)]


def test_graph_hub_18_has_no_edges():
    g = build_graph(18, config=SMALL, nodes=range(1, 9))
    assert not g.edges
    assert all(isinstance(ev, RefutedAbsent) for _, _, ev in g.absent)


def test_transitive_reduction_preserves_reachability(equalities):
    g = build_graph(3, config=SMALL)
    red = transitive_reduction(g, equalities)
    assert red.classes == ((4, 20),)
    assert len(red.edges) < len(g.edges)
    assert red.reachability() == g.reachability()


def test_reduction_rejects_unexplained_cycle():
    g = InequalityGraph(1, "sampled", (2, 3), ((2, 3, Sampled(1)), (3, 2, Sampled(1))))
    with pytest.raises(CycleBeyondEquality):
        transitive_reduction(g)


def test_chain_checks():
    assert check_chain(3, [9, 10, 2, 12, 7, 4], config=SMALL).passed
    res = check_chain(18, [1, 2], config=SMALL)
    assert not res.passed
    assert res.links[0].status == "fail"


def test_bound_table_rows():
    table = bound_table()
    assert len(table.entries) == 302
    rows = {(e.n, e.i, e.j): e for e in table.entries}
    assert rows[(8, 1, 2)].is_identity
    assert float(rows[(1, 2, 3)].upper) == pytest.approx(2 / 3)


def test_table_rows_sound_on_small_sample():
    table = bound_table()
    picked = [e for e in table.entries if (e.n, e.i, e.j) in {(1, 2, 3), (8, 1, 2), (6, 1, 3), (3, 6, 7)}]
    rows = check_table(SMALL, entries=picked)
    assert rows and all(r.passed for r in rows)


def test_match_constants():
    matches = match_constants(0.6666666, 0.6666667)
    assert [name for name, _ in matches] == ["2/3"]


def test_best_constant_matches_closed_form():
    best = best_constant(1, 2, 3, "max")
    assert best.match == "2/3"


def test_constant_c1_agrees():
    rep = verify_paper_constant("C1", cross_check=False)
    assert rep.agree and not rep.flagged


def test_constant_c10_flagged():
    rep = verify_paper_constant("C10")
    assert not rep.agree
    assert rep.flagged
    assert abs(rep.lower - 0.4556836127) < 1e-9
