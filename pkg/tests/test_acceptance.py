"""End-to-end acceptance checks, one test per criterion.

Each test records a single PASS/FAIL line; ``conftest.py`` prints them in the
terminal summary, and running this file directly prints them as they finish.
"""

from __future__ import annotations

import time
from fractions import Fraction
from itertools import combinations

import mpmath
import pytest

from tricenters.analysis import (
    RefutedAbsent,
    build_graph,
    check_table,
    detect_equalities,
    verify_all_constants,
)
from tricenters.analysis.equalities import check_midpoint
from tricenters.centers import INDICES, cartesian_oracle, normalized_barycentric
from tricenters.centers.points import squared_distance_between
from tricenters.certify import RatioProblem, inf_ratio, parse_constant, replay, sup_ratio, verify_inequality
from tricenters.config import DEFAULT
from tricenters.errors import DegenerateCenter
from tricenters.shapespace import rational_sample

RESULTS: list = []
PROVED: list = []


def record(n: int, ok: bool, detail: str, started: float) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({time.time() - started:.1f}s) {detail}"
    RESULTS.append(line)
    print(line, flush=True)


# -- 1 ------------------------------------------------------------------------

ORACLE_TRIANGLES = 500
ORACLE_TOLERANCE = mpmath.mpf(10) ** -25


def _mpf(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def test_criterion_1_oracle_agreement():
    t0 = time.time()
    worst = mpmath.mpf(0)
    compared = skipped = 0
    for shape in rational_sample(ORACLE_TRIANGLES, seed=1):
        sides = shape.sides
        ivs = tuple((s, s) for s in sides)
        pts, xy = {}, {}
        for k in INDICES:
            try:
                pts[k] = normalized_barycentric(k, ivs, 128)
                xy[k] = cartesian_oracle(k, sides)
            except DegenerateCenter:
                pass
        with mpmath.workprec(192):
            for i, j in combinations(INDICES, 2):
                if i not in pts or j not in pts:
                    skipped += 1
                    continue
                d = squared_distance_between(pts[i], pts[j], ivs).clip_below(0).sqrt()
                ref = mpmath.sqrt((xy[i][0] - xy[j][0]) ** 2 + (xy[i][1] - xy[j][1]) ** 2)
                err = max(abs(_mpf(d.lower) - ref), abs(_mpf(d.upper) - ref))
                worst = max(worst, err)
                compared += 1
    elapsed = time.time() - t0
    ok = worst < ORACLE_TOLERANCE and elapsed < 120 and compared + skipped == ORACLE_TRIANGLES * 190
    record(1, ok, f"{compared} pairs compared, {skipped} undefined, max error {mpmath.nstr(worst, 3)}", t0)
    assert ok


# -- 2 ------------------------------------------------------------------------

EXPECTED_EQUALITIES = {
    frozenset(((1, 10), (8, 10))),
    frozenset(((3, 4), (3, 20))),
    frozenset(((3, 5), (4, 5))),
}
MIDPOINTS = ((1, 10, 8), (4, 3, 20), (3, 5, 4))


def test_criterion_2_equalities():
    t0 = time.time()
    records = detect_equalities()
    found = {frozenset((r.pair1, r.pair2)) for r in records}
    mids = [check_midpoint(i, m, j, count=50, seed=0) for i, m, j in MIDPOINTS]
    ok = found == EXPECTED_EQUALITIES and all(mids) and time.time() - t0 < 300
    record(2, ok, "; ".join(r.describe() for r in records) + f"; midpoints {mids}", t0)
    assert ok


# -- 3 ------------------------------------------------------------------------

HEADLINE = [
    ((6, 1, 3), "1"),
    ((6, 1, 3), "2-sqrt(3)"),
    ((3, 9, 10), "1"),
    ((3, 10, 2), "1"),
    ((3, 2, 12), "1"),
    ((3, 12, 7), "1"),
    ((3, 7, 4), "1"),
]


def _headline_certificates():
    if not PROVED:
        for p, k in HEADLINE:
            PROVED.append(verify_inequality(RatioProblem(*p), "le", k, DEFAULT))
    return PROVED


def test_criterion_3_headline_inequalities():
    t0 = time.time()
    certs = _headline_certificates()
    schedule = list(DEFAULT.epsilon_schedule)
    bad = []
    for (p, k), cert in zip(HEADLINE, certs):
        eps = [c.epsilon for c in cert.interior]
        if cert.status != "proved" or eps != schedule or not cert.boundary:
            bad.append(f"D{p} <= {k}: {cert.status} eps={[str(e) for e in eps]} {cert.note}")
    ok = not bad and time.time() - t0 < 1800
    record(3, ok, f"{len(certs) - len(bad)}/{len(certs)} proved at eps {[str(e) for e in schedule]}"
           + (f"; {bad}" if bad else ""), t0)
    assert ok


# -- 4 ------------------------------------------------------------------------

def test_criterion_4_hub_18():
    t0 = time.time()
    g = build_graph(18)
    expected = 19 * 18
    refuted = [ev for _, _, ev in g.absent if isinstance(ev, RefutedAbsent)]
    ok = not g.edges and not g.inconclusive and len(refuted) == expected and time.time() - t0 < 600
    record(4, ok, f"{len(refuted)}/{expected} pairs refuted by certified counterexamples, "
                  f"{len(g.edges)} edges, {len(g.inconclusive)} inconclusive", t0)
    assert ok


# -- 5 ------------------------------------------------------------------------

def test_criterion_5_table_soundness():
    t0 = time.time()
    rows = check_table(DEFAULT)
    failed = [r.as_dict()["row"] for r in rows if not r.passed]
    exact = [r for r in rows if r.exact_identity is not None]
    ok = not failed and all(r.exact_identity for r in exact) and time.time() - t0 < 1200
    record(5, ok, f"{len(rows) - len(failed)}/{len(rows)} rows violation-free on {DEFAULT.sample_count} samples, "
                  f"{sum(bool(r.exact_identity) for r in exact)}/{len(exact)} equality rows exact", t0)
    assert ok


# -- 6 ------------------------------------------------------------------------

BRACKET_ROWS = [
    ((1, 2, 3), "sup", "2/3"),
    ((2, 6, 8), "sup", "(4+3*sqrt(2))/8"),
    ((3, 6, 7), "inf", "C1"),
    ((3, 6, 7), "sup", "C2"),
    ((4, 6, 7), "sup", "C3"),
    ((5, 9, 10), "sup", "7-4*sqrt(2)"),
    ((5, 6, 10), "sup", "C5"),
    ((6, 1, 3), "sup", "2-sqrt(3)"),
    ((7, 3, 6), "inf", "C7"),
    ((8, 5, 6), "inf", "C8"),
    ((9, 5, 6), "inf", "C9"),
    ((10, 5, 6), "inf", "C10"),
]


def test_criterion_6_brackets():
    t0 = time.time()
    hubs = {p[0] for p, _, _ in BRACKET_ROWS}
    bad = []
    for p, side, k in BRACKET_ROWS:
        f = sup_ratio if side == "sup" else inf_ratio
        b = f(RatioProblem(*p), 1e-6)
        value = parse_constant(k)
        enc = value.enclosure(128)
        inside = b.lower <= float(enc.upper) and float(enc.lower) <= b.upper
        if not inside or b.upper - b.lower > 1e-6:
            bad.append(f"{side} D{p}: [{b.lower:.10f}, {b.upper:.10f}] vs {k}={float(value):.10f}")
    ok = not bad and hubs == set(range(1, 11)) and time.time() - t0 < 3600
    record(6, ok, f"{len(BRACKET_ROWS) - len(bad)}/{len(BRACKET_ROWS)} brackets of width <= 1e-6 "
                  f"contain the constant" + (f"; {bad}" if bad else ""), t0)
    assert ok


# -- 7 ------------------------------------------------------------------------

PRINTED = ("C1", "C2", "C4", "C5", "C6", "C7", "C8", "C9")


def test_criterion_7_constants():
    t0 = time.time()
    reports = {r.name: r for r in verify_all_constants(DEFAULT)}
    agree = [n for n in PRINTED if reports[n].agree]
    c10 = reports["C10"]
    ok = (len(agree) == len(PRINTED) and c10.flagged and c10.optimized is not None
          and c10.optimized.lower <= float(c10.upper) and float(c10.lower) <= c10.optimized.upper
          and time.time() - t0 < 60)
    record(7, ok, f"{len(agree)}/{len(PRINTED)} printed decimals reproduced; C10 flagged: root "
                  f"{float(c10.lower):.10f} vs printed {c10.printed}; {c10.note}", t0)
    assert ok


# -- 8 ------------------------------------------------------------------------

def test_criterion_8_replay_and_determinism():
    t0 = time.time()
    certs = _headline_certificates()
    extra = [verify_inequality(RatioProblem(8, 1, 2), "le", "3/2", DEFAULT),
             verify_inequality(RatioProblem(1, 2, 3), "le", "2/3", DEFAULT)]
    proved = [c for c in certs + extra if c.proved]
    replayed = [replay(c).ok for c in proved]
    again = [verify_inequality(RatioProblem(*c.problem), c.direction, c.constant, c.config) for c in proved]
    same = [a.to_json() == b.to_json() for a, b in zip(proved, again)]
    ok = bool(proved) and all(replayed) and all(same)
    record(8, ok, f"{sum(replayed)}/{len(proved)} proved certificates replay, "
                  f"{sum(same)}/{len(proved)} byte-identical on rerun", t0)
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
