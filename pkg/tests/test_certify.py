from __future__ import annotations

import json
from fractions import Fraction

import pytest

from tricenters.certify import (
    BoundCertificate,
    RatioProblem,
    WitnessFamily,
    inf_ratio,
    parse_constant,
    refute_positive_lower_bound,
    replay,
    sup_ratio,
    verify_inequality,
)
from tricenters.certify.verify import IDENTITY_NOTE
from tricenters.config import RunConfig

COARSE = RunConfig(epsilon_schedule=(Fraction(1, 100),))


@pytest.fixture(scope="module")
def proved():
    return verify_inequality(RatioProblem(1, 2, 3), "le", "2/3", COARSE)


def test_proves_centroid_incenter_bound(proved):
    assert proved.status == "proved"
    assert [c.epsilon for c in proved.interior] == [Fraction(1, 100)]


def test_replay_accepts(proved):
    assert replay(proved).ok


def test_certificate_roundtrip(proved):
    text = proved.to_json()
    back = BoundCertificate.from_json(text)
    assert back.to_json() == text
    assert replay(back).ok


def test_certificate_is_deterministic(proved):
    again = verify_inequality(RatioProblem(1, 2, 3), "le", "2/3", COARSE)
    assert again.to_json() == proved.to_json()


def test_replay_rejects_tampered(proved):
    d = json.loads(proved.to_json())
    d["claim"]["k"] = "1/2"
    assert not replay(BoundCertificate.from_dict(d)).ok


def test_refutes_too_small_constant():
    cert = verify_inequality(RatioProblem(1, 2, 3), "le", "1/2", COARSE)
    assert cert.status == "refuted"


def test_refutes_with_interior_counterexample():
    cert = verify_inequality(RatioProblem(18, 1, 2), "le", 1, COARSE)
    assert cert.status == "refuted"
    assert cert.counterexample is not None


def test_identity_claim_short_circuits():
    cert = verify_inequality(RatioProblem(8, 1, 2), "le", "3/2", COARSE)
    assert cert.proved and cert.note == IDENTITY_NOTE
    assert replay(cert).ok


def test_lower_bound_direction():
    cert = verify_inequality(RatioProblem(3, 9, 10), "ge", "1/2", COARSE)
    assert cert.proved
    assert replay(cert).ok


def test_unknown_direction():
    with pytest.raises(ValueError):
        verify_inequality(RatioProblem(1, 2, 3), "lt", 1, COARSE)


def test_sup_ratio_bracket():
    b = sup_ratio(RatioProblem(1, 2, 3))
    assert b.lower <= 2 / 3 <= b.upper
    assert b.upper - b.lower <= 1e-6


def test_inf_ratio_bracket():
    b = inf_ratio(RatioProblem(8, 5, 6))
    assert b.lower <= 0.6817039304 <= b.upper
    assert b.attainment["kind"] == "interior"


def test_inf_ratio_zero_at_boundary():
    b = inf_ratio(RatioProblem(6, 1, 3))
    assert b.lower == 0.0 and b.upper < 1e-300


def test_refute_positive_lower_bound():
    w = refute_positive_lower_bound(RatioProblem(7, 1, 4))
    assert isinstance(w, WitnessFamily)
    ratios = [p[2] for p in w.points]
    assert ratios == sorted(ratios, reverse=True)
    assert ratios[-1] < 1e-3


@pytest.mark.parametrize("text,value", [
    ("2/3", 2 / 3),
    ("2-sqrt(3)", 0.2679491924311228),
    ("(4+3*sqrt(2))/8", 1.0303300858899107),
    ("C1", 0.9002270330),
    ("C8", 0.6817039304),
])
def test_parse_constant(text, value):
    assert float(parse_constant(text)) == pytest.approx(value, abs=1e-9)
