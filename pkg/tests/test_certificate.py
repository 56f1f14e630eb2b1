import json

import pytest

from cocal import catalog
from cocal.certificate import Certificate, check_certificate, is_cocalibrated, make_certificate, verify_certificate
from cocal.forms import e
from cocal.g2 import standard_four_form


def _cert(pair=("A_{4,12}", "r_{3,1}")):
    from cocal.construct import construct
    return construct(*pair)


def test_table_certificate_uses_coframe_evidence():
    cert = _cert()
    assert cert.evidence.to_json()["kind"] == "coframe"
    assert verify_certificate(cert.algebra, cert)


def test_perturbed_psi_is_rejected():
    cert = _cert()
    cert.psi = cert.psi + e(7, 1, 2, 3, 4)
    rep = check_certificate(cert.algebra, cert)
    assert not rep.ok


def test_numeric_evidence_needs_closedness():
    g = catalog.sum_algebra([catalog.parse_name("A_{4,12}"), catalog.parse_name("so(3)")])
    cert = make_certificate(g, standard_four_form())
    rep = check_certificate(g, cert)
    assert rep.orbit_ok and not rep.closed and not rep.ok


def test_negative_of_hodge_dual_is_flagged():
    # d(-Psi) = 0 iff d(Psi) = 0, so existence still follows; the report says which sign is the dual
    g = catalog.sum_algebra([catalog.parse_name("R^4"), catalog.parse_name("R^3")])
    rep = check_certificate(g, make_certificate(g, -standard_four_form()))
    assert rep.ok and any("opposite orbit" in r for r in rep.reasons)
    assert is_cocalibrated(g, standard_four_form())


def test_malformed_json():
    with pytest.raises(ValueError):
        Certificate.from_json({"psi": {}})
    data = json.loads(_cert().dumps())
    data["evidence"]["kind"] = "oracle"
    with pytest.raises(ValueError):
        Certificate.from_json(data)
