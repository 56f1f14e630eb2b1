from fractions import Fraction

import pytest

import oracles as orc
from cocal import catalog
from cocal.certificate import Certificate, CoframeEvidence, check_certificate, make_certificate
from cocal.classify import decide
from cocal.construct import (ConstructionError, construct, construct_5d_r2, construct_h3_kernel,
                             construct_via_symplectic_subspace)
from cocal.g2 import classify_four_form
from cocal.lie import change_coframe
from cocal.subspaces import NotFound

# one representative pair per route
ROUTE_SAMPLES = {
    "symplectic-subspace": ("A_{4,5}^{-1/2,1/2}", "so(3)"),
    "direct-assembly": None,
    "contact": ("A_{4,12}", "r_{3,1/2}"),
    "listed-example": ("r2+r2", "r_{3,1}"),
    "h3-ideal": ("A_{4,10}", "r_{3,1/2}"),
    "five-r2": ("A_{4,5}^{-1/2,-1/2}", "r2+R"),
    "h3-kernel-generic": ("A_{4,9}^{1/2}", "r'_{3,1}"),
    "h3-kernel-scalar": ("A_{4,9}^{1}", "r_{3,1/2}"),
}


def _direct_assembly_pair():
    for a4 in catalog.sample_ids(4):
        for a3 in catalog.sample_ids(3):
            v = decide(a4, a3)
            if v.route == "direct-assembly":
                return a4.name, a3.name
    raise AssertionError("no direct-assembly pair in the sample grid")


@pytest.mark.parametrize("route", sorted(ROUTE_SAMPLES))
def test_route_produces_valid_certificate(route):
    pair = ROUTE_SAMPLES[route] or _direct_assembly_pair()
    assert decide(*pair).route == route
    cert = construct(*pair)
    g = catalog.sum_algebra([catalog.parse_name(p) for p in pair])
    assert check_certificate(g, cert).ok
    assert orc.d(orc.structure(g), orc.from_kform(cert.psi)) == {}
    assert classify_four_form(cert.psi).is_hodge_dual


def test_det0_route():
    for a4 in catalog.sample_ids(4):
        for a3 in catalog.sample_ids(3):
            if decide(a4, a3).route == "h3-kernel-det0":
                cert = construct_h3_kernel(a4, a3)
                assert isinstance(cert.evidence, CoframeEvidence)
                assert check_certificate(cert.algebra, cert).ok
                return
    pytest.fail("no det0 pair in the sample grid")


def test_certificate_survives_serialization():
    cert = construct("A_{4,9}^{1/2}", "r'_{3,1}")
    back = Certificate.loads(cert.dumps())
    assert back.psi == cert.psi and back.route == cert.route
    assert check_certificate(back.algebra, back).ok


def test_not_exists_raises():
    with pytest.raises(ConstructionError):
        construct("A_{4,10}", "e(2)")


def test_symplectic_subspace_entry_point():
    cert = construct_via_symplectic_subspace("A_{4,1}", "so(3)")
    assert check_certificate(cert.algebra, cert).ok
    with pytest.raises(ConstructionError):
        construct_via_symplectic_subspace("A_{4,1}", "r2+R")


def test_five_plus_two():
    g5 = catalog.make("A_{5,7}", Fraction(-1, 2), Fraction(-1, 4), Fraction(-1, 4)).algebra()
    cert = construct_5d_r2(g5)
    assert check_certificate(cert.algebra, cert).ok
    with pytest.raises(NotFound):
        construct_5d_r2(catalog.parse_name("R^5").algebra())


def test_adapted_frame_certificate():
    cert = construct("A_{4,12}", "so(2,1)")
    g = cert.algebra
    frame = [[Fraction(int(i == j)) * (j + 1) for j in range(7)] for i in range(7)]
    from cocal.forms import pullback
    from cocal.linalg import inverse
    h = change_coframe(g, frame)
    psi_h = pullback(inverse(frame), cert.psi)
    adapted = make_certificate(h, psi_h, details={"frame": [[str(x) for x in r] for r in frame], "base": g.to_json()})
    assert check_certificate(h, adapted).ok
    adapted.details["frame"][0][0] = "5"
    assert not check_certificate(h, adapted).ok
