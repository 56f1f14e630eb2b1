from fractions import Fraction

import sympy as sp
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from cocal import catalog
from cocal.certificate import check_certificate, make_certificate
from cocal.classify import OBSTRUCTIONS, ROUTES, branch_data, decide
from cocal.construct import construct
from cocal.forms import KForm, pullback, wedge
from cocal.lie import change_coframe, classify_3d, cohomology, derived_algebra, is_unimodular, unimodular_kernel
from cocal.linalg import inverse
from cocal.subspaces import combination, gram, is_definite, null_combination

IDS4 = catalog.sample_ids(4)
IDS3 = catalog.sample_ids(3)
SLOW = settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def matrices(n):
    return st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=n, max_size=n).filter(
        lambda m: sp.Matrix(m).det() != 0)


@SLOW
@given(st.sampled_from(IDS4), st.sampled_from(IDS3))
def test_verdicts_are_total_and_well_formed(a4, a3):
    v = decide(a4, a3)
    if v.exists:
        assert v.route in ROUTES
    else:
        assert v.obstruction in OBSTRUCTIONS
    assert v.trace and v.branch


@SLOW
@given(st.sampled_from([a for a in IDS4 if not is_unimodular(a.algebra())]), st.sampled_from(IDS3))
def test_q_matches_table_plus_h2(a4, a3):
    row = catalog.fixture_row(a4)
    data = branch_data(a4, a3)
    assert data.q == row["q"][0] + cohomology(a3.algebra())[1]


@SLOW
@given(st.sampled_from(IDS4), matrices(4))
def test_invariants_ignore_the_basis(a4, p):
    g = a4.algebra()
    h = change_coframe(g, [[Fraction(x) for x in r] for r in p])
    assert cohomology(h) == cohomology(g)
    assert is_unimodular(h) == is_unimodular(g)
    assert len(derived_algebra(h)) == len(derived_algebra(g))
    if not is_unimodular(g):
        assert classify_3d(unimodular_kernel(h).algebra).name == classify_3d(unimodular_kernel(g).algebra).name


@settings(max_examples=8, deadline=None)
@given(st.sampled_from([("A_{4,12}", "r_{3,1/2}"), ("A_{4,9}^{1/2}", "r'_{3,1}"), ("A_{4,1}", "so(3)"),
                        ("A_{4,10}", "r_{3,1/2}")]), matrices(7))
def test_certificates_transport_to_any_basis(pair, p):
    cert = construct(*pair)
    p = [[Fraction(x) for x in r] for r in p]
    h = change_coframe(cert.algebra, p)
    psi_h = pullback(inverse(p), cert.psi)
    assert h.d(psi_h).is_zero()
    assert check_certificate(h, make_certificate(h, psi_h)).closed


two_forms = st.lists(st.integers(-3, 3), min_size=6, max_size=6).map(lambda v: KForm.from_vector(4, 2, v))


@settings(max_examples=200, deadline=None)
@given(st.lists(two_forms, min_size=1, max_size=3))
def test_gram_definite_iff_no_degenerate_combination(fam):
    assume(sp.Matrix([w.to_vector() for w in fam]).rank() == len(fam))
    c = null_combination(fam)
    if is_definite(gram(fam)):
        assert c is None
    else:
        w = combination(fam, c)
        assert not w.is_zero() and wedge(w, w).is_zero()
