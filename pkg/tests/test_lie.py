import random
from fractions import Fraction

import pytest
import sympy as sp

import oracles as orc
from cocal import catalog
from cocal.forms import e
from cocal.lie import (LieAlgebra, almost_abelian_data, change_coframe, classify_3d, closed_forms, cohomology,
                       derived_algebra, direct_sum, exact_forms, is_unimodular, jacobi_check, unimodular_kernel)


def scramble(rng, n):
    while True:
        p = [[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        if sp.Matrix(p).det() != 0:
            return p


def test_heisenberg():
    h3 = LieAlgebra([e(3, 2, 3), e(3, 2, 3) * 0, e(3, 2, 3) * 0], "h3")
    assert cohomology(h3) == [2, 2, 1]
    assert is_unimodular(h3)
    assert h3.bracket([0, 1, 0], [0, 0, 1]) == [-1, 0, 0]


def test_jacobi_violation_detected():
    bad = LieAlgebra([e(3, 2, 3), e(3, 1, 3), e(3, 1, 2)])
    assert jacobi_check(bad)  # so(3)-like, fine
    broken = LieAlgebra([e(3, 2, 3), e(3, 1, 2), e(3, 1, 2) * 0])
    assert not jacobi_check(broken)


@pytest.mark.parametrize("name", ["h3", "r_{3,1/2}", "r'_{3,2}", "e(1,1)", "so(2,1)"])
def test_cohomology_invariant_under_coframe_change(name):
    rng = random.Random(hash(name) % 1000)
    g = catalog.parse_name(name).algebra()
    h = change_coframe(g, scramble(rng, 3))
    assert cohomology(h) == cohomology(g) == orc.betti(orc.structure(h), 3)


def test_classify_3d_on_scrambled_samples():
    rng = random.Random(11)
    for aid in catalog.sample_ids(3):
        g = change_coframe(aid.algebra(), scramble(rng, 3))
        c = classify_3d(g)
        assert c.name == aid.family, aid
        if c.params:
            assert c.params == aid.params


def test_unimodular_kernel_and_derived():
    g = catalog.parse_name("A_{4,9}^{1/2}").algebra()
    assert not is_unimodular(g)
    u = unimodular_kernel(g)
    assert classify_3d(u.algebra).name == "h3"
    assert len(derived_algebra(g)) == 3


def test_almost_abelian_detection():
    assert almost_abelian_data(catalog.parse_name("A_{4,5}^{-1/2,-1/2}").algebra()) is not None
    assert almost_abelian_data(catalog.parse_name("A_{4,8}").algebra()) is None
    assert almost_abelian_data(catalog.parse_name("so(3)+R").algebra()) is None


def test_closed_and_exact_forms_have_expected_dimensions():
    g = catalog.parse_name("A_{4,8}").algebra()
    b = cohomology(g)
    for k in (1, 2, 3):
        assert len(closed_forms(g, k)) - len(exact_forms(g, k)) == b[k - 1]


def test_direct_sum_cohomology_is_kunneth():
    a, b = catalog.parse_name("h3").algebra(), catalog.parse_name("r2").algebra()
    s = direct_sum(a, b)
    pa, pb = [1] + cohomology(a), [1] + cohomology(b)
    kun = [sum(pa[i] * pb[k - i] for i in range(k + 1) if i < len(pa) and k - i < len(pb)) for k in range(6)]
    assert [1] + cohomology(s) == kun


def test_json_round_trip():
    g = catalog.parse_name("A_{4,12}").algebra()
    assert LieAlgebra.from_json(g.to_json()).d_images == g.d_images
