import random
from fractions import Fraction

import pytest

from cocal import catalog
from cocal.forms import KForm, e, wedge
from cocal.g2 import standard_four_form
from cocal.subspaces import (OMEGA_STD, AssemblyError, NotFound, assemble_hodge_dual, complete_to_selfdual_triple,
                             exceptional_shape, gram, is_definite, length_two_pair_5d, null_combination,
                             subspace_dimension_formula, symplectic_subspace)


def test_standard_triple_gram():
    assert gram(OMEGA_STD) == [[2, 0, 0], [0, 2, 0], [0, 0, 2]]


def test_standard_assembly_is_the_standard_four_form():
    nus = [e(7, 5, 6), e(7, 6, 7), e(7, 5, 7)]
    omegas = [KForm.from_terms(7, w.terms(), degree=2) for w in OMEGA_STD]
    hd = assemble_hodge_dual(omegas, nus, (1, 2, 3, 4), (5, 6, 7))
    assert hd.psi == standard_four_form()


def test_completion_of_a_single_form():
    rng = random.Random(9)
    for _ in range(10):
        while True:
            w = KForm.from_vector(4, 2, [rng.randint(-3, 3) for _ in range(6)])
            if is_definite(gram([w])):
                break
        comp = complete_to_selfdual_triple([w])
        fam = [w] + comp.completions
        g = gram(fam)
        assert g[0][1] == g[0][2] == g[1][2] == 0
        # orthogonal, with Gram entries of one sign
        assert len({x > 0 for x in (g[0][0], g[1][1], g[2][2])}) == 1


def test_assembly_with_given_triple_reports_orientation():
    nus = [e(7, 5, 6), e(7, 6, 7), e(7, 5, 7)]
    omegas = [KForm.from_terms(7, w.terms(), degree=2) for w in OMEGA_STD]
    omegas[2] = -omegas[2]
    with pytest.raises(AssemblyError):
        assemble_hodge_dual(omegas, nus, (1, 2, 3, 4), (5, 6, 7))


def test_null_combination_of_indefinite_pair():
    fam = [e(4, 1, 2) + e(4, 3, 4), e(4, 1, 2) - e(4, 3, 4)]
    c = null_combination(fam)
    w = fam[0] * c[0] + fam[1] * c[1]
    assert not w.is_zero() and wedge(w, w).is_zero()
    assert null_combination(OMEGA_STD) is None


@pytest.mark.parametrize("name", ["A_{4,1}", "A_{4,5}^{-1/2,-1/2}", "r2+R^2", "A_{4,9}^{1/2}", "h3+R", "A_{4,12}"])
def test_symplectic_subspace(name):
    g = catalog.parse_name(name).algebra()
    sub = symplectic_subspace(g)
    assert len(sub.forms) == subspace_dimension_formula(g)
    assert all(g.d(w).is_zero() for w in sub.forms)
    assert is_definite(gram(sub.forms))


def test_exceptional_shapes():
    zero = [[Fraction(0)] * 4 for _ in range(4)]
    assert exceptional_shape(zero) is not None
    third = [[Fraction(-1, 3) if i == j and i > 0 else Fraction(0) for j in range(4)] for i in range(4)]
    third[0][0] = Fraction(1)
    assert exceptional_shape(third) is not None


def _a57(a, b, c):
    return catalog.make("A_{5,7}", a, b, c).algebra()


@pytest.mark.parametrize("params", [(Fraction(-1, 2), Fraction(-1, 4), Fraction(-1, 4)),
                                    (Fraction(1), Fraction(-1), Fraction(-1)),
                                    (Fraction(-1), Fraction(1, 2), Fraction(-1, 2))])
def test_length_two_pair(params):
    g5 = _a57(*params)
    pair = length_two_pair_5d(g5)
    assert is_definite(gram(list(pair.local)))
    assert pair.omega1.dim == 5


def test_length_two_pair_absent_for_exceptional_algebras():
    for g5 in (catalog.parse_name("R^5").algebra(), catalog.parse_name("h3+R^2").algebra(),
               _a57(Fraction(-1, 3), Fraction(-1, 3), Fraction(-1, 3))):
        with pytest.raises(NotFound):
            length_two_pair_5d(g5)
