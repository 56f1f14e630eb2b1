import random
from fractions import Fraction

import pytest

import oracles as orc
from cocal.forms import (KForm, compose, contract, e, is_decomposable, pullback, rank_of_form, restrict,
                         top_coefficient, two_form_length, wedge)
from cocal.surd import Surd


def rand_form(rng, dim, deg, density=0.6):
    from itertools import combinations
    terms = {idx: rng.randint(-3, 3) for idx in combinations(range(1, dim + 1), deg) if rng.random() < density}
    return KForm.from_terms(dim, terms, degree=deg)


def test_basic_products():
    assert wedge(e(4, 1), e(4, 2)) == e(4, 1, 2)
    assert wedge(e(4, 2), e(4, 1)) == -e(4, 1, 2)
    assert wedge(e(4, 1), e(4, 1)).is_zero()
    assert KForm.from_terms(4, {(3, 1): 2}) == -2 * e(4, 1, 3)


def test_wedge_matches_reference():
    rng = random.Random(1)
    for _ in range(30):
        a, b = rand_form(rng, 6, rng.randint(1, 3)), rand_form(rng, 6, rng.randint(1, 3))
        ref = orc.wedge(orc.from_kform(a), orc.from_kform(b))
        assert orc.from_kform(wedge(a, b)) == ref


def test_graded_commutativity_and_associativity():
    rng = random.Random(2)
    for _ in range(20):
        p, q = rng.randint(1, 3), rng.randint(1, 3)
        a, b, c = rand_form(rng, 7, p), rand_form(rng, 7, q), rand_form(rng, 7, 2)
        assert wedge(a, b) == wedge(b, a) * (-1) ** (p * q)
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


def test_contraction_is_an_antiderivation():
    rng = random.Random(3)
    for _ in range(20):
        v = [rng.randint(-2, 2) for _ in range(5)]
        a, b = rand_form(rng, 5, 2), rand_form(rng, 5, 2)
        lhs = contract(v, wedge(a, b))
        rhs = wedge(contract(v, a), b) + wedge(a, contract(v, b))
        assert lhs == rhs


def test_pullback_composes():
    rng = random.Random(4)
    m1 = [[rng.randint(-2, 2) for _ in range(4)] for _ in range(4)]
    m2 = [[rng.randint(-2, 2) for _ in range(4)] for _ in range(4)]
    a = rand_form(rng, 4, 2)
    assert pullback(compose(m1, m2), a) == pullback(m2, pullback(m1, a))


def test_pullback_of_top_form_is_determinant():
    import sympy as sp
    m = [[2, 1, 0], [0, 1, 3], [1, 0, 1]]
    vol = e(3, 1, 2, 3)
    assert top_coefficient(pullback(m, vol)) == sp.Matrix(m).det()


def test_length_and_rank():
    w = e(4, 1, 2) + e(4, 3, 4)
    assert two_form_length(w) == 2
    assert two_form_length(e(4, 1, 2)) == 1
    assert rank_of_form(w) == 4
    assert is_decomposable(e(5, 1, 2, 3) + e(5, 1, 2, 4))
    assert not is_decomposable(w)


def test_restrict_to_coordinate_plane():
    a = e(3, 1, 2) + 5 * e(3, 2, 3)
    assert restrict(a, [[1, 0, 0], [0, 1, 0]]) == e(2, 1, 2)


def test_json_round_trip_with_surds():
    a = KForm.from_terms(4, {(1, 2): Fraction(3, 7), (2, 4): Surd.sqrt(2) + 1})
    data = a.to_json()
    assert data["terms"][0]["indices"] == [1, 2]
    assert KForm.from_json(data) == a


def test_int_coefficients_are_coerced():
    a = KForm.from_vector(4, 2, [1, 0, 0, 0, 0, 2])
    assert all(isinstance(c, Fraction) for c in a.coeffs.values())
    assert (a / 2).coefficient(1, 2) == Fraction(1, 2)


def test_rejects_floats():
    with pytest.raises(TypeError):
        KForm.from_terms(3, {(1,): 0.5})


def test_out_of_range_index():
    with pytest.raises(ValueError):
        e(3, 4)
