from fractions import Fraction

import pytest

from cocal import catalog
from cocal.catalog import CatalogError
from cocal.lie import jacobi_check


def test_names_round_trip():
    for aid in catalog.sample_ids(3) + catalog.sample_ids(4):
        assert catalog.parse_name(aid.name) == aid


def test_parameters_parse_as_fractions():
    aid = catalog.parse_name("A_{4,5}^{-2/3,-1/3}")
    assert aid.params == (Fraction(-2, 3), Fraction(-1, 3))


def test_out_of_domain_parameter_rejected():
    with pytest.raises(CatalogError):
        catalog.make("A_{4,2}", 0)


def test_unknown_family():
    with pytest.raises(CatalogError):
        catalog.parse_name("A_{4,13}")


def test_split_pair_prefers_the_requested_dimensions():
    a, b = catalog.split_pair("h3+R+r2+R")
    assert (a.name, b.name) == ("h3+R", "r2+R")
    a, b = catalog.split_pair("A_{5,7}^{1,-1,-1}+r2", (5, 2))
    assert a.dim == 5 and b.family == "r2"


def test_every_family_satisfies_jacobi():
    for fam in catalog.families():
        if fam.params:
            continue
        assert jacobi_check(fam.instantiate(()))
    for aid in catalog.sample_ids(4):
        assert jacobi_check(aid.algebra())


def test_sum_algebra_is_block_diagonal():
    g = catalog.sum_algebra([catalog.parse_name("A_{4,12}"), catalog.parse_name("so(3)")])
    assert g.dim == 7
    assert all(max(img.support(), default=0) <= 4 for img in g.d_images[:4])
    assert all(min(img.support()) >= 5 for img in g.d_images[4:])


def test_listed_examples_are_quadratic_extensions():
    seen = set()
    for i in range(3):
        a4, a3, coframe = catalog.listed_example(i)
        seen.add((a4.name, a3.name))
        assert len(coframe) == 7
    assert seen == {("A_{4,8}", "e(1,1)"), ("A_{4,12}", "r_{3,1}"), ("r2+r2", "r_{3,1}")}


def test_fixture_rows_resolve_parameter_conditions():
    assert catalog.fixture_row(catalog.parse_name("A_{4,9}^{-1/2}"))["betti"] == [1, 1, 1, 0]
    assert catalog.fixture_row(catalog.parse_name("A_{4,9}^{1/2}"))["betti"] == [1, 0, 0, 0]
