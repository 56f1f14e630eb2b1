import json

import pytest

from cocal import catalog
from cocal.classify import OBSTRUCTIONS, ROUTES, Verdict, decide, decide_5d_r2, explain


@pytest.mark.parametrize("pair, exists", [
    (("A_{4,12}", "r_{3,1}"), True),         # one of the listed examples
    (("A_{4,8}", "e(1,1)"), True),
    (("A_{4,8}", "h3"), False),              # both unimodular, none of the three sub-clauses
    (("A_{4,8}", "r3"), True),               # derived algebra h3, g3 not unimodular
    (("so(3)+R", "r3"), True),
    (("r2+R^2", "R^3"), False),              # cohomology bound
    (("A_{4,7}", "r2+R"), False),            # kernel h3 but g3 = r2+R
    (("A_{4,4}", "r_{3,1/2}"), False),       # abelian kernel, both non-unimodular
    (("A_{4,1}", "e(2)"), True),
    (("A_{4,1}", "so(3)"), True),
    (("A_{4,2}^{-2}", "r2+R"), True),        # almost abelian g4 with r2+R
    (("R^4", "r2+R"), False),
    (("A_{4,9}^{-1/2}", "r2+R"), True),
])
def test_known_verdicts(pair, exists):
    v = decide(*pair)
    assert v.exists is exists
    if exists:
        assert v.route in ROUTES and v.obstruction is None
    else:
        assert v.obstruction in OBSTRUCTIONS and v.route is None


def test_verdict_invariant_enforced():
    with pytest.raises(ValueError):
        Verdict(True, "x", "cohomology-bound", None, None, None, [])
    with pytest.raises(ValueError):
        Verdict(False, "x", None, "contact", None, None, [])


def test_verdict_json_round_trip():
    v = decide("A_{4,9}^{1}", "r_{3,-1/2}")
    back = Verdict.from_json(json.loads(json.dumps(v.to_json())))
    assert back.exists == v.exists and back.route == v.route and back.options == v.options
    assert back.data.betti4 == v.data.betti4


def test_explain_mentions_the_decision():
    text = explain(decide("A_{4,10}", "e(2)"))
    assert text.startswith("NotExists") and "orbit-sign" in text


def test_five_dimensional_criterion():
    for name in ("R^5", "h3+R^2", "A_{5,7}^{-1/3,-1/3,-1/3}"):
        assert not decide_5d_r2(catalog.parse_name(name).algebra()).exists
    assert decide_5d_r2(catalog.parse_name("A_{5,7}^{-1/2,-1/4,-1/4}").algebra()).exists
    v = decide_5d_r2(catalog.parse_name("A_{5,7}^{1,1,1}").algebra())
    assert v.obstruction == "five-dim-nonunimodular"


def test_dimension_check():
    with pytest.raises(ValueError):
        decide("h3", "A_{4,1}")


def test_every_branch_is_reached():
    branches = set()
    for a4 in catalog.sample_ids(4)[::3]:
        for a3 in catalog.sample_ids(3)[::2]:
            branches.add(decide(a4, a3).data.unimodular)
    assert branches == {(True, True), (True, False), (False, True), (False, False)}
