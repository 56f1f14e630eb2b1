"""Decide whether g4 + g3 carries a cocalibrated G2-structure.

The decision splits on which summands are unimodular.  Every verdict records
the clause that fired, the quantities it was decided on and either an
obstruction tag (when no structure exists) or the construction route that
produces one.

Obstruction tags:

cohomology-bound            h1(g4) + h1(u) - h2(g4) + h2(g3) > 4 for a unique
                            codimension-one unimodular ideal u of g4
almost-abelian-nonunimodular  g4 almost abelian, g3 not unimodular, and
                            g4 not unimodular or g3 != r2+R
five-dim-nonunimodular      g5 + r2 with g5 almost abelian, not unimodular
five-dim-length-one         g5 + r2 where every admissible pair of 2-forms
                            contains a combination of length one
orbit-sign                  A_{4,8}+e(2), A_{4,10}+e(2), A_{4,10}+e(1,1)
a41-h3-length               A_{4,1}+h3
almost-abelian-7d           A_{4,1}+R^3, an almost abelian 7d algebra
det-zero                    kernel h3, g3 = r2+R and det(F + tr(F)) != 0
discriminant                kernel h3, F or G scalar and the quadratic in X
                            has no positive value
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import catalog, linalg
from .catalog import AlgebraId
from .frames import heisenberg_kernel_frame, kernel_frame_3d
from .lie import (LieAlgebra, almost_abelian_data, classify_3d, cohomology, derived_algebra, direct_sum,
                  ideal_in_coframe, is_unimodular, unimodular_kernel)
from .subspaces import exceptional_shape

OBSTRUCTIONS = (
    "cohomology-bound", "almost-abelian-nonunimodular", "five-dim-nonunimodular", "five-dim-length-one",
    "orbit-sign", "a41-h3-length", "almost-abelian-7d", "det-zero", "discriminant",
)
ROUTES = (
    "symplectic-subspace", "contact", "h3-ideal", "five-r2", "h3-kernel-det0", "h3-kernel-generic",
    "h3-kernel-scalar", "listed-example", "direct-assembly",
)
SIMPLE = ("so(3)", "so(2,1)")
SPLIT_R = {"so(3)+R": "so(3)", "so(2,1)+R": "so(2,1)", "e(2)+R": "e(2)", "e(1,1)+R": "e(1,1)",
           "h3+R": "h3", "R^4": "R^3"}
LISTED = {("A_{4,8}", "e(1,1)"): 0, ("A_{4,12}", "r_{3,mu}"): 1, ("r2+r2", "r_{3,mu}"): 2}


@dataclass
class BranchData:
    unimodular: tuple[bool, bool]
    kernel_class: str | None
    betti4: list[int]
    betti3: list[int]
    derived_dim: int
    q: int | None
    extra: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"unimodular": list(self.unimodular), "kernel_class": self.kernel_class,
               "betti4": self.betti4, "betti3": self.betti3, "derived_dim": self.derived_dim, "q": self.q}
        out.update({k: _jsonable(v) for k, v in self.extra.items()})
        return out


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    return v


@dataclass
class Verdict:
    exists: bool
    branch: str
    obstruction: str | None = None
    route: str | None = None
    pair: tuple[str, str] | None = None
    data: BranchData | None = None
    trace: list[str] = field(default_factory=list)
    options: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.exists == (self.route is None) or self.exists == (self.obstruction is not None):
            raise ValueError("a verdict carries a route exactly when it exists, an obstruction otherwise")

    def to_json(self) -> dict:
        out = {"pair": list(self.pair) if self.pair else None, "exists": self.exists, "branch": self.branch,
               "obstruction": self.obstruction, "route": self.route, "trace": self.trace,
               "options": _jsonable(self.options)}
        if self.data is not None:
            out["data"] = self.data.to_json()
        return out

    @classmethod
    def from_json(cls, d: dict) -> "Verdict":
        data = None
        if d.get("data"):
            dd = dict(d["data"])
            data = BranchData(tuple(dd.pop("unimodular")), dd.pop("kernel_class"), dd.pop("betti4"),
                              dd.pop("betti3"), dd.pop("derived_dim"), dd.pop("q"), dd)
        pair = tuple(d["pair"]) if d.get("pair") else None
        return cls(bool(d["exists"]), d["branch"], d.get("obstruction"), d.get("route"), pair, data,
                   list(d.get("trace", [])), dict(d.get("options", {})))


def _as_id(x) -> AlgebraId:
    if isinstance(x, AlgebraId):
        return x
    if isinstance(x, str):
        return catalog.parse_name(x)
    raise TypeError(f"expected a catalog id, got {type(x).__name__}")


def _yes(branch, route, data, trace, pair, **options) -> Verdict:
    return Verdict(True, branch, None, route, pair, data, trace, options)


def _no(branch, tag, data, trace, pair) -> Verdict:
    return Verdict(False, branch, tag, None, pair, data, trace)


def _unique_ideal(g4: LieAlgebra):
    """The unique codimension-one unimodular ideal, or None if it is not unique."""
    if not is_unimodular(g4):
        return unimodular_kernel(g4)
    der = derived_algebra(g4)
    if len(der) == 3:
        return ideal_in_coframe(g4, der)
    return None


def branch_data(a4: AlgebraId, a3: AlgebraId) -> BranchData:
    g4, g3 = a4.algebra(), a3.algebra()
    b4, b3 = cohomology(g4), cohomology(g3)
    u = _unique_ideal(g4)
    kclass = q = None
    if u is not None:
        kclass = classify_3d(u.algebra).name
        q = b4[0] + cohomology(u.algebra)[0] - b4[1] + b3[1]
    return BranchData((is_unimodular(g4), is_unimodular(g3)), kclass, b4, b3, len(derived_algebra(g4)), q)


def decide(g4, g3) -> Verdict:
    a4, a3 = _as_id(g4), _as_id(g3)
    if a4.dim != 4 or a3.dim != 3:
        raise ValueError(f"expected a 4-dimensional and a 3-dimensional algebra, got {a4} and {a3}")
    data = branch_data(a4, a3)
    pair = (a4.name, a3.name)
    u4, u3 = data.unimodular
    trace = [f"pair {a4.name} + {a3.name}",
             f"g4 {'is' if u4 else 'is not'} unimodular, g3 {'is' if u3 else 'is not'} unimodular",
             f"betti numbers g4 {tuple(data.betti4)}, g3 {tuple(data.betti3)}, dim [g4,g4] = {data.derived_dim}"]
    if data.kernel_class:
        trace.append(f"unique codimension-one unimodular ideal u of type {data.kernel_class}")
    args = (a4, a3, data, trace, pair)
    if not u4 and u3:
        return _nonuni_uni(*args)
    if u4 and u3:
        return _uni_uni(*args)
    if u4:
        return _uni_nonuni(*args)
    return _nonuni_nonuni(*args)


# -------------------------------------------------------------- g4 not unimodular, g3 unimodular

def _nonuni_uni(a4, a3, data, trace, pair):
    q = data.q
    trace.append(f"Q = h1(g4) + h1(u) - h2(g4) + h2(g3) = {q - data.betti3[1]} + {data.betti3[1]} = {q}")
    if q > 4:
        trace.append("Q > 4: cohomological obstruction")
        return _no("nonunimodular-unimodular", "cohomology-bound", data, trace, pair)
    trace.append("Q <= 4")
    if data.kernel_class == "e(1,1)":
        trace.append("kernel e(1,1): contact forms on g3 replace the symplectic subspace")
        return _yes("nonunimodular-unimodular", "contact", data, trace, pair)
    d_avail = 4 + data.betti3[1] - q
    trace.append(f"symplectic subspace of dimension {d_avail} >= h2(g3) = {data.betti3[1]}")
    return _yes("nonunimodular-unimodular", "symplectic-subspace", data, trace, pair, d=data.betti3[1])


# -------------------------------------------------------------- both unimodular

def _uni_uni(a4, a3, data, trace, pair):
    h2g3 = data.betti3[1]
    if a3.family in SIMPLE:
        trace.append(f"g3 = {a3.name} is simple: all 2-forms on g3 are exact, D = 0")
        return _yes("unimodular-unimodular/simple-g3", "symplectic-subspace", data, trace, pair, d=0)
    if a4.family in SPLIT_R:
        h = SPLIT_R[a4.family]
        h2h = cohomology(catalog.make(h).algebra())[1]
        trace.append(f"g4 = {h} + R with h2({h}) = {h2h}, h2(g3) = {h2g3}")
        if h in SIMPLE:
            trace.append(f"{h} is simple: swap roles, {h} becomes the 3-dimensional part with D = 0")
            return _yes("unimodular-unimodular/split-g4", "symplectic-subspace", data, trace, pair, d=0, swap=True)
        if h2h < h2g3:
            trace.append(f"h2({h}) < h2(g3): swap roles, {a3.name} + R becomes the 4-dimensional part")
            route = "direct-assembly" if h2h == 3 else "symplectic-subspace"
            return _yes("unimodular-unimodular/split-g4", route, data, trace, pair, d=h2h, swap=True)
        route = "direct-assembly" if h2g3 == 3 else "symplectic-subspace"
        return _yes("unimodular-unimodular/split-g4", route, data, trace, pair, d=h2g3, swap=False)
    key = (a4.family, a3.family)
    if key in (("A_{4,1}", "e(2)"), ("A_{4,1}", "e(1,1)")):
        trace.append("A_{4,1} carries a closed symplectic form, enough for h2(g3) = 1")
        return _yes("unimodular-unimodular/listed", "symplectic-subspace", data, trace, pair, d=1)
    if key == ("A_{4,8}", "e(1,1)"):
        trace.append("listed example with an explicit adapted coframe")
        return _yes("unimodular-unimodular/listed", "listed-example", data, trace, pair, example=LISTED[key])
    # obstructions
    if data.q is not None and data.q > 4:
        trace.append(f"u = [g4,g4] is unique, Q = {data.q} > 4")
        return _no("unimodular-unimodular", "cohomology-bound", data, trace, pair)
    if key in (("A_{4,8}", "e(2)"), ("A_{4,10}", "e(2)"), ("A_{4,10}", "e(1,1)")):
        trace.append(f"Q = {data.q}; the required pair of 2-forms has indefinite Gram matrix")
        return _no("unimodular-unimodular", "orbit-sign", data, trace, pair)
    if key == ("A_{4,1}", "h3"):
        trace.append("the e^1 component of a closed 4-form has length at most one")
        return _no("unimodular-unimodular", "a41-h3-length", data, trace, pair)
    if key == ("A_{4,1}", "R^3"):
        trace.append("g is almost abelian in dimension 7 and excluded by the almost abelian classification")
        return _no("unimodular-unimodular", "almost-abelian-7d", data, trace, pair)
    raise AssertionError(f"no clause applies to {pair}")


# -------------------------------------------------------------- g4 unimodular, g3 not

def _uni_nonuni(a4, a3, data, trace, pair):
    g4 = a4.algebra()
    aa = almost_abelian_data(g4)
    if aa is not None:
        trace.append("g4 is almost abelian")
        if a3.family != "r2+R":
            trace.append(f"g3 = {a3.name} != r2+R")
            return _no("unimodular-nonunimodular", "almost-abelian-nonunimodular", data, trace, pair)
        g5 = direct_sum(g4, LieAlgebra.abelian(1))
        shape = exceptional_shape(almost_abelian_data(g5).h)
        if shape is not None:
            trace.append(f"g5 = g4 + R has adjoint action of shape {shape}")
            return _no("unimodular-nonunimodular/almost-abelian", "five-dim-length-one", data, trace, pair)
        trace.append("g3 = r2+R; g4 + R is a unimodular almost abelian 5d algebra with a length-two pair")
        return _yes("unimodular-nonunimodular/almost-abelian", "five-r2", data, trace, pair)
    trace.append(f"g4 is not almost abelian; [g4,g4] of type {data.kernel_class}")
    if a4.family in SPLIT_R and SPLIT_R[a4.family] in SIMPLE:
        trace.append("g is not solvable: swap roles, the simple factor of g4 becomes the 3-dimensional part")
        return _yes("unimodular-nonunimodular/derived", "symplectic-subspace", data, trace, pair, d=0, swap=True)
    if data.kernel_class == "h3":
        trace.append("[g4,g4] = h3: the ideal construction applies")
        return _yes("unimodular-nonunimodular/derived", "h3-ideal", data, trace, pair)
    raise AssertionError(f"no clause applies to {pair}")


# -------------------------------------------------------------- neither unimodular

def _scalar(m) -> bool:
    return m[0][1] == 0 and m[1][0] == 0 and m[0][0] == m[1][1]


def _nonuni_nonuni(a4, a3, data, trace, pair):
    k = data.kernel_class
    if k in ("e(2)", "e(1,1)"):
        trace.append(f"unimodular kernel {k}")
        if a3.family == "r_{3,mu}" and a3.params == (1,):
            trace.append("g3 = r_{3,1} has no contact form: listed example")
            return _yes("nonunimodular-nonunimodular/kernel-e", "listed-example", data, trace, pair,
                        example=LISTED[(a4.family, "r_{3,mu}")])
        trace.append(f"g3 = {a3.name} has a contact form")
        return _yes("nonunimodular-nonunimodular/kernel-e", "contact", data, trace, pair)
    if k in ("R^3",):
        trace.append("unimodular kernel abelian: g4 is almost abelian and not unimodular")
        return _no("nonunimodular-nonunimodular", "almost-abelian-nonunimodular", data, trace, pair)
    if k != "h3":
        raise AssertionError(f"unexpected kernel {k} for {pair}")
    fr = heisenberg_kernel_frame(a4.algebra())
    k3 = kernel_frame_3d(a3.algebra())
    f, g = fr.f, k3.g
    trf, detf = fr.trace, linalg.det(f)
    trg, detg = k3.trace, k3.det
    data.extra.update({"trF": trf, "detF": detf, "trG": trg, "detG": detg})
    trace.append(f"kernel h3: tr F = {trf}, det F = {detf}; tr G = {trg}, det G = {detg}")
    if detg == 0:
        kf = detf + 2 * trf * trf
        trace.append(f"det G = 0 (g3 = r2+R); det(F + tr(F) id) = det F + 2 tr(F)^2 = {kf}")
        if kf == 0:
            return _yes("nonunimodular-nonunimodular/A49", "h3-kernel-det0", data, trace, pair)
        return _no("nonunimodular-nonunimodular", "det-zero", data, trace, pair)
    if _scalar(f):
        # F = tr(F)/2 id: need -3/4 tr(G)^2 > det(G) or det(G) > 0
        lhs = -Fraction(3, 4) * trg * trg
        ok = lhs > detg or detg > 0
        trace.append(f"F scalar: -3/4 tr(G)^2 = {lhs} > det G = {detg} or det G > 0: {ok}")
        if ok:
            return _yes("nonunimodular-nonunimodular/kernel-h3", "h3-kernel-scalar", data, trace, pair, scalar="F")
        return _no("nonunimodular-nonunimodular", "discriminant", data, trace, pair)
    if _scalar(g):
        rhs = -Fraction(3, 4) * trf * trf
        ok = detf > rhs
        trace.append(f"G scalar: det F = {detf} > -3/4 tr(F)^2 = {rhs}: {ok}")
        if ok:
            return _yes("nonunimodular-nonunimodular/kernel-h3", "h3-kernel-scalar", data, trace, pair, scalar="G")
        return _no("nonunimodular-nonunimodular", "discriminant", data, trace, pair)
    trace.append("neither F nor G is scalar")
    return _yes("nonunimodular-nonunimodular/kernel-h3", "h3-kernel-generic", data, trace, pair)


# -------------------------------------------------------------- five plus two

def decide_5d_r2(g5: LieAlgebra) -> Verdict:
    """g5 + r2 for an almost abelian 5-dimensional g5."""
    if g5.dim != 5:
        raise ValueError("a 5-dimensional algebra is required")
    data = almost_abelian_data(g5)
    if data is None:
        raise ValueError("the algebra is not almost abelian")
    name = g5.name or "g5"
    pair = (name, "r2")
    trace = [f"{name} is almost abelian with adjoint matrix {[[str(x) for x in r] for r in data.h]}"]
    if not is_unimodular(g5):
        trace.append("g5 is not unimodular")
        return _no("five-plus-two", "five-dim-nonunimodular", None, trace, pair)
    shape = exceptional_shape(data.h)
    if shape is not None:
        trace.append(f"adjoint action of shape {shape}")
        return _no("five-plus-two", "five-dim-length-one", None, trace, pair)
    trace.append("unimodular and not exceptional")
    return _yes("five-plus-two", "five-r2", None, trace, pair)


def explain(v: Verdict) -> str:
    head = "Exists" if v.exists else "NotExists"
    tail = f"route {v.route}" if v.exists else f"obstruction {v.obstruction}"
    lines = [f"{head} [{v.branch}] {tail}"]
    lines += [f"  {t}" for t in v.trace]
    return "\n".join(lines)
