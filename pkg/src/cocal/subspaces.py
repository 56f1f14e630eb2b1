"""Subspaces of 2-forms on a 4-dimensional space and the Hodge-dual assembly.

On R^4 the wedge pairing <a, b> = (a ^ b) / e^{1234} has signature (3, 3).
A subspace of 2-forms consists of symplectic forms (apart from 0) iff its
Gram matrix is definite, and every definite 3-space is the space of
self-dual forms of a conformal structure.  Given closed forms spanning
such a space on a factor of R^7 = R^4 + R^3, the 4-form
    1/2 omega_1^2 + sum_i omega_i ^ nu_i
is a Hodge dual for a suitably oriented basis nu of 2-forms on R^3.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import isqrt
from typing import Sequence

from . import linalg
from .forms import KForm, e, mask_of, pullback, wedge
from .g2 import classify_four_form, standard_four_form
from .lie import LieAlgebra, Subalgebra, almost_abelian_data, classify_3d, change_coframe, is_unimodular, unimodular_kernel
from .surd import Surd

# the standard self-dual triple on R^4
OMEGA_STD = [e(4, 1, 2) + e(4, 3, 4), e(4, 1, 3) - e(4, 2, 4), e(4, 1, 4) + e(4, 2, 3)]


class AssemblyError(ValueError):
    pass


def _is_square(q: Fraction) -> bool:
    if q < 0:
        return False
    return isqrt(q.numerator) ** 2 == q.numerator and isqrt(q.denominator) ** 2 == q.denominator


# ------------------------------------------------------------------- local / ambient

def localize(w: KForm, idx: Sequence[int]) -> KForm:
    """View a form supported on the indices `idx` as a form on R^len(idx)."""
    pos = {i: k + 1 for k, i in enumerate(idx)}
    terms = []
    for ind, c in w.terms():
        if any(i not in pos for i in ind):
            raise ValueError(f"{w} is not supported on indices {tuple(idx)}")
        terms.append((tuple(pos[i] for i in ind), c))
    return KForm.from_terms(len(idx), terms, degree=w.degree)


def globalize(w: KForm, idx: Sequence[int], dim: int) -> KForm:
    return KForm.from_terms(dim, [(tuple(idx[i - 1] for i in ind), c) for ind, c in w.terms()], degree=w.degree)


def _support4(fam: Sequence[KForm]) -> tuple[int, ...]:
    if fam[0].dim == 4:
        return (1, 2, 3, 4)
    sup = set()
    for w in fam:
        sup |= w.support()
    if len(sup) > 4:
        raise ValueError("forms are not supported on a 4-dimensional coordinate subspace")
    return tuple(sorted(sup))


# ------------------------------------------------------------------- Gram data

def pairing(a: KForm, b: KForm, v4: Sequence[int] | None = None):
    """Coefficient of e^{v4} in a ^ b."""
    top = wedge(a, b)
    if v4 is None:
        v4 = _support4([a, b]) if a.dim != 4 else (1, 2, 3, 4)
    m = mask_of(v4)
    if any(k != m for k in top.coeffs):
        raise ValueError("wedge product leaves the 4-dimensional subspace")
    return top.coeffs.get(m, Fraction(0))


def gram(fam: Sequence[KForm], v4: Sequence[int] | None = None) -> list[list]:
    if not fam:
        return []
    if any(w.degree != 2 for w in fam):
        raise ValueError("a family of 2-forms is required")
    if v4 is None:
        v4 = _support4(fam)
    return [[pairing(a, b, v4) for b in fam] for a in fam]


def is_definite(h: Sequence[Sequence]) -> bool:
    return linalg.definiteness(h) != 0


def null_combination(fam: Sequence[KForm], v4: Sequence[int] | None = None) -> list | None:
    """Coefficients c != 0 with (sum c_i omega_i)^2 = 0, or None if the Gram
    matrix is definite.  Coefficients are exact and may involve square roots."""
    h = gram(fam, v4)
    if is_definite(h):
        return None
    p, diag = linalg.congruence_diagonalize(h)
    n = len(h)
    y = [Fraction(0)] * n
    zero = next((i for i, d in enumerate(diag) if not d), None)
    if zero is not None:
        y[zero] = Fraction(1)
    else:
        i = next(i for i in range(n) if diag[i] > 0)
        j = next(j for j in range(n) if diag[j] < 0)
        ratio = -diag[i] / diag[j]
        y[i] = Fraction(1)
        y[j] = Fraction(isqrt(ratio.numerator), isqrt(ratio.denominator)) if _is_square(ratio) else Surd.sqrt(ratio)
    # P H P^T = D, so c = P^T y is isotropic for H
    c = [sum((p[k][i] * y[k] for k in range(n)), Fraction(0)) for i in range(n)]
    return [x.simplify() if isinstance(x, Surd) else x for x in c]


def combination(fam: Sequence[KForm], coeffs: Sequence) -> KForm:
    out = KForm(fam[0].dim, 2)
    for w, c in zip(fam, coeffs):
        out = out + w * c
    return out


# ------------------------------------------------------------------- completion

def _antisym(w: KForm) -> list[list[Fraction]]:
    s = [[Fraction(0)] * 4 for _ in range(4)]
    for (i, j), c in w.terms():
        s[i - 1][j - 1] = c
        s[j - 1][i - 1] = -c
    return s


def _vec(w: KForm) -> list:
    return w.to_vector()


def _orth_complement(rhos: Sequence[KForm]) -> list[KForm]:
    basis = [KForm.from_vector(4, 2, row) for row in linalg.identity(6)]
    rows = [[pairing(r, b, (1, 2, 3, 4)) for b in basis] for r in rhos]
    ns = linalg.nullspace(rows, n_cols=6) if rows else linalg.identity(6)
    return [KForm.from_vector(4, 2, v) for v in ns]


def _candidates(basis: Sequence[KForm], radius: int = 2):
    """Small integer combinations, shortest first."""
    m = len(basis)
    vecs = [c for c in product(range(-radius, radius + 1), repeat=m) if any(c)]
    vecs.sort(key=lambda c: (max(map(abs, c)), sum(map(abs, c)), [-x for x in c]))
    for c in vecs:
        yield combination(basis, c)


def _frame_data(rhos: Sequence[KForm]):
    """Rational coframe f' in which rho_1, rho_2, rho_3 are diagonal in the
    standard pattern, plus the rational invariants X, Y of the rescaling."""
    s1, s2, s3 = (_antisym(r) for r in rhos)
    s1i = linalg.inverse(s1)
    p = linalg.matmul(s1i, s2)
    q = linalg.matmul(s1i, s3)
    pq = linalg.matmul(p, q)
    for k in range(4):
        x = [Fraction(int(i == k)) for i in range(4)]
        w = [x, _apply(pq, x), _apply(q, x), [-t for t in _apply(p, x)]]
        if linalg.rank(w) == 4:
            break
    else:
        return None
    fp = linalg.inverse(linalg.transpose(w))  # rows: dual coframe f'
    loc = [pullback(linalg.inverse(fp), r) for r in rhos]  # rho in f' coordinates
    c = [dict(((i, j), v) for (i, j), v in r.terms()) for r in loc]
    if set(c[0]) - {(1, 2), (3, 4)} or set(c[1]) - {(1, 3), (2, 4)} or set(c[2]) - {(1, 4), (2, 3)}:
        return None
    p12, p34 = c[0].get((1, 2), 0), c[0].get((3, 4), 0)
    q13, q24 = c[1].get((1, 3), 0), c[1].get((2, 4), 0)
    t14, t23 = c[2].get((1, 4), 0), c[2].get((2, 3), 0)
    if not all((p12, p34, q13, q24, t14, t23)):
        return None
    x_inv = -q13 * p12 * p34 / q24
    y_inv = t23 * p34 / (t14 * p12)
    return fp, (p12, p34, q13, q24, t14, t23), x_inv, y_inv


def _apply(m, x):
    return [sum((a * b for a, b in zip(row, x)), Fraction(0)) for row in m]


@dataclass
class SelfDualCompletion:
    """rho_1 = omega_1, span(rho_1..rho_k) = span(omega_1..omega_k), the rho
    pairwise orthogonal with Gram signs equal, and omega_j = sum_i change[i][j] rho_i.

    When `coframe` is set, u = coframe satisfies u* omega~_i = rho_i / kappa_i
    exactly (kappa_1 = 1); entries may lie in a quadratic extension.
    """
    rhos: list[KForm]
    change: list[list[Fraction]]
    norms: list[Fraction]
    coframe: list[list] | None = None
    kappa: list | None = None

    @property
    def completions(self) -> list[KForm]:
        return self.rhos[len(self.change):]


def complete_to_selfdual_triple(fam: Sequence[KForm], want_coframe: bool = True) -> SelfDualCompletion:
    """Extend k <= 3 forms on R^4 with definite Gram to a self-dual triple."""
    fam = [localize(w, _support4(fam)) if w.dim != 4 else w for w in fam]
    k = len(fam)
    if not 1 <= k <= 3:
        raise ValueError("between one and three forms are required")
    h = gram(fam)
    if not is_definite(h):
        raise ValueError("Gram matrix is not definite")
    # Gram-Schmidt for the wedge pairing
    rhos: list[KForm] = []
    change = [[Fraction(0)] * k for _ in range(3)]
    for j, w in enumerate(fam):
        r = w
        for i, prev in enumerate(rhos):
            mu = pairing(w, prev, (1, 2, 3, 4)) / pairing(prev, prev, (1, 2, 3, 4))
            change[i][j] = mu
            r = r - prev * mu
        change[j][j] = Fraction(1)
        rhos.append(r)
    n1 = pairing(rhos[0], rhos[0], (1, 2, 3, 4))
    sgn = 1 if n1 > 0 else -1

    def extend(current: list[KForm], need_frame: bool) -> SelfDualCompletion | None:
        if len(current) == 3:
            norms = [pairing(r, r, (1, 2, 3, 4)) for r in current]
            comp = SelfDualCompletion(list(current), [row[:] for row in change[:k]], norms)
            if need_frame:
                _attach_frame(comp)
                if comp.coframe is None:
                    return None
            return comp
        tried = 0
        for cand in _candidates(_orth_complement(current)):
            nrm = pairing(cand, cand, (1, 2, 3, 4))
            if nrm == 0 or (nrm > 0) != (sgn > 0):
                continue
            out = extend(current + [cand], need_frame)
            if out is not None:
                return out
            tried += 1
            if tried > (40 if len(current) == 1 else 400):
                break
        return None

    comp = extend(rhos, want_coframe) if want_coframe else None
    if comp is None:
        comp = extend(rhos, False)
    if comp is None:
        raise AssertionError("no completion found; the complement should contain definite vectors")
    # keep the change matrix k x k
    comp.change = [row[:] for row in change[:k]]
    return comp


def _attach_frame(comp: SelfDualCompletion) -> None:
    data = _frame_data(comp.rhos)
    if data is None:
        return
    fp, (p12, p34, q13, q24, t14, t23), x_inv, y_inv = data
    if x_inv <= 0 or y_inv <= 0 or not _is_square(x_inv * y_inv):
        return
    # (s1 s3)^2 = X and (s3 / s1)^2 = Y, so s1^2 = sqrt(X / Y), s3^2 = sqrt(X Y)
    r_xy = Fraction(isqrt((x_inv * y_inv).numerator), isqrt((x_inv * y_inv).denominator))
    s1 = Surd.sqrt(r_xy / y_inv)
    s3 = Surd.sqrt(r_xy)
    s2 = p12 / s1
    s4 = p34 / s3
    scale = [s1, s2, s3, s4]
    u = [[scale[i] * x for x in fp[i]] for i in range(4)]
    kappa = [Fraction(1), (q13 / (s1 * s3)).simplify(), (t14 / (s1 * s4)).simplify()]
    for i in range(3):
        if pullback(u, OMEGA_STD[i]) * kappa[i] != comp.rhos[i]:
            return
    comp.coframe = u
    comp.kappa = kappa


# ------------------------------------------------------------------- assembly

_NU_STD = [(5, 6), (6, 7), (5, 7)]


def _nu_coframe(nus_local: Sequence[KForm]):
    """Coframe (f^5, f^6, f^7) on R^3 with f^56, f^67, f^57 = nus, or None."""
    # identify 2-forms on R^3 with vectors: e^23 -> x1, e^31 -> x2, e^12 -> x3
    def vec(w):
        return [w.coefficient(2, 3), w.coefficient(3, 1), w.coefficient(1, 2)]
    # rows: f^67 ~ f^2 x f^3, f^75 ~ f^3 x f^1, f^56 ~ f^1 x f^2
    c = [vec(nus_local[1]), vec(-nus_local[2]), vec(nus_local[0])]
    dc = linalg.det(c)
    if isinstance(dc, Surd):
        dc = dc.simplify()
    if isinstance(dc, Surd) or dc <= 0:
        return None
    root = Surd.sqrt(dc)
    cit = linalg.transpose(linalg.inverse(c))
    return [[root * x for x in row] for row in cit]


@dataclass
class HodgeDual:
    psi: KForm
    omegas: list[KForm]
    nus: list[KForm]
    coframe: list[KForm] | None = None
    notes: list[str] = field(default_factory=list)


def assemble_hodge_dual(omegas: Sequence[KForm], nus: Sequence[KForm], v4: Sequence[int], v3: Sequence[int],
                        want_coframe: bool = True) -> HodgeDual:
    """1/2 omega_1^2 + sum omega_i ^ nu_i with the missing omegas completed.

    The forms live on R^7 = span(v4) + span(v3).  If fewer than three omegas
    are given, the last completion is oriented so that the result is a Hodge
    dual (not minus one); with three given omegas a wrongly oriented nu basis
    raises AssemblyError.
    """
    dim = omegas[0].dim
    k = len(omegas)
    if len(nus) != 3:
        raise ValueError("three nu forms are required")
    loc = [localize(w, v4) for w in omegas]
    comp = complete_to_selfdual_triple(loc, want_coframe=want_coframe)
    full = list(loc) + comp.completions

    def build(ws):
        psi = wedge(globalize(ws[0], v4, dim), globalize(ws[0], v4, dim)) * Fraction(1, 2)
        for w, nu in zip(ws, nus):
            psi = psi + wedge(globalize(w, v4, dim), nu)
        return psi

    psi = build(full)
    kind = classify_four_form(psi)
    flipped = False
    if not kind.is_hodge_dual:
        if k == 3:
            raise AssemblyError(f"the given forms assemble to a 4-form of type {kind}")
        full[2] = -full[2]
        flipped = True
        psi = build(full)
        kind = classify_four_form(psi)
        if not kind.is_hodge_dual:
            raise AssemblyError(f"assembled 4-form has type {kind} for both orientations")
    out = HodgeDual(psi, [globalize(w, v4, dim) for w in full], list(nus))
    if comp.coframe is not None:
        out.coframe = _full_coframe(comp, flipped, nus, v4, v3, dim, psi)
        if out.coframe is None:
            out.notes.append("no adapted coframe in a quadratic extension; orbit certified by the Hitchin form")
    else:
        out.notes.append("completion needs nested radicals; orbit certified by the Hitchin form")
    return out


def _full_coframe(comp: SelfDualCompletion, flipped: bool, nus, v4, v3, dim, psi) -> list[KForm] | None:
    k = len(comp.change)
    # omega_j = sum_i G_ij rho_i and rho_i = kappa_i u* omega~_i
    g = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    for i in range(k):
        for j in range(k):
            g[i][j] = comp.change[i][j]
    if flipped:
        g[2][2] = Fraction(-1)
    nus_local = [localize(nu, v3) for nu in nus]
    nt = []
    for i in range(3):
        acc = KForm(3, 2)
        for j in range(3):
            if g[i][j]:
                acc = acc + nus_local[j] * (g[i][j] * comp.kappa[i])
        nt.append(acc.simplify())
    m3 = _nu_coframe(nt)
    if m3 is None:
        return None
    rows = [KForm.from_terms(dim, {(v4[a],): x for a, x in enumerate(row) if x}, degree=1) for row in comp.coframe]
    rows += [KForm.from_terms(dim, {(v3[a],): x for a, x in enumerate(row) if x}, degree=1) for row in m3]
    if standard_four_form(rows).simplify() != psi:
        return None
    return rows


# ------------------------------------------------------------------- symplectic subspaces

def _complement(vectors: Sequence[Sequence[Fraction]], n: int) -> list[list[Fraction]]:
    """Unit vectors completing `vectors` to a basis, in order."""
    out: list[list[Fraction]] = []
    basis = [list(v) for v in vectors]
    for j in range(n):
        u = [Fraction(int(i == j)) for i in range(n)]
        if linalg.rank(basis + [u]) == len(basis) + 1:
            basis.append(u)
            out.append(u)
    return out


def kernel_projection_map(u: LieAlgebra):
    """For a 3-dimensional unimodular u: a linear map g from 2-forms to closed
    1-forms with g(w) ^ w >= 0, vanishing exactly on d(u*).

    In a coframe eta with d(eta_b) = t_b * star(eta_b) the map sends
    star(eta_b) to eta_b when t_b = 0 and to 0 otherwise.  Returned as a
    function on KForms on R^3.
    """
    if u.dim != 3 or not is_unimodular(u):
        raise ValueError("a 3-dimensional unimodular algebra is required")
    s = [[wedge(e(3, a + 1), u.d_images[b]).coeffs.get(7, Fraction(0)) for b in range(3)] for a in range(3)]
    p, diag = linalg.congruence_diagonalize(s)
    eta = [KForm.one_form(row) for row in p]
    stars = [wedge(eta[1], eta[2]), wedge(eta[2], eta[0]), wedge(eta[0], eta[1])]
    cols = linalg.transpose([w.to_vector() for w in stars])

    def g(w: KForm) -> KForm:
        a = linalg.solve(cols, w.to_vector())
        out = KForm(3, 1)
        for b in range(3):
            if not diag[b]:
                out = out + eta[b] * a[b]
        return out

    return g


@dataclass
class SymplecticSubspace:
    forms: list[KForm]
    lam: Fraction | None
    doublings: int


def _ideal_for_subspace(g4: LieAlgebra, ideal: Subalgebra | None) -> Subalgebra:
    if ideal is not None:
        return ideal
    if not is_unimodular(g4):
        return unimodular_kernel(g4)
    data = almost_abelian_data(g4)
    if data is None:
        raise ValueError("unimodular and not almost abelian: the construction does not apply")
    return data.ideal


def symplectic_subspace(g4: LieAlgebra, ideal: Subalgebra | None = None, max_doublings: int = 60) -> SymplecticSubspace:
    """A subspace of closed 2-forms on g4, all non-degenerate apart from 0,
    of dimension h2 - h1 - h1(u) + 4.

    `ideal` is a codimension-one unimodular ideal u (abelian when g4 is
    unimodular); by default the unimodular kernel or an abelian ideal.
    """
    if g4.dim != 4:
        raise ValueError("a 4-dimensional algebra is required")
    u = _ideal_for_subspace(g4, ideal)
    if len(u.vectors) != 3:
        raise ValueError("the ideal must have codimension one")
    if is_unimodular(g4) and any(not f.is_zero() for f in u.algebra.d_images):
        raise ValueError("for unimodular g4 the ideal must be abelian")
    if not is_unimodular(u.algebra):
        raise ValueError("the ideal is not unimodular")
    if not is_unimodular(g4) and classify_3d(u.algebra).name == "e(1,1)":
        raise ValueError("unimodular kernel isomorphic to e(1,1): the construction does not apply")
    h = change_coframe(g4, u.coframe)
    gmap = kernel_projection_map(u.algebra)
    units = [e(4, i) for i in (1, 2, 3)]
    # d_u on u*: drop the terms containing eps^4
    du = [_drop4(h.d(x)) for x in units]
    ker_du = linalg.nullspace(linalg.transpose([w.to_vector() for w in du]), n_cols=3)
    v_basis = _complement(ker_du, 3)
    exact_part = [h.d(KForm.one_form(v + [Fraction(0)])) for v in v_basis]
    two = [e(4, 1, 2), e(4, 1, 3), e(4, 2, 3)]
    dtwo = [h.d(w).to_vector() for w in two]
    ker2 = linalg.nullspace(linalg.transpose(dtwo), n_cols=3)
    omegas = [combination(two, c) for c in ker2]
    lifted = []
    for w in omegas:
        g3 = gmap(truncate3(w))
        lifted.append((w, wedge(_embed4(g3), e(4, 4))))
    lam = Fraction(1)
    for step in range(max_doublings + 1):
        for s in (lam, -lam):
            fam = exact_part + [w + t * s for w, t in lifted]
            if not fam or is_definite(gram(fam, (1, 2, 3, 4))):
                forms = [pullback(u.coframe, w) for w in fam]
                return SymplecticSubspace(forms, s if lifted else None, step)
        lam *= 2
    raise ArithmeticError(f"no definite subspace after {max_doublings} doublings")


def _drop4(w: KForm) -> KForm:
    return truncate3(KForm(w.dim, w.degree, {m: c for m, c in w.coeffs.items() if not m & 8}))


def truncate3(w: KForm) -> KForm:
    if any(m & 8 for m in w.coeffs):
        raise ValueError("form involves the fourth covector")
    return KForm(3, w.degree, dict(w.coeffs))


def _embed4(w: KForm) -> KForm:
    return KForm(4, w.degree, dict(w.coeffs))


def subspace_dimension_formula(g4: LieAlgebra, ideal: Subalgebra | None = None) -> int:
    from .lie import cohomology
    u = _ideal_for_subspace(g4, ideal)
    b = cohomology(g4)
    return b[1] - b[0] - cohomology(u.algebra)[0] + 4


# ------------------------------------------------------------------- five-dimensional pairs

def derivation_action(hm: Sequence[Sequence[Fraction]], w: KForm) -> KForm:
    """Natural action of H (column i = H(e^i)) on a form on R^n."""
    n = len(hm)
    images = [KForm.one_form([hm[k][i] for k in range(n)]) for i in range(n)]
    out = KForm(n, w.degree)
    for idx, c in w.terms():
        for pos, i in enumerate(idx):
            factors = [e(n, j) for j in idx]
            factors[pos] = images[i - 1]
            out = out + wedge(*factors) * c
    return out


@dataclass
class LengthTwoPair:
    """omega_1, omega_2 on the abelian ideal (in ambient coordinates) with
    d(omega_1) = omega_2 ^ eps^5 and a definite Gram matrix."""
    omega1: KForm
    omega2: KForm
    case: str
    ideal_coframe: list[list[Fraction]]
    local: tuple[KForm, KForm]


class NotFound(LookupError):
    pass


def exceptional_shape(hm: Sequence[Sequence[Fraction]]) -> str | None:
    """Name of the adjoint shapes admitting no pair, else None."""
    n = len(hm)
    r = linalg.rank(hm)
    if r == 0:
        return "zero"
    if r == 1 and not any(any(x) for x in linalg.matmul(hm, hm)):
        return "nilpotent-rank-one"
    # eigenvalue mu of multiplicity three with a one-dimensional complement
    import sympy
    x = sympy.Symbol("x")
    cp = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in row] for row in hm]).charpoly(x).as_expr()
    for root, mult in sympy.roots(sympy.Poly(cp, x)).items():
        if mult == 3 and root != 0 and root.is_rational:
            mu = Fraction(int(root.p), int(root.q))
            shifted = [[hm[i][j] - (mu if i == j else 0) for j in range(n)] for i in range(n)]
            if linalg.rank(shifted) == 1:
                return "triple-eigenvalue"
    return None


def _quadratic_splittings(hm):
    """Pairs of complementary H-invariant planes from rational factorizations."""
    import sympy
    x = sympy.Symbol("x")
    m = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in row] for row in hm])
    cp = sympy.Poly(m.charpoly(x).as_expr(), x)
    factors = []
    for f, k in sympy.factor_list(cp)[1]:
        factors += [f] * k
    seen = set()
    from itertools import combinations as comb_
    for size in range(1, len(factors)):
        for pick in comb_(range(len(factors)), size):
            q1 = sympy.Poly(1, x)
            for i in pick:
                q1 = q1 * factors[i]
            if q1.degree() != 2:
                continue
            q2 = sympy.div(cp, q1)[0]
            if sympy.gcd(q1, q2).degree() != 0:
                continue
            key = tuple(q1.all_coeffs())
            if key in seen:
                continue
            seen.add(key)
            yield _poly_kernel(m, q1), _poly_kernel(m, q2)


def _poly_kernel(m, q):
    import sympy
    acc = sympy.zeros(*m.shape)
    power = sympy.eye(m.shape[0])
    for c in reversed(q.all_coeffs()):
        acc += c * power
        power = power * m
    # H acts on columns; the invariant subspace is the kernel of q(H)
    return [[Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1])) for v in vec] for vec in acc.nullspace()]


def _apply_h(hm, v):
    return [sum((hm[k][i] * v[i] for i in range(len(v))), Fraction(0)) for k in range(len(v))]


def _pair_ok(hm, w1: KForm) -> KForm | None:
    # d(w) = -(H.w) ^ eps^5 for w in Lambda^2 a*
    w2 = -derivation_action(hm, w1)
    if w2.is_zero() or linalg.rank([w1.to_vector(), w2.to_vector()]) < 2:
        return None
    return w2 if is_definite(gram([w1, w2], (1, 2, 3, 4))) else None


def _split_pair(hm, max_doublings: int = 60):
    for v2, w2 in _quadratic_splittings(hm):
        v = next((b for b in v2 if linalg.rank([b, _apply_h(hm, b)]) == 2), None)
        w = next((b for b in w2 if linalg.rank([b, _apply_h(hm, b)]) == 2), None)
        if v is None or w is None:
            continue  # a restriction is scalar
        lam = Fraction(1)
        for step in range(max_doublings + 1):
            for s in (lam, -lam):
                basis = [v, [x / s for x in _apply_h(hm, v)], [-x / s for x in _apply_h(hm, w)], w]
                # basis vectors are coordinates of new covectors f^i in eps; omega_1 = f^14 + f^23
                f = [KForm.one_form(b) for b in basis]
                w1 = wedge(f[0], f[3]) + wedge(f[1], f[2])
                w2f = _pair_ok(hm, w1)
                if w2f is not None:
                    return w1, w2f, f"splitting(lambda={s})"
            lam *= 2
    return None


_NORMAL_FORM_PAIRS = [
    ("rotation-pair", [((1, 2), 1), ((3, 4), -1)]),
    ("rotation-scalar", [((1, 3), 1), ((2, 4), -1)]),
    ("jordan-two", [((1, 3), 1), ((2, 4), -1), ((1, 2), Fraction(-1, 2)), ((3, 4), Fraction(1, 2))]),
    ("block-J3", [((1, 2), 1), ((3, 4), 1), ((2, 3), -5)]),
]


def length_two_pair_5d(g5: LieAlgebra, search_radius: int = 2) -> LengthTwoPair:
    """Two 2-forms on the abelian ideal of a unimodular almost abelian g5
    with d(omega_1) = omega_2 ^ eps^5 spanning a space of length-two forms."""
    if g5.dim != 5:
        raise ValueError("a 5-dimensional algebra is required")
    data = almost_abelian_data(g5)
    if data is None:
        raise ValueError("the algebra is not almost abelian")
    if not is_unimodular(g5):
        raise ValueError("the algebra is not unimodular")
    hm = data.h
    shape = exceptional_shape(hm)
    if shape is not None:
        raise NotFound(f"adjoint action of shape {shape}: some combination always has length one")
    found = _split_pair(hm)
    if found is None:
        for name, terms in _NORMAL_FORM_PAIRS:
            w2 = _pair_ok(hm, KForm.from_terms(4, terms, degree=2))
            if w2 is not None:
                found = (KForm.from_terms(4, terms, degree=2), w2, name)
                break
    if found is None:
        basis = [KForm.from_vector(4, 2, r) for r in linalg.identity(6)]
        for w1 in _candidates(basis, search_radius):
            w2 = _pair_ok(hm, w1)
            if w2 is not None:
                found = (w1, w2, "search")
                break
    if found is None:
        raise NotFound("no pair found; the adjoint shape should have been exceptional")
    w1, w2, case = found
    cof = data.coframe

    def amb(w):
        return pullback(cof, KForm(5, 2, dict(w.coeffs)))

    return LengthTwoPair(amb(w1), amb(w2), case, cof, (w1, w2))
