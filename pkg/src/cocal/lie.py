"""Lie algebras in the dual encoding: one exact 2-form d(e^i) per basis covector.

With d(alpha)(X, Y) = -alpha([X, Y]) the structure constants are
[e_i, e_j] = sum_k c^k_ij e_k  where  d(e^k) = -sum_{i<j} c^k_ij e^{ij}.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from . import linalg
from .forms import KForm, basis_masks, e, indices_of, pullback, wedge


class LieAlgebra:
    def __init__(self, d: Sequence[KForm], name: str | None = None):
        if not d:
            raise ValueError("a Lie algebra needs at least one basis element")
        dim = len(d)
        for i, form in enumerate(d):
            if form.dim != dim or form.degree != 2:
                raise ValueError(f"d(e^{i + 1}) must be a 2-form on R^{dim}")
        self.dim = dim
        self.d_images = tuple(d)
        self.name = name
        self._dcache: dict[int, KForm] = {}

    @classmethod
    def from_terms(cls, dim: int, images: Sequence[Mapping], name: str | None = None) -> "LieAlgebra":
        """Build from one {(i, j): coeff} dictionary per basis covector."""
        if len(images) != dim:
            raise ValueError("one image per basis covector is required")
        return cls([KForm.from_terms(dim, img, degree=2) for img in images], name)

    @classmethod
    def abelian(cls, dim: int) -> "LieAlgebra":
        return cls([KForm(dim, 2) for _ in range(dim)], f"R^{dim}" if dim > 1 else "R")

    def __repr__(self) -> str:
        body = ", ".join(str(x) for x in self.d_images)
        return f"LieAlgebra({self.name or '?'}: d = ({body}))"

    # structure constants

    def structure_constants(self) -> list[list[list[Fraction]]]:
        """c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k (0-based)."""
        n = self.dim
        c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for k, form in enumerate(self.d_images):
            for (i, j), v in form.terms():
                c[i - 1][j - 1][k] = -v
                c[j - 1][i - 1][k] = v
        return c

    def bracket(self, x: Sequence, y: Sequence) -> list:
        """Bracket of two vectors given by coefficients."""
        out = [Fraction(0)] * self.dim
        for k, form in enumerate(self.d_images):
            # -d(e^k)(x, y)
            s = Fraction(0)
            for (i, j), v in form.terms():
                s += v * (x[i - 1] * y[j - 1] - x[j - 1] * y[i - 1])
            out[k] = -s
        return out

    def ad_matrix(self, x: Sequence) -> linalg.Matrix:
        """Matrix of ad_x; column j is [x, e_j]."""
        cols = [self.bracket(x, _unit(self.dim, j)) for j in range(self.dim)]
        return linalg.transpose(cols)

    # differential

    def d_monomial(self, mask: int) -> KForm:
        hit = self._dcache.get(mask)
        if hit is not None:
            return hit
        idx = indices_of(mask)
        first = idx[0]
        rest = mask & ~(1 << (first - 1))
        if not rest:
            out = self.d_images[first - 1]
        else:
            # d(e^i ^ rest) = d(e^i) ^ rest - e^i ^ d(rest)
            rest_form = KForm(self.dim, len(idx) - 1, {rest: Fraction(1)})
            out = wedge(self.d_images[first - 1], rest_form) - wedge(e(self.dim, first), self.d_monomial(rest))
        self._dcache[mask] = out
        return out

    def d(self, a: KForm) -> KForm:
        return ce_differential(self, a)

    def to_json(self) -> dict:
        return {"dim": self.dim, "name": self.name, "d": [f.to_json() for f in self.d_images]}

    @classmethod
    def from_json(cls, data: Mapping) -> "LieAlgebra":
        try:
            forms = [KForm.from_json(f) for f in data["d"]]
            dim = int(data["dim"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed Lie algebra: {exc}") from exc
        if len(forms) != dim:
            raise ValueError("dimension does not match the number of differentials")
        return cls(forms, data.get("name"))


def _unit(n: int, j: int) -> list[Fraction]:
    v = [Fraction(0)] * n
    v[j] = Fraction(1)
    return v


def ce_differential(g: LieAlgebra, a: KForm) -> KForm:
    if a.dim != g.dim:
        raise ValueError(f"form on R^{a.dim} does not live on a {g.dim}-dimensional algebra")
    out = KForm(g.dim, a.degree + 1)
    if a.degree == 0:
        return out
    for m, c in a.coeffs.items():
        out = out + g.d_monomial(m) * c
    return out


def jacobi_check(g: LieAlgebra) -> bool:
    """d^2 = 0 on generators, which is the Jacobi identity."""
    return all(ce_differential(g, img).is_zero() for img in g.d_images)


def d_matrix(g: LieAlgebra, k: int) -> linalg.Matrix:
    """Rows are the images of the degree-k monomials, in basis_masks order."""
    if k >= g.dim:
        return []
    return [g.d_monomial(m).to_vector() for m in basis_masks(g.dim, k)] if k > 0 else []


def cohomology(g: LieAlgebra) -> list[int]:
    """Betti numbers (h^1, ..., h^n) of the Chevalley-Eilenberg complex."""
    n = g.dim
    ranks = [0] * (n + 1)
    for k in range(1, n):
        ranks[k] = linalg.rank(d_matrix(g, k))
    return [comb(n, k) - ranks[k] - ranks[k - 1] for k in range(1, n + 1)]


def closed_forms(g: LieAlgebra, k: int) -> list[KForm]:
    """Basis of the closed k-forms."""
    if k == 0:
        return [KForm.scalar(g.dim)]
    if k >= g.dim:
        return [KForm.from_vector(g.dim, k, v) for v in linalg.identity(comb(g.dim, k))]
    rows = d_matrix(g, k)
    # x is closed iff sum_m x_m d(e^m) = 0, i.e. x in the left kernel
    kernel = linalg.nullspace(linalg.transpose(rows))
    return [KForm.from_vector(g.dim, k, v) for v in kernel]


def exact_forms(g: LieAlgebra, k: int) -> list[KForm]:
    """Basis of d(Lambda^{k-1})."""
    if k <= 1:
        return []
    rows = d_matrix(g, k - 1)
    r, piv = linalg.rref(rows)
    return [KForm.from_vector(g.dim, k, row) for row in r[: len(piv)]]


def trace_form(g: LieAlgebra) -> KForm:
    """The 1-form X -> tr(ad_X)."""
    c = g.structure_constants()
    return KForm.one_form([sum((c[i][j][j] for j in range(g.dim)), Fraction(0)) for i in range(g.dim)])


def is_unimodular(g: LieAlgebra) -> bool:
    by_trace = trace_form(g).is_zero()
    # equivalently d vanishes on Lambda^{n-1}
    by_top = all(g.d_monomial(m).is_zero() for m in basis_masks(g.dim, g.dim - 1))
    if by_trace != by_top:
        raise AssertionError("unimodularity tests disagree; the structure constants are inconsistent")
    return by_trace


def direct_sum(a: LieAlgebra, b: LieAlgebra, name: str | None = None) -> LieAlgebra:
    n = a.dim + b.dim
    shift = [[Fraction(int(j == i + a.dim)) for j in range(n)] for i in range(b.dim)]
    embed_a = [[Fraction(int(j == i)) for j in range(n)] for i in range(a.dim)]
    forms = [pullback(embed_a, f) for f in a.d_images] + [pullback(shift, f) for f in b.d_images]
    if name is None and a.name and b.name:
        name = f"{a.name}+{b.name}"
    return LieAlgebra(forms, name)


def change_coframe(g: LieAlgebra, p: Sequence[Sequence]) -> LieAlgebra:
    """The same algebra in the coframe eps_i = sum_j p[i][j] e^j."""
    q = linalg.inverse(p)
    images = []
    for row in p:
        old = KForm(g.dim, 2)
        for j, c in enumerate(row):
            if c:
                old = old + g.d_images[j] * c
        # substitute e^j = sum_k q[j][k] eps^k
        images.append(pullback(q, old))
    return LieAlgebra(images, g.name)


def to_coframe(p: Sequence[Sequence], a: KForm) -> KForm:
    """Rewrite a form given in e-coordinates in the coframe eps = p e."""
    return pullback(linalg.inverse(p), a)


def from_coframe(p: Sequence[Sequence], a: KForm) -> KForm:
    """Rewrite a form given in eps-coordinates back in e-coordinates."""
    return pullback(p, a)


def truncate(a: KForm, m: int) -> KForm:
    """Drop monomials involving indices > m and view the rest on R^m."""
    keep = {mask: c for mask, c in a.coeffs.items() if not mask >> m}
    return KForm(m, a.degree, keep)


@dataclass
class Subalgebra:
    """An ideal together with an adapted coframe.

    `coframe` rows express eps^1..eps^n in the ambient e-coordinates; the
    ideal is the common kernel of eps^{m+1}..eps^n and `algebra` is its
    structure in the coframe eps^1..eps^m.
    """
    vectors: list[list[Fraction]]
    coframe: list[list[Fraction]]
    algebra: LieAlgebra

    @property
    def annihilator(self) -> list[KForm]:
        m = len(self.vectors)
        return [KForm.one_form(row) for row in self.coframe[m:]]


def _complete_basis(vectors: Sequence[Sequence[Fraction]], n: int) -> list[list[Fraction]]:
    basis = [list(v) for v in vectors]
    for j in range(n):
        cand = basis + [_unit(n, j)]
        if linalg.rank(cand) == len(cand):
            basis = cand
    return basis


def ideal_in_coframe(g: LieAlgebra, vectors: Sequence[Sequence], name: str | None = None,
                     extra: Sequence[Sequence] | None = None) -> Subalgebra:
    """Adapted data for the ideal spanned by `vectors`.

    `extra` optionally fixes the complement vectors (in order).
    """
    n = g.dim
    vectors = [[Fraction(x) for x in v] for v in vectors]
    m = len(vectors)
    if linalg.rank(vectors) != m:
        raise ValueError("ideal generators are linearly dependent")
    for x in vectors:
        for y in [_unit(n, j) for j in range(n)]:
            br = g.bracket(x, y)
            if linalg.rank(vectors + [br]) != m:
                raise ValueError("the span is not an ideal")
    if extra is not None:
        basis = vectors + [[Fraction(x) for x in v] for v in extra]
        if len(basis) != n or linalg.rank(basis) != n:
            raise ValueError("complement vectors do not complete a basis")
    else:
        basis = _complete_basis(vectors, n)
    # columns of V are the new basis vectors; the dual coframe is V^{-1}
    coframe = linalg.inverse(linalg.transpose(basis))
    h = change_coframe(g, coframe)
    sub = LieAlgebra([truncate(h.d_images[a], m) for a in range(m)], name)
    return Subalgebra(vectors, coframe, sub)


def unimodular_kernel(g: LieAlgebra) -> Subalgebra:
    """The ideal ker(tr ad) of a non-unimodular algebra."""
    t = trace_form(g).to_vector()
    if not any(t):
        raise ValueError("the algebra is unimodular; its unimodular kernel is the whole algebra")
    vecs = linalg.nullspace([t])
    j = next(j for j, x in enumerate(t) if x)
    return ideal_in_coframe(g, vecs, extra=[_unit(g.dim, j)])


def derived_algebra(g: LieAlgebra) -> list[list[Fraction]]:
    """Basis of [g, g]."""
    n = g.dim
    vecs = [g.bracket(_unit(n, i), _unit(n, j)) for i in range(n) for j in range(i + 1, n)]
    r, piv = linalg.rref(vecs) if vecs else ([], [])
    return [row for row in r[: len(piv)]]


def commutator_dim(g: LieAlgebra) -> int:
    return len(derived_algebra(g))


@dataclass
class AlmostAbelianData:
    """g = a semidirect R with a abelian of codimension one.

    In `coframe`, eps^n annihilates a and d(eps^i) = H(eps^i) ^ eps^n for
    i < n, where column i of `h` holds the coefficients of H(eps^i).
    """
    ideal: Subalgebra
    h: list[list[Fraction]]

    @property
    def coframe(self):
        return self.ideal.coframe


def almost_abelian_data(g: LieAlgebra) -> AlmostAbelianData | None:
    """Find a codimension-one abelian ideal, or None.

    A hyperplane ker(alpha) is an ideal iff d(alpha) = 0, and it is abelian
    iff alpha ^ d(beta) = 0 for all beta.  Both conditions are linear in
    alpha, so this is a kernel computation rather than a search.
    """
    n = g.dim
    eqs: list[list[Fraction]] = []
    units = [e(n, i) for i in range(1, n + 1)]
    for img in g.d_images:
        # coefficients of alpha ^ d(e^k) as linear functions of alpha
        cols = [wedge(u, img).to_vector() for u in units]
        eqs.extend(linalg.transpose(cols))
    cols = [img.to_vector() for img in g.d_images]
    eqs.extend(linalg.transpose(cols))
    eqs = [r for r in eqs if any(r)]
    sols = linalg.nullspace(eqs, n_cols=n) if eqs else linalg.identity(n)
    if not sols:
        return None
    alpha = sols[0]
    vecs = linalg.nullspace([alpha])
    j = next(j for j, x in enumerate(alpha) if x)
    ideal = ideal_in_coframe(g, vecs, extra=[_unit(n, j)])
    h_alg = change_coframe(g, ideal.coframe)
    hm = [[Fraction(0)] * (n - 1) for _ in range(n - 1)]
    for i in range(n - 1):
        # d(eps^i) = sum_k H_ki eps^k ^ eps^n
        for (a, b), c in h_alg.d_images[i].terms():
            if b != n:
                raise AssertionError("ideal is not abelian")
            hm[a - 1][i] = c
    return AlmostAbelianData(ideal, hm)


def is_almost_abelian(g: LieAlgebra) -> bool:
    return almost_abelian_data(g) is not None


@dataclass(frozen=True)
class Bianchi3Class:
    """Isomorphism class of a 3-dimensional Lie algebra.

    `params` is empty for rigid classes.  For r_{3,mu} and r'_{3,mu} the
    parameter may be irrational; then `params` is None and `invariant`
    holds det(G)/tr(G)^2 of the action on the unimodular kernel.
    """
    name: str
    params: tuple[Fraction, ...] | None = ()
    invariant: Fraction | None = None


def _rational_sqrt(q: Fraction) -> Fraction | None:
    from math import isqrt
    if q < 0:
        return None
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def kernel_action(g: LieAlgebra) -> tuple[Subalgebra, list[list[Fraction]]]:
    """For non-unimodular g with abelian unimodular kernel u: the matrix G
    with d(eps^a) = G(eps^a) ^ eps^n on u* (column a = coefficients)."""
    sub = unimodular_kernel(g)
    n = g.dim
    h = change_coframe(g, sub.coframe)
    gm = [[Fraction(0)] * (n - 1) for _ in range(n - 1)]
    for a in range(n - 1):
        for (i, j), c in h.d_images[a].terms():
            if j != n:
                raise ValueError("unimodular kernel is not abelian")
            gm[i - 1][a] = c
    return sub, gm


def classify_3d(g: LieAlgebra) -> Bianchi3Class:
    if g.dim != 3:
        raise ValueError("classify_3d expects a 3-dimensional algebra")
    if not jacobi_check(g):
        raise ValueError("structure constants violate the Jacobi identity")
    if is_unimodular(g):
        # S(alpha, beta) = alpha ^ d(beta) / vol is symmetric here
        s = [[wedge(e(3, a + 1), g.d_images[b]).coeffs.get(7, Fraction(0)) for b in range(3)] for a in range(3)]
        pos, neg, _ = linalg.inertia(s)
        rk = pos + neg
        definite = pos == 0 or neg == 0
        if rk == 3:
            return Bianchi3Class("so(3)" if definite else "so(2,1)")
        if rk == 2:
            return Bianchi3Class("e(2)" if definite else "e(1,1)")
        return Bianchi3Class("h3" if rk == 1 else "R^3")
    _, gm = kernel_action(g)
    tr = gm[0][0] + gm[1][1]
    dt = linalg.det(gm)
    if dt == 0:
        return Bianchi3Class("r2+R")
    if gm[0][1] == 0 and gm[1][0] == 0 and gm[0][0] == gm[1][1]:
        return Bianchi3Class("r_{3,mu}", (Fraction(1),))
    disc = tr * tr - 4 * dt
    inv = dt / (tr * tr)
    if disc == 0:
        return Bianchi3Class("r3")
    if disc > 0:
        root = _rational_sqrt(disc)
        if root is None:
            return Bianchi3Class("r_{3,mu}", None, inv)
        lam = sorted([(tr + root) / 2, (tr - root) / 2], key=abs)
        return Bianchi3Class("r_{3,mu}", (lam[0] / lam[1],))
    mu = _rational_sqrt(tr * tr / -disc)
    if mu is None:
        return Bianchi3Class("r'_{3,mu}", None, inv)
    return Bianchi3Class("r'_{3,mu}", (mu,))
