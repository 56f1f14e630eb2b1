"""Adapted coframes for algebras with a codimension-one unimodular ideal.

Conventions: a coframe is a matrix whose row i expresses eps^i in the
original e-coordinates.  Linear maps on a space of 1-forms are stored by
columns: column a holds the coefficients of F(eps^a).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .lie import LieAlgebra, change_coframe, derived_algebra, kernel_action, unimodular_kernel


def _unit(n, j):
    return [Fraction(int(i == j)) for i in range(n)]


@dataclass
class HeisenbergKernelFrame:
    """Coframe eps^1..eps^4 of a 4-dimensional algebra with an ideal h3 and
    d(eps^1) = tr(F) eps^14 + c eps^23, d(eps^a) = F(eps^a) ^ eps^4 (a = 2, 3),
    d(eps^4) = 0.  `f` is the 2x2 matrix of F on span(eps^2, eps^3)."""
    coframe: list[list[Fraction]]
    f: list[list[Fraction]]
    c: Fraction
    algebra: LieAlgebra

    @property
    def trace(self) -> Fraction:
        return self.f[0][0] + self.f[1][1]


def heisenberg_kernel_frame(g4: LieAlgebra, ideal_vectors=None) -> HeisenbergKernelFrame:
    """Normal form for g4 = h3 semidirect R.

    The centre z of the ideal and a complement P are chosen first; the
    transversal vector is then shifted inside P until ad of it preserves P
    modulo nothing, which makes the dual coframe adapted.
    """
    if g4.dim != 4:
        raise ValueError("a 4-dimensional algebra is required")
    if ideal_vectors is None:
        ideal_vectors = unimodular_kernel(g4).vectors
    u = [list(v) for v in ideal_vectors]
    brs = [g4.bracket(u[i], u[j]) for i in range(3) for j in range(i + 1, 3)]
    r, piv = linalg.rref(brs)
    if len(piv) != 1:
        raise ValueError("the ideal is not a Heisenberg algebra")
    z = r[0]
    p = []
    for v in u:
        if linalg.rank([z] + p + [v]) == len(p) + 2:
            p.append(v)
        if len(p) == 2:
            break
    t = next(_unit(4, j) for j in range(4) if linalg.rank(u + [_unit(4, j)]) == 4)
    # z-components of [t, p_i] and [x, p_i] for x in P, in the basis (z, p1, p2)
    basis_cols = linalg.transpose([z, p[0], p[1]])

    def coords(v):
        sol = linalg.solve(basis_cols, v)
        if sol is None:
            raise AssertionError("bracket left the ideal")
        return sol

    target = [coords(g4.bracket(t, pi))[0] for pi in p]
    # [x, p_i] for x = a p1 + b p2: z-component is linear in (a, b)
    m = [[coords(g4.bracket(p[a], p[i]))[0] for a in range(2)] for i in range(2)]
    ab = linalg.solve(m, target)
    t = [t[k] - ab[0] * p[0][k] - ab[1] * p[1][k] for k in range(4)]
    vecs = [z, p[0], p[1], t]
    coframe = linalg.inverse(linalg.transpose(vecs))
    h = change_coframe(g4, coframe)
    d1, d2, d3, d4 = h.d_images
    if not d4.is_zero():
        raise AssertionError("transversal covector is not closed")
    f = [[Fraction(0)] * 2 for _ in range(2)]
    for a, img in ((0, d2), (1, d3)):
        for (i, j), cf in img.terms():
            if j != 4 or i not in (2, 3):
                raise AssertionError(f"unexpected term e{i}{j} in the differential of a plane covector")
            f[i - 2][a] = cf
    tr = f[0][0] + f[1][1]
    c = d1.coefficient(2, 3)
    if d1 != (_e(4, 1, 4) * tr + _e(4, 2, 3) * c) or not c:
        raise AssertionError(f"normal form failed: d(eps^1) = {d1}")
    return HeisenbergKernelFrame(coframe, f, c, h)


def _e(n, *idx):
    from .forms import e
    return e(n, *idx)


@dataclass
class KernelFrame3:
    """Coframe of a non-unimodular 3-dimensional algebra with
    d(eps^a) = G(eps^a) ^ eps^3 (a = 1, 2) and d(eps^3) = 0."""
    coframe: list[list[Fraction]]
    g: list[list[Fraction]]
    algebra: LieAlgebra

    @property
    def trace(self) -> Fraction:
        return self.g[0][0] + self.g[1][1]

    @property
    def det(self) -> Fraction:
        return self.g[0][0] * self.g[1][1] - self.g[0][1] * self.g[1][0]


def kernel_frame_3d(g3: LieAlgebra) -> KernelFrame3:
    sub, gm = kernel_action(g3)
    return KernelFrame3(sub.coframe, gm, change_coframe(g3, sub.coframe))


def derived_is_heisenberg(g4: LieAlgebra) -> bool:
    der = derived_algebra(g4)
    if len(der) != 3:
        return False
    brs = [g4.bracket(der[i], der[j]) for i in range(3) for j in range(i + 1, 3)]
    return linalg.rank(brs) == 1
