"""Reference computations used to cross-check the package.

Nothing here imports the package's exterior algebra: forms are dicts
{sorted index tuple: sympy number}, signs come from counting inversions,
ranks from sympy, and the Hitchin form from a Levi-Civita contraction.
"""
from __future__ import annotations

from itertools import combinations, permutations

import numpy as np
import sympy as sp


def perm_sign(seq) -> int:
    seq = list(seq)
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


def canon(idx):
    """(sign, sorted tuple), sign 0 for repeated indices."""
    if len(set(idx)) < len(idx):
        return 0, None
    return perm_sign(idx), tuple(sorted(idx))


def add(a, b, s=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + s * v
    return {k: v for k, v in out.items() if sp.expand(v) != 0}


def scale(a, c):
    return {k: c * v for k, v in a.items()}


def wedge(a, b):
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            s, k = canon(i + j)
            if s:
                out[k] = out.get(k, 0) + s * x * y
    return {k: v for k, v in out.items() if sp.expand(v) != 0}


def from_kform(f):
    """Read any object with .terms() -> [(indices, coeff)] (coefficient text via str)."""
    return {tuple(i): sp.sympify(str(c)) for i, c in f.terms()}


def structure(alg):
    """d(e^i) as dicts, from an algebra exposing d_images."""
    return [from_kform(img) for img in alg.d_images]


def d(struct, a):
    """Chevalley-Eilenberg differential: Leibniz rule on monomials."""
    out = {}
    for idx, c in a.items():
        for pos, i in enumerate(idx):
            left = {idx[:pos]: 1}
            right = {idx[pos + 1:]: 1}
            term = wedge(wedge(left, struct[i - 1]), right)
            sgn = -1 if pos % 2 else 1
            for k, v in term.items():
                out[k] = out.get(k, 0) + sgn * c * v
    return {k: v for k, v in out.items() if sp.expand(v) != 0}


def d_matrix(struct, n, k):
    rows = list(combinations(range(1, n + 1), k + 1))
    cols = list(combinations(range(1, n + 1), k))
    m = sp.zeros(len(rows), len(cols))
    where = {r: i for i, r in enumerate(rows)}
    for j, c in enumerate(cols):
        for key, v in d(struct, {c: 1}).items():
            m[where[key], j] = v
    return m


def betti(struct, n):
    """(b_1, ..., b_n)."""
    ranks = [0] + [d_matrix(struct, n, k).rank() for k in range(1, n)] + [0]
    dims = [sp.binomial(n, k) for k in range(n + 1)]
    return [int(dims[k] - ranks[k] - ranks[k - 1]) for k in range(1, n + 1)]


def d_squared_zero(struct, n) -> bool:
    for i in range(1, n + 1):
        if d(struct, d(struct, {(i,): 1})):
            return False
    return True


def brackets(struct, n):
    """c[a][b] = [e_a, e_b] as a coefficient list, from d(e^k)(e_a, e_b) = -e^k([e_a, e_b])."""
    c = [[[0] * n for _ in range(n)] for _ in range(n)]
    for k, img in enumerate(struct):
        for (a, b), v in img.items():
            c[a - 1][b - 1][k] = -v
            c[b - 1][a - 1][k] = v
    return c


def h1_of_span(struct, n, vectors):
    """h^1 of the subalgebra spanned by `vectors`: dim minus dim of its derived algebra."""
    c = brackets(struct, n)

    def br(x, y):
        return [sum(x[a] * y[b] * c[a][b][k] for a in range(n) for b in range(n)) for k in range(n)]

    ders = [br(vectors[i], vectors[j]) for i in range(len(vectors)) for j in range(i + 1, len(vectors))]
    r = sp.Matrix(ders).rank() if ders else 0
    return len(vectors) - r


def trace_kernel(struct, n):
    """Basis of {X : tr ad X = 0}."""
    c = brackets(struct, n)
    tr = [sum(c[a][b][b] for b in range(n)) for a in range(n)]
    if not any(tr):
        return [list(r) for r in sp.eye(n).tolist()]
    return [list(v) for v in sp.Matrix([tr]).nullspace()]


# ------------------------------------------------------------------ G2 side

def full_tensor(a, n=7):
    k = len(next(iter(a)))
    t = np.zeros((n,) * k)
    for idx, v in a.items():
        for p in permutations(range(k)):
            t[tuple(idx[i] - 1 for i in p)] = perm_sign(p) * float(v)
    return t


_EPS = None


def levi_civita():
    global _EPS
    if _EPS is None:
        e = np.zeros((7,) * 7, dtype=np.int8)
        for p in permutations(range(7)):
            e[p] = perm_sign(p)
        _EPS = e
    return _EPS


def hitchin(phi3):
    """B_ij with (e_i _| phi) ^ (e_j _| phi) ^ phi = B_ij e^{1..7}."""
    t = full_tensor(phi3)
    return np.einsum("ibc,jde,fgh,bcdefgh->ij", t, t, t, levi_civita(), optimize=True) / 24.0


def euclidean_star4(psi):
    """The 3-form chi with chi_J = sign(J, J^c) psi_{J^c}."""
    full = set(range(1, 8))
    out = {}
    for idx, v in psi.items():
        j = tuple(sorted(full - set(idx)))
        out[j] = perm_sign(j + idx) * v
    return out


def hodge_dual_margin(psi) -> float:
    """Equilibrated min/max eigenvalue ratio of B(star psi); negative unless
    psi is in the orbit of Hodge duals.  The sign of B is GL-invariant here:
    B is cubic in a 3-vector density of weight one, so the density enters squared."""
    b = hitchin(euclidean_star4(psi))
    dg = np.sqrt(np.abs(np.diag(b)))
    if np.any(dg == 0):
        return -1.0
    w = np.linalg.eigvalsh(b / np.outer(dg, dg))
    return float(w.min() / w.max()) if w.max() > 0 else -1.0


def matrix_rank_of_form(a, n):
    """rank of v -> v _| a, computed with sympy."""
    k = len(next(iter(a)))
    cols = list(combinations(range(1, n + 1), k - 1))
    where = {c: i for i, c in enumerate(cols)}
    m = sp.zeros(n, len(cols))
    for idx, v in a.items():
        for pos, i in enumerate(idx):
            rest = idx[:pos] + idx[pos + 1:]
            m[i - 1, where[rest]] += (-1) ** pos * v
    return m.rank()


def two_form_rank4(w) -> int:
    """Rank of a 2-form on R^4 from its Pfaffian (exact with radicals)."""
    c = lambda i, j: w.get((i, j), 0)
    if not any(sp.expand(v) != 0 for v in w.values()):
        return 0
    pf = sp.expand(c(1, 2) * c(3, 4) - c(1, 3) * c(2, 4) + c(1, 4) * c(2, 3))
    return 4 if pf != 0 else 2


def two_form_matrix(w, n=4):
    m = sp.zeros(n, n)
    for (i, j), v in w.items():
        m[i - 1, j - 1] = v
        m[j - 1, i - 1] = -v
    return m


STANDARD_PHI = {(1, 2, 7): 1, (3, 4, 7): 1, (5, 6, 7): 1, (1, 3, 5): 1,
                (1, 4, 6): -1, (2, 3, 6): -1, (2, 4, 5): -1}
