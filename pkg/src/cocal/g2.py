"""Stable forms in dimension seven.

A 3-form phi on R^7 is of G2 type exactly when its Hitchin bilinear form
    B(v, w) vol = (v _| phi) ^ (w _| phi) ^ phi
is definite.  A 4-form Psi is tested through the 3-vector chi dual to it,
for which the same construction applies on the dual space; the sign of
B_chi then tells Psi apart from -Psi, which lie in different orbits.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np

from . import linalg
from .forms import KForm, contract, mask_of, top_coefficient, wedge, wedge_sign

PHI_TERMS = [((1, 2, 7), 1), ((3, 4, 7), 1), ((5, 6, 7), 1), ((1, 3, 5), 1),
             ((1, 4, 6), -1), ((2, 3, 6), -1), ((2, 4, 5), -1)]
PSI_TERMS = [((1, 2, 3, 4), 1), ((1, 2, 5, 6), 1), ((3, 4, 5, 6), 1), ((2, 4, 6, 7), -1),
             ((2, 3, 5, 7), 1), ((1, 4, 5, 7), 1), ((1, 3, 6, 7), 1)]


class OrbitClass(enum.Enum):
    G2 = "G2"
    G2STAR = "G2*"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class FourFormType:
    """Orbit of a 4-form; sign is +1 when Psi itself (not -Psi) is a Hodge dual."""
    orbit: OrbitClass
    sign: int

    @property
    def is_hodge_dual(self) -> bool:
        return self.orbit is OrbitClass.G2 and self.sign > 0


def _from_coframe(terms, coframe: Sequence[KForm] | None, dim: int = 7) -> KForm:
    if coframe is None:
        return KForm.from_terms(dim, terms)
    if len(coframe) != 7 or any(f.degree != 1 for f in coframe):
        raise ValueError("a coframe is seven 1-forms")
    top = wedge(*coframe) if coframe[0].dim == 7 else None
    if top is not None and top.is_zero():
        raise ValueError("coframe is linearly dependent")
    out = KForm(coframe[0].dim, len(terms[0][0]))
    for idx, c in terms:
        out = out + wedge(*(coframe[i - 1] for i in idx)) * c
    return out


def standard_three_form(coframe: Sequence[KForm] | None = None) -> KForm:
    return _from_coframe(PHI_TERMS, coframe)


def standard_four_form(coframe: Sequence[KForm] | None = None) -> KForm:
    return _from_coframe(PSI_TERMS, coframe)


# ------------------------------------------------------------ Hitchin bilinear

def hitchin_bilinear(phi: KForm, ref_vol: KForm | None = None) -> list[list]:
    """Matrix B_ij with (e_i _| phi) ^ (e_j _| phi) ^ phi = B_ij ref_vol."""
    if phi.dim != 7 or phi.degree != 3:
        raise ValueError("expected a 3-form on R^7")
    scale = Fraction(1) if ref_vol is None else top_coefficient(ref_vol)
    if not scale:
        raise ValueError("reference volume form vanishes")
    contractions = [contract(i, phi) for i in range(1, 8)]
    out = [[Fraction(0)] * 7 for _ in range(7)]
    for i in range(7):
        for j in range(i, 7):
            v = top_coefficient(wedge(contractions[i], contractions[j], phi)) / scale
            out[i][j] = out[j][i] = v
    return out


@lru_cache(maxsize=None)
def _hitchin_table() -> tuple:
    """For each i <= j the signed triples (I, J, K) of 3-subsets entering B_ij."""
    full = (1 << 7) - 1
    table = []
    for i in range(7):
        row = []
        for j in range(i, 7):
            terms = []
            for p in combinations([k for k in range(7) if k != i], 2):
                pm = mask_of(x + 1 for x in p)
                for q in combinations([k for k in range(7) if k != j], 2):
                    qm = mask_of(x + 1 for x in q)
                    if pm & qm:
                        continue
                    km = full & ~(pm | qm)
                    im, jm = pm | (1 << i), qm | (1 << j)
                    # sign of e_i _| e^I: position of i in I
                    si = -1 if bin(im & ((1 << i) - 1)).count("1") & 1 else 1
                    sj = -1 if bin(jm & ((1 << j) - 1)).count("1") & 1 else 1
                    s = si * sj * wedge_sign(pm, qm) * wedge_sign(pm | qm, km)
                    terms.append((im, jm, km, s))
            row.append(tuple(terms))
        table.append(tuple(row))
    return tuple(table)


def hitchin_fast(coeffs: dict[int, object]) -> list[list]:
    """Same as hitchin_bilinear for a coefficient map of a 3-form on R^7."""
    table = _hitchin_table()
    zero = Fraction(0)
    out = [[zero] * 7 for _ in range(7)]
    get = coeffs.get
    for i in range(7):
        for jj, terms in enumerate(table[i]):
            j = i + jj
            acc = zero
            for im, jm, km, s in terms:
                a = get(im)
                if a is None:
                    continue
                b = get(jm)
                if b is None:
                    continue
                c = get(km)
                if c is None:
                    continue
                acc = acc + a * b * c if s > 0 else acc - a * b * c
            out[i][j] = out[j][i] = acc
    return out


def _classify_matrix(b: list[list]) -> tuple[OrbitClass, int]:
    if not linalg.det(b):
        return OrbitClass.DEGENERATE, 0
    s = linalg.definiteness(b)
    if s:
        return OrbitClass.G2, s
    pos, neg, _ = linalg.inertia(b)
    if {pos, neg} != {3, 4}:
        raise AssertionError(f"unexpected signature ({pos}, {neg}) of a nondegenerate Hitchin form")
    return OrbitClass.G2STAR, 1 if pos == 3 else -1


def classify_three_form(phi: KForm) -> OrbitClass:
    if phi.dim != 7 or phi.degree != 3:
        raise ValueError("expected a 3-form on R^7")
    return _classify_matrix(hitchin_fast(phi.coeffs))[0]


def four_form_to_trivector(psi: KForm) -> KForm:
    """Coefficients chi_J with Psi = sum_J chi_J * (e^J _| vol-dual), i.e.
    Psi_{J^c} = sign(J, J^c) chi_J; returned as a formal 3-form."""
    if psi.dim != 7 or psi.degree != 4:
        raise ValueError("expected a 4-form on R^7")
    full = (1 << 7) - 1
    out = {}
    for m, c in psi.coeffs.items():
        j = full & ~m
        out[j] = wedge_sign(j, m) * c
    return KForm(7, 3, out)


def classify_four_form(psi: KForm) -> FourFormType:
    chi = four_form_to_trivector(psi)
    orbit, s = _classify_matrix(hitchin_fast(chi.coeffs))
    return FourFormType(orbit, s)


def hitchin_four_form(psi: KForm) -> list[list]:
    return hitchin_fast(four_form_to_trivector(psi).coeffs)


# ------------------------------------------------------------ numerics

def _to_float(b) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in b], dtype=float)


def metric_numeric(phi: KForm) -> tuple[np.ndarray, float]:
    """Metric and volume coefficient induced by a G2 3-form (floating point).

    With b = B/6, g = b / |det b|^(1/9), oriented so that g is positive
    definite; the adapted coframe of the standard form is orthonormal.
    """
    b = _to_float(hitchin_fast(phi.coeffs)) / 6.0
    det = np.linalg.det(b)
    if abs(det) < 1e-300:
        raise ValueError("degenerate 3-form")
    g = b / abs(det) ** (1.0 / 9.0)
    w = np.linalg.eigvalsh(g)
    if w.min() < 0 < w.max():
        raise ValueError("3-form is not of G2 type")
    orient = 1.0 if w.min() > 0 else -1.0
    g = orient * g
    return g, orient * float(np.sqrt(np.linalg.det(g)))


def definiteness_margin(psi: KForm, equilibrate: bool = True) -> float:
    """Smallest over largest eigenvalue of sign * B_chi, in floating point.

    With `equilibrate`, B_chi is first conjugated by D^(-1/2), D = |diag|,
    which removes the effect of rescaling individual basis vectors.
    """
    b = _to_float(hitchin_four_form(psi))
    if equilibrate:
        dg = np.sqrt(np.abs(np.diag(b)))
        if np.any(dg == 0):
            return 0.0
        b = b / np.outer(dg, dg)
    w = np.linalg.eigvalsh(b)
    if w.max() < 0:
        w = -w[::-1]
    if w.min() <= 0:
        return float(w.min() / abs(w).max())
    return float(w.min() / w.max())
