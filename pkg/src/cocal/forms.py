"""Exterior forms with exact coefficients.

A KForm on R^n stores a sparse map from basis monomials e^{i1...ik}
(i1 < ... < ik, 1-based) to coefficients.  Internally a monomial is a
bitmask; bit i-1 stands for e^i.  Coefficients are Fractions, or Surds
when a quadratic extension is needed.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence, Union

from . import linalg
from .surd import Surd, format_scalar, parse_scalar

Scalar = Union[Fraction, Surd]


def _scalar(x) -> Scalar:
    if isinstance(x, (Fraction, Surd)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"unsupported coefficient {x!r}; use int, Fraction, str or Surd")


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << (i - 1)
    return m


@lru_cache(maxsize=None)
def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@lru_cache(maxsize=None)
def basis_masks(dim: int, degree: int) -> tuple[int, ...]:
    """Monomials of Lambda^degree in lexicographic order of index tuples."""
    return tuple(mask_of(c) for c in combinations(range(1, dim + 1), degree))


@lru_cache(maxsize=1 << 16)
def wedge_sign(a: int, b: int) -> int:
    """Sign of e^A ^ e^B relative to e^{A u B}; 0 if they overlap."""
    if a & b:
        return 0
    inversions = 0
    j = 0
    bb = b
    while bb:
        if bb & 1:
            inversions += bin(a >> (j + 1)).count("1")
        bb >>= 1
        j += 1
    return -1 if inversions & 1 else 1


def sort_sign(indices: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the permutation sorting `indices`; 0 if an index repeats."""
    if len(set(indices)) != len(indices):
        return 0, ()
    idx = list(indices)
    s = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                s = -s
    return s, tuple(idx)


class KForm:
    __slots__ = ("dim", "degree", "coeffs")

    def __init__(self, dim: int, degree: int, coeffs: Mapping[int, Scalar] | None = None):
        if degree < 0:
            raise ValueError("negative degree")
        # degree > dim is allowed and always zero
        self.dim = dim
        self.degree = degree
        clean = {}
        for m, c in (coeffs or {}).items():
            if bin(m).count("1") != degree or m >> dim:
                raise ValueError(f"monomial {indices_of(m)} does not fit Lambda^{degree} R^{dim}")
            if c:
                clean[m] = c if isinstance(c, (Fraction, Surd)) else _scalar(c)
        self.coeffs = clean

    # constructors

    @classmethod
    def from_terms(cls, dim: int, terms, degree: int | None = None) -> "KForm":
        """Build from {(i, j, ...): coeff} or an iterable of (indices, coeff).

        Index tuples may be unsorted; they are sorted with the matching sign.
        """
        items = terms.items() if isinstance(terms, Mapping) else terms
        coeffs: dict[int, Scalar] = {}
        for idx, c in items:
            idx = tuple(idx)
            if degree is None:
                degree = len(idx)
            elif len(idx) != degree:
                raise ValueError("mixed degrees in one form")
            if any(not 1 <= i <= dim for i in idx):
                raise ValueError(f"index out of range in {idx}")
            s, srt = sort_sign(idx)
            if s == 0:
                continue
            m = mask_of(srt)
            coeffs[m] = coeffs.get(m, Fraction(0)) + s * _scalar(c)
        return cls(dim, degree if degree is not None else 0, coeffs)

    @classmethod
    def basis(cls, dim: int, *indices: int) -> "KForm":
        return cls.from_terms(dim, {tuple(indices): 1}, degree=len(indices))

    @classmethod
    def zero(cls, dim: int, degree: int) -> "KForm":
        return cls(dim, degree)

    @classmethod
    def scalar(cls, dim: int, c=1) -> "KForm":
        return cls(dim, 0, {0: _scalar(c)})

    @classmethod
    def one_form(cls, coeffs: Sequence) -> "KForm":
        return cls(len(coeffs), 1, {1 << i: _scalar(c) for i, c in enumerate(coeffs)})

    @classmethod
    def from_vector(cls, dim: int, degree: int, vec: Sequence) -> "KForm":
        return cls(dim, degree, {m: c for m, c in zip(basis_masks(dim, degree), vec)})

    # access

    def terms(self) -> list[tuple[tuple[int, ...], Scalar]]:
        return [(indices_of(m), self.coeffs[m]) for m in sorted(self.coeffs, key=indices_of)]

    def coefficient(self, *indices: int) -> Scalar:
        s, srt = sort_sign(indices)
        if s == 0:
            return Fraction(0)
        return s * self.coeffs.get(mask_of(srt), Fraction(0))

    def to_vector(self) -> list[Scalar]:
        return [self.coeffs.get(m, Fraction(0)) for m in basis_masks(self.dim, self.degree)]

    def support(self) -> set[int]:
        out: set[int] = set()
        for m in self.coeffs:
            out.update(indices_of(m))
        return out

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_rational(self) -> bool:
        return all(not isinstance(c, Surd) or c.is_rational() for c in self.coeffs.values())

    def simplify(self) -> "KForm":
        """Collapse rational Surd coefficients to Fractions."""
        return KForm(self.dim, self.degree,
                     {m: c.simplify() if isinstance(c, Surd) else c for m, c in self.coeffs.items()})

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # arithmetic

    def _check(self, other: "KForm") -> None:
        if not isinstance(other, KForm):
            raise TypeError("expected a KForm")
        if other.dim != self.dim or other.degree != self.degree:
            raise ValueError(
                f"cannot add a {other.degree}-form on R^{other.dim} to a {self.degree}-form on R^{self.dim}")

    def __add__(self, other: "KForm") -> "KForm":
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return KForm(self.dim, self.degree, out)

    __radd__ = __add__

    def __neg__(self) -> "KForm":
        return KForm(self.dim, self.degree, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other: "KForm") -> "KForm":
        return self + (-other)

    def __mul__(self, c) -> "KForm":
        if isinstance(c, KForm):
            return NotImplemented
        c = _scalar(c)
        return KForm(self.dim, self.degree, {m: c * v for m, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, c) -> "KForm":
        return self * (1 / _scalar(c))

    def __xor__(self, other: "KForm") -> "KForm":
        return wedge(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, KForm):
            return NotImplemented
        return (self.dim, self.degree) == (other.dim, other.degree) and (self - other).is_zero()

    def __hash__(self) -> int:
        return hash((self.dim, self.degree, frozenset(self.coeffs.items())))

    def __repr__(self) -> str:
        return f"KForm({self.dim}, {self.degree}, {self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for idx, c in self.terms():
            label = "e" + "".join(str(i) if self.dim < 10 else f"_{i}" for i in idx) if idx else ""
            cs = format_scalar(c)
            if not label:
                parts.append(cs)
            elif cs == "1":
                parts.append(label)
            elif cs == "-1":
                parts.append("-" + label)
            elif "sqrt" in cs:
                parts.append(f"({cs}){label}")
            else:
                parts.append(f"{cs}{label}")
        return " + ".join(parts).replace("+ -", "- ")

    # serialization

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "degree": self.degree,
            "terms": [{"indices": list(idx), "coeff": format_scalar(c)} for idx, c in self.terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "KForm":
        try:
            dim, degree = int(data["dim"]), int(data["degree"])
            terms = [(tuple(t["indices"]), parse_scalar(str(t["coeff"]))) for t in data["terms"]]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed form: {exc}") from exc
        return cls.from_terms(dim, terms, degree=degree)


def e(dim: int, *indices: int) -> KForm:
    """Shorthand for the basis monomial e^{indices} on R^dim."""
    return KForm.basis(dim, *indices)


def wedge(*forms: KForm) -> KForm:
    if not forms:
        raise ValueError("wedge of nothing")
    out = forms[0]
    for b in forms[1:]:
        out = _wedge2(out, b)
    return out


def _wedge2(a: KForm, b: KForm) -> KForm:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    deg = a.degree + b.degree
    if deg > a.dim:
        return KForm(a.dim, deg)
    out: dict[int, Scalar] = {}
    for ma, ca in a.coeffs.items():
        for mb, cb in b.coeffs.items():
            s = wedge_sign(ma, mb)
            if s:
                m = ma | mb
                out[m] = out.get(m, 0) + (ca * cb if s > 0 else -(ca * cb))
    return KForm(a.dim, deg, out)


def contract(v, a: KForm) -> KForm:
    """Interior product v _| a.  `v` is a coefficient sequence or a 1-based basis index."""
    if a.degree == 0:
        raise ValueError("cannot contract a 0-form")
    if isinstance(v, int):
        vec = {v - 1: Fraction(1)}
    else:
        if len(v) != a.dim:
            raise ValueError("vector length does not match the form dimension")
        vec = {i: _scalar(x) for i, x in enumerate(v) if x}
    out: dict[int, Scalar] = {}
    for m, c in a.coeffs.items():
        pos = 0
        for bit in range(a.dim):
            if m >> bit & 1:
                if bit in vec:
                    s = -1 if pos & 1 else 1
                    key = m & ~(1 << bit)
                    out[key] = out.get(key, 0) + s * vec[bit] * c
                pos += 1
    return KForm(a.dim, a.degree - 1, out)


def linear_map(matrix: Sequence[Sequence]) -> list[KForm]:
    """Row i of `matrix` is the image of e^{i+1} in target coordinates."""
    return [KForm.one_form(row) for row in matrix]


def pullback(m, a: KForm) -> KForm:
    """Substitute e^i -> m[i] in `a`.

    `m` is either a matrix whose row i expresses the image of e^{i+1}, or a
    list of 1-forms.  The result lives on the target space.
    """
    images = m if m and isinstance(m[0], KForm) else linear_map(m)
    if len(images) != a.dim:
        raise ValueError(f"map has {len(images)} rows but the form lives on R^{a.dim}")
    target = images[0].dim
    if a.degree == 0:
        return KForm(target, 0, dict(a.coeffs))
    out = KForm(target, a.degree)
    cache: dict[int, KForm] = {}
    for mask, c in a.coeffs.items():
        idx = indices_of(mask)
        # reuse the product of all but the last factor
        head = mask & ~(1 << (idx[-1] - 1))
        if head in cache:
            prod = cache[head]
        else:
            prod = wedge(*(images[i - 1] for i in idx[:-1])) if len(idx) > 1 else None
            cache[head] = prod
        full = images[idx[-1] - 1] if prod is None else _wedge2(prod, images[idx[-1] - 1])
        out = out + full * c
    return out


def compose(m1: Sequence[Sequence], m2: Sequence[Sequence]) -> linalg.Matrix:
    """Matrix of the substitution 'first m1, then m2'.

    pullback(compose(m1, m2), a) == pullback(m2, pullback(m1, a)).
    """
    return linalg.matmul(m1, m2)


def rank_of_form(a: KForm) -> int:
    """Dimension of {v _| a : v in R^n}, the smallest space the form lives on."""
    if a.degree == 0:
        raise ValueError("rank is undefined for 0-forms")
    if a.degree == 1:
        return 0 if a.is_zero() else 1
    rows = [contract(i, a).to_vector() for i in range(1, a.dim + 1)]
    return linalg.rank(rows)


def is_decomposable(a: KForm) -> bool:
    if a.is_zero():
        raise ValueError("decomposability of the zero form is not defined")
    return rank_of_form(a) == a.degree


def two_form_length(w: KForm) -> int:
    """Largest l with w^l != 0."""
    if w.degree != 2:
        raise ValueError("length is defined for 2-forms")
    length, power = 0, None
    while True:
        power = w if power is None else _wedge2(power, w)
        if power.is_zero():
            return length
        length += 1


def graded_project(a: KForm, blocks: Sequence[Iterable[int]], signature: Sequence[int]) -> KForm:
    """Keep the monomials with exactly signature[b] indices in blocks[b]."""
    if len(blocks) != len(signature):
        raise ValueError("one count per block is required")
    if sum(signature) != a.degree:
        raise ValueError("signature does not add up to the degree")
    bmasks = [mask_of(b) for b in blocks]
    covered = 0
    for bm in bmasks:
        if covered & bm:
            raise ValueError("blocks overlap")
        covered |= bm
    if covered != (1 << a.dim) - 1:
        raise ValueError("blocks do not cover all indices")
    keep = {m: c for m, c in a.coeffs.items()
            if all(bin(m & bm).count("1") == s for bm, s in zip(bmasks, signature))}
    return KForm(a.dim, a.degree, keep)


def top_coefficient(a: KForm) -> Scalar:
    if a.degree != a.dim:
        raise ValueError("not a top-degree form")
    return a.coeffs.get((1 << a.dim) - 1, Fraction(0))


def restrict(a: KForm, basis: Sequence[Sequence]) -> KForm:
    """Pull `a` back to the span of the given vectors (coefficients in R^n)."""
    # e^i restricted to the span has coordinate basis[k][i] on the k-th vector
    images = [[vec[i] for vec in basis] for i in range(a.dim)]
    return pullback(images, a)
