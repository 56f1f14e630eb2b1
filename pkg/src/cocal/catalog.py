"""Low-dimensional Lie algebras by name.

Families live in data/catalog.json in the dual encoding; structure
constants may be arithmetic expressions in the family parameters.  Names
follow FAMILY[^params], e.g. "A_{4,9}^{-1/2}", "r_{3,1/2}", "r'_{3,2}", and
"+" (or "⊕") separates direct summands.
"""
from __future__ import annotations

import ast
import json
import operator
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Sequence

from .forms import KForm
from .lie import LieAlgebra, direct_sum
from .surd import parse_scalar


class CatalogError(ValueError):
    pass


# ---------------------------------------------------------------- expressions

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}
_CMPOPS = {ast.Lt: operator.lt, ast.LtE: operator.le, ast.Gt: operator.gt, ast.GtE: operator.ge,
           ast.Eq: operator.eq, ast.NotEq: operator.ne}


def evaluate(expr: str, env: dict[str, Fraction]):
    """Evaluate arithmetic/comparison expressions over Fractions, nothing else."""
    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise CatalogError(f"unknown parameter {node.id!r}")
            return env[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd, ast.Not)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else (v if isinstance(node.op, ast.UAdd) else not v)
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.BoolOp):
            vals = [ev(v) for v in node.values]
            return all(vals) if isinstance(node.op, ast.And) else any(vals)
        if isinstance(node, ast.Compare):
            left = ev(node.left)
            for op, comp in zip(node.ops, node.comparators):
                right = ev(comp)
                if not _CMPOPS[type(op)](left, right):
                    return False
                left = right
            return True
        raise CatalogError(f"unsupported expression element in {expr!r}")
    return ev(ast.parse(expr, mode="eval"))


# ------------------------------------------------------------------- families

@dataclass(frozen=True)
class Family:
    name: str
    dim: int
    params: tuple[str, ...]
    domain: str | None
    d: tuple
    components: tuple[str, ...]
    aliases: tuple[str, ...]

    def in_domain(self, values: Sequence[Fraction]) -> bool:
        if len(values) != len(self.params):
            return False
        if self.domain is None:
            return True
        return bool(evaluate(self.domain, dict(zip(self.params, values))))

    def instantiate(self, values: Sequence[Fraction]) -> LieAlgebra:
        env = dict(zip(self.params, values))
        images = []
        for img in self.d:
            terms = {}
            for idx, expr in img:
                i, j = (int(x) for x in idx.split(","))
                terms[(i, j)] = evaluate(expr, env)
            images.append(KForm.from_terms(self.dim, terms, degree=2))
        return LieAlgebra(images, format_name(self, values))


@lru_cache(maxsize=None)
def _load() -> dict[str, Family]:
    raw = json.loads(resources.files("cocal").joinpath("data/catalog.json").read_text())
    fams = {}
    for f in raw["families"]:
        fam = Family(f["name"], f["dim"], tuple(f.get("params", ())), f.get("domain"),
                     tuple(tuple(tuple(t) for t in img) for img in f["d"]),
                     tuple(f.get("components", ())), tuple(f.get("aliases", ())))
        fams[fam.name] = fam
    return fams


@lru_cache(maxsize=None)
def fixtures() -> dict:
    return json.loads(resources.files("cocal").joinpath("data/fixtures.json").read_text())


def families(dim: int | None = None) -> list[Family]:
    return [f for f in _load().values() if dim is None or f.dim == dim]


def family(name: str) -> Family:
    fam = _lookup().get(_key(name))
    if fam is None:
        raise CatalogError(f"unknown family {name!r}")
    return fam


def _key(name: str) -> str:
    return re.sub(r"[\s_{}(),^]", "", name)


@lru_cache(maxsize=None)
def _lookup() -> dict[str, Family]:
    out = {}
    for fam in _load().values():
        for alias in (fam.name,) + fam.aliases:
            out[_key(alias)] = fam
    return out


def _fmt(q: Fraction) -> str:
    return str(q)


def format_name(fam: Family, values: Sequence[Fraction]) -> str:
    if not fam.params:
        return fam.name
    vals = ",".join(_fmt(v) for v in values)
    if fam.name.startswith("r_{3,mu}") or fam.name.startswith("r'_{3,mu}"):
        return fam.name.replace("mu", vals, 1)
    return f"{fam.name}^{{{vals}}}"


@dataclass(frozen=True)
class AlgebraId:
    """A catalog family with concrete parameter values."""
    family: str
    params: tuple[Fraction, ...] = ()

    @property
    def fam(self) -> Family:
        return _load()[self.family]

    @property
    def dim(self) -> int:
        return self.fam.dim

    @property
    def name(self) -> str:
        return format_name(self.fam, self.params)

    def algebra(self) -> LieAlgebra:
        return instantiate(self)

    def __str__(self) -> str:
        return self.name


def make(family_name: str, *params) -> AlgebraId:
    fam = family(family_name)
    values = tuple(Fraction(p) if not isinstance(p, str) else Fraction(p) for p in params)
    if len(values) != len(fam.params):
        raise CatalogError(f"{fam.name} takes {len(fam.params)} parameter(s), got {len(values)}")
    if not fam.in_domain(values):
        raise CatalogError(f"parameters {tuple(str(v) for v in values)} outside the range of {fam.name}: {fam.domain}")
    return AlgebraId(fam.name, values)


@lru_cache(maxsize=None)
def instantiate(aid: AlgebraId) -> LieAlgebra:
    return aid.fam.instantiate(aid.params)


# -------------------------------------------------------------------- parsing

_SUBSCRIPT_MU = re.compile(r"^(r'?)_?\{?3,([^}]+)\}?$")


def _parse_params(text: str) -> tuple[Fraction, ...]:
    text = text.strip()
    if text.startswith("{") and text.endswith("}"):
        text = text[1:-1]
    if not text:
        raise CatalogError("empty parameter list")
    try:
        return tuple(Fraction(parse_scalar(p)) for p in text.split(","))
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise CatalogError(f"bad parameter list {text!r}: parameters must be rationals") from exc


def _split_caret(token: str) -> tuple[str, str | None]:
    depth = 0
    for i in range(len(token) - 1, -1, -1):
        ch = token[i]
        if ch == "}":
            depth += 1
        elif ch == "{":
            depth -= 1
        elif ch == "^" and depth == 0:
            return token[:i], token[i + 1:]
    return token, None


def parse_token(token: str) -> AlgebraId:
    """Parse one summand name (no top-level '+')."""
    token = token.strip()
    if not token:
        raise CatalogError("empty algebra name")
    hit = _lookup().get(_key(token))
    if hit is not None and not hit.params:
        return AlgebraId(hit.name)
    m = _SUBSCRIPT_MU.match(token.replace(" ", ""))
    if m and m.group(2) not in ("mu", "μ"):
        fam = "r'_{3,mu}" if m.group(1) == "r'" else "r_{3,mu}"
        return make(fam, *_parse_params(m.group(2)))
    base, params = _split_caret(token)
    if params is None:
        if hit is not None:
            raise CatalogError(f"{hit.name} needs parameters {hit.params}")
        raise CatalogError(f"unknown algebra {token!r}")
    fam = _lookup().get(_key(base))
    if fam is None:
        raise CatalogError(f"unknown family {base!r}")
    return make(fam.name, *_parse_params(params))


def _normalize(text: str) -> str:
    for a, b in (("⊕", "+"), ("²", "^2"), ("³", "^3"), ("⁴", "^4"), ("⁵", "^5"), ("μ", "mu"), ("−", "-")):
        text = text.replace(a, b)
    return text.replace(" ", "")


def _tokens(text: str) -> list[str]:
    text = _normalize(text)
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        if ch == "+" and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return out


@lru_cache(maxsize=None)
def _composites() -> list[Family]:
    return sorted((f for f in _load().values() if f.components), key=lambda f: -len(f.components))


def _match_composite(ids: Sequence[AlgebraId]) -> AlgebraId | None:
    for fam in _composites():
        if len(fam.components) != len(ids):
            continue
        if [a.family for a in ids] == [family(c).name for c in fam.components]:
            params = tuple(p for a in ids for p in a.params)
            return AlgebraId(fam.name, params) if fam.in_domain(params) else None
    return None


def _segmentations(ids: list[AlgebraId]) -> list[list[AlgebraId]]:
    """All ways to group consecutive summands into catalog families."""
    if not ids:
        return [[]]
    out = []
    for k in range(len(ids), 0, -1):
        head = ids[0] if k == 1 else _match_composite(ids[:k])
        if head is None:
            continue
        for rest in _segmentations(ids[k:]):
            out.append([head] + rest)
    return out


def parse_sum(text: str) -> list[AlgebraId]:
    """Greedy longest-match parse of a direct sum into catalog families."""
    ids = [parse_token(t) for t in _tokens(text)]
    return _segmentations(ids)[0]


def parse_name(text: str) -> AlgebraId:
    """Parse a name that must denote a single catalog family."""
    parts = parse_sum(text)
    if len(parts) != 1:
        raise CatalogError(f"{text!r} is a direct sum of {len(parts)} catalog algebras, expected one")
    return parts[0]


def split_pair(text: str, dims: tuple[int, int] = (4, 3)) -> tuple[AlgebraId, AlgebraId]:
    """Split "g4+g3" into two catalog families of the given dimensions."""
    ids = [parse_token(t) for t in _tokens(text)]
    for seg in _segmentations(ids):
        if len(seg) == 2 and (seg[0].dim, seg[1].dim) == dims:
            return seg[0], seg[1]
    raise CatalogError(f"cannot read {text!r} as a {dims[0]}-dimensional plus a {dims[1]}-dimensional catalog algebra")


def sum_algebra(ids: Sequence[AlgebraId]) -> LieAlgebra:
    out = ids[0].algebra()
    for a in ids[1:]:
        out = direct_sum(out, a.algebra())
    return out


def sum_name(ids: Sequence[AlgebraId]) -> str:
    return "+".join(a.name for a in ids)


# ------------------------------------------------------------------- examples

def listed_example(index: int) -> tuple[AlgebraId, AlgebraId, list[KForm]]:
    """(g4, g3, coframe f^1..f^7) of one of the three quadratic-extension examples."""
    ex = fixtures()["dual_bases"][index]
    coframe = [KForm.from_terms(7, [((i,), c) for i, c in row], degree=1) for row in ex["coframe"]]
    return parse_name(ex["g4"]), parse_name(ex["g3"]), coframe


def sample_ids(dim: int) -> list[AlgebraId]:
    """One AlgebraId per fixture sample of the given dimension (3 or 4)."""
    key = {3: "three_dim", 4: "four_dim"}[dim]
    out = []
    for row in fixtures()[key]:
        for s in row["samples"]:
            out.append(make(row["family"], *s))
    return out


def fixture_row(aid: AlgebraId) -> dict:
    key = {3: "three_dim", 4: "four_dim"}[aid.dim]
    env = dict(zip(aid.fam.params, aid.params))
    for row in fixtures()[key]:
        if row["family"] == aid.family and ("when" not in row or evaluate(row["when"], env)):
            return row
    raise CatalogError(f"no table row for {aid}")
