"""Certificates for closed Hodge duals and their verification.

A certificate carries the 4-form Psi, the algebra it lives on and evidence
that Psi lies in the orbit of Hodge duals:

* ``coframe``: seven 1-forms (entries possibly involving square roots)
  whose standard 4-form is Psi; checked exactly.
* ``numeric``: an exact Hitchin test of the dual 3-vector (Sylvester minors
  of the rational matrix) together with a floating point margin.

Closedness is always checked exactly.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Mapping

from . import linalg
from .forms import KForm
from .g2 import OrbitClass, classify_four_form, definiteness_margin, hitchin_four_form, standard_four_form
from .lie import LieAlgebra

MARGIN_THRESHOLD = 1e-6
PRECISION = 1e-12


@dataclass
class CoframeEvidence:
    coframe: list[KForm]
    kind: str = "coframe"

    def to_json(self) -> dict:
        return {"kind": self.kind, "coframe": [f.to_json() for f in self.coframe]}


@dataclass
class NumericEvidence:
    """Exact signs of the leading minors of the Hitchin matrix plus a float margin."""
    minor_signs: list[int]
    margin: float
    precision: float = PRECISION
    threshold: float = MARGIN_THRESHOLD
    kind: str = "numeric"

    def to_json(self) -> dict:
        return {"kind": self.kind, "minor_signs": self.minor_signs, "margin": self.margin,
                "precision": self.precision, "threshold": self.threshold}


@dataclass
class Certificate:
    algebra: LieAlgebra
    psi: KForm
    evidence: CoframeEvidence | NumericEvidence
    route: str | None = None
    pair: tuple[str, str] | None = None
    closed: bool = True
    details: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "algebra": self.algebra.to_json(),
            "psi": self.psi.to_json(),
            "evidence": self.evidence.to_json(),
            "closed": self.closed,
        }
        if self.route:
            out["route"] = self.route
        if self.pair:
            out["pair"] = list(self.pair)
        if self.details:
            out["details"] = self.details
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, data: Mapping) -> "Certificate":
        try:
            alg = LieAlgebra.from_json(data["algebra"])
            psi = KForm.from_json(data["psi"])
            ev = data["evidence"]
            if ev["kind"] == "coframe":
                evidence = CoframeEvidence([KForm.from_json(f) for f in ev["coframe"]])
            elif ev["kind"] == "numeric":
                evidence = NumericEvidence([int(s) for s in ev["minor_signs"]], float(ev["margin"]),
                                           float(ev.get("precision", PRECISION)),
                                           float(ev.get("threshold", MARGIN_THRESHOLD)))
            else:
                raise ValueError(f"unknown evidence kind {ev['kind']!r}")
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed certificate: {exc}") from exc
        pair = tuple(data["pair"]) if data.get("pair") else None
        return cls(alg, psi, evidence, data.get("route"), pair, bool(data.get("closed", True)),
                   dict(data.get("details", {})))

    @classmethod
    def loads(cls, text: str) -> "Certificate":
        return cls.from_json(json.loads(text))


def numeric_evidence(psi: KForm) -> NumericEvidence:
    b = hitchin_four_form(psi)
    ints = linalg.integer_scaled(b) if all(not hasattr(x, "terms") for row in b for x in row) else None
    if ints is None:
        raise ValueError("numeric evidence needs a rational 4-form")
    minors = linalg.leading_minors_int(ints)
    return NumericEvidence([(m > 0) - (m < 0) for m in minors], definiteness_margin(psi))


def make_certificate(g: LieAlgebra, psi: KForm, coframe: list[KForm] | None = None, **kw) -> Certificate:
    evidence = CoframeEvidence(coframe) if coframe is not None else numeric_evidence(psi)
    return Certificate(g, psi, evidence, closed=g.d(psi).is_zero(), **kw)


@dataclass
class VerificationReport:
    ok: bool
    closed: bool
    orbit_ok: bool
    reasons: list[str]


def check_certificate(g: LieAlgebra, cert: Certificate) -> VerificationReport:
    reasons = []
    psi = cert.psi
    if psi.dim != 7 or psi.degree != 4 or g.dim != 7:
        return VerificationReport(False, False, False, ["Psi must be a 4-form on a 7-dimensional algebra"])
    closed = g.d(psi).is_zero()
    if not closed:
        reasons.append("d(Psi) is not zero")
    if "frame" in cert.details:
        closed = closed and _frame_matches(g, cert.details)
        if not closed:
            reasons.append("the recorded adapted frame does not carry the base algebra onto this one")
    ev = cert.evidence
    orbit_ok = False
    if isinstance(ev, CoframeEvidence):
        try:
            pulled = standard_four_form(ev.coframe).simplify()
        except ValueError as exc:
            reasons.append(f"coframe rejected: {exc}")
        else:
            orbit_ok = pulled == psi.simplify()
            if not orbit_ok:
                reasons.append("the standard 4-form of the coframe differs from Psi")
    else:
        kind = classify_four_form(psi)
        if kind.orbit is not OrbitClass.G2:
            reasons.append(f"Hitchin test gives {kind.orbit.value}")
        else:
            margin = definiteness_margin(psi)
            if margin < ev.threshold:
                reasons.append(f"definiteness margin {margin:.3e} below {ev.threshold:.0e}")
            else:
                orbit_ok = True
            if kind.sign < 0:
                reasons.append("note: -Psi is the Hodge dual (Psi itself lies in the opposite orbit)")
    return VerificationReport(closed and orbit_ok, closed, orbit_ok, reasons)


def _frame_matches(g: LieAlgebra, details: Mapping) -> bool:
    """An adapted-coframe certificate records the catalog algebra and the frame;
    the frame must carry one onto the other."""
    from fractions import Fraction
    from .lie import change_coframe
    try:
        base = LieAlgebra.from_json(details["base"])
        frame = [[Fraction(x) for x in row] for row in details["frame"]]
        return change_coframe(base, frame).d_images == g.d_images
    except (KeyError, ValueError, ZeroDivisionError):
        return False


def verify_certificate(g: LieAlgebra, cert: Certificate) -> bool:
    return check_certificate(g, cert).ok


def is_cocalibrated(g: LieAlgebra, psi: KForm) -> bool:
    if not classify_four_form(psi).orbit is OrbitClass.G2:
        raise ValueError("the 4-form is not in the orbit of Hodge duals")
    return g.d(psi).is_zero()
