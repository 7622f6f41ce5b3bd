"""Ideal-membership certificates: claim = sum of relation bodies times right multipliers."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional

from ..mat2 import MatrixParseError
from .algebra import GroupRingElem
from .coeffs import GaussQ, Poly
from .relations import Relation


class CertificateParseError(ValueError):
    pass


@dataclass
class Certificate:
    claim: GroupRingElem
    witness: list[tuple[Relation, GroupRingElem]]
    meta: dict = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.meta.get("name", "unnamed")

    def witness_sum(self) -> GroupRingElem:
        total = GroupRingElem()
        for rel, mult in self.witness:
            total = total + rel.body() * mult
        return total

    def to_json(self) -> dict:
        return {
            "claim": self.claim.to_json(),
            "witness": [{"relation": r.to_json(), "multiplier": m.to_json()} for r, m in self.witness],
            "meta": self.meta,
        }

    @classmethod
    def from_json(cls, data, where: str = "<data>") -> "Certificate":
        try:
            claim = GroupRingElem.from_json(data["claim"])
        except (KeyError, TypeError, ValueError, MatrixParseError) as exc:
            raise CertificateParseError(f"{where}: claim: {exc}") from None
        witness = []
        for i, w in enumerate(data.get("witness", [])):
            try:
                witness.append((Relation.from_json(w["relation"]), GroupRingElem.from_json(w["multiplier"])))
            except (KeyError, TypeError, ValueError, MatrixParseError) as exc:
                raise CertificateParseError(f"{where}: witness[{i}]: {exc}") from None
        return cls(claim, witness, dict(data.get("meta", {})))


@dataclass
class CertificateCheck:
    valid: bool
    name: str
    mismatch: Optional[tuple] = None

    @property
    def diagnostic(self) -> str:
        if self.valid:
            return "witness sum equals claim"
        m, want, got = self.mismatch
        return f"first mismatch at [{m}]: claim coefficient {want!r}, witness gives {got!r}"


def check_certificate(c: Certificate) -> CertificateCheck:
    total = c.witness_sum()
    diff = c.claim.first_difference(total)
    return CertificateCheck(diff is None, c.name, diff)


def load_certificate(path) -> Certificate:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise CertificateParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return Certificate.from_json(data, str(path))


def shipped_certificate_paths() -> list:
    root = resources.files("conversekit") / "data" / "certificates"
    return sorted((p for p in root.iterdir() if p.name.endswith(".json")), key=lambda p: p.name)


def shipped_certificates(level: Optional[int] = None) -> list[Certificate]:
    out = []
    for p in shipped_certificate_paths():
        c = Certificate.from_json(json.loads(p.read_text()), p.name)
        if level is None or c.meta.get("level") in (None, level):
            out.append(c)
    return out


def mutate(c: Certificate, where: str = "claim") -> Certificate:
    """Copy of c with one coefficient shifted by 1 (claim side or first multiplier)."""
    if where == "claim":
        terms = c.claim.sorted_terms()
        if terms:
            m, coeff = terms[0]
            new = dict(c.claim.terms)
            new[m] = coeff + Poly.const(1)
            claim = GroupRingElem(new)
        else:
            claim = GroupRingElem.scalar(1)
        return Certificate(claim, list(c.witness), dict(c.meta))
    if not c.witness:
        raise ValueError("certificate has no witness to mutate")
    rel, mult = c.witness[0]
    m, coeff = mult.sorted_terms()[0]
    new = dict(mult.terms)
    new[m] = coeff + Poly.const(GaussQ(Fraction(1)))
    return Certificate(c.claim, [(rel, GroupRingElem(new))] + list(c.witness[1:]), dict(c.meta))
