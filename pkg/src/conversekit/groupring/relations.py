"""Base relations that generate the annihilator right ideal."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..mat2 import ProjMat
from ..numtheory import is_prime
from .algebra import GroupRingElem
from .coeffs import Poly

RELATION_NAMES = ("periodic", "fricke", "hecke", "u_p", "minus_id")

_ONE = ProjMat.identity()


def _p(r) -> ProjMat:
    return ProjMat(1, r, 0, 1)


@dataclass(frozen=True)
class Relation:
    name: str
    params: dict[str, Any] = field(default_factory=dict, hash=False, compare=True)

    def body(self) -> GroupRingElem:
        p = self.params
        if self.name == "periodic":
            r = int(p["r"])
            return GroupRingElem.scalar(1) - GroupRingElem.of(_p(r))
        if self.name == "fricke":
            N = int(p["N"])
            lam = p.get("lam", "lam_H")
            return GroupRingElem.of(ProjMat(0, -1, N, 0)) - GroupRingElem.scalar(Poly.coerce(lam))
        if self.name == "hecke":
            q = int(p["p"])
            _need_prime(q)
            # 1/sqrt(p) absorbed into the a_p symbol
            out = GroupRingElem.scalar(Poly.symbol(f"a_{q}"))
            out = out - GroupRingElem.of(ProjMat(q, 0, 0, 1))
            for a in range(q):
                out = out - GroupRingElem.of(ProjMat(1, a, 0, q))
            return out
        if self.name == "u_p":
            q, N = int(p["p"]), int(p["N"])
            _need_prime(q)
            if N % q:
                raise ValueError(f"u_p needs p | N, got p={q}, N={N}")
            out = GroupRingElem([(ProjMat(q, a, 0, q), 1) for a in range(q)])
            if N % (q * q):
                out = out - GroupRingElem.of(ProjMat(q, 0, 0, 1))
            return out
        if self.name == "minus_id":
            lam = p.get("lam", "lam_Q")
            return GroupRingElem.of(ProjMat(-1, 0, 0, -1)) - GroupRingElem.scalar(Poly.coerce(lam))
        raise ValueError(f"unknown relation {self.name!r}; expected one of {RELATION_NAMES}")

    def __str__(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.name}({args})"

    def to_json(self) -> dict:
        return {"name": self.name, "params": dict(sorted(self.params.items()))}

    @classmethod
    def from_json(cls, data) -> "Relation":
        if not isinstance(data, dict) or "name" not in data:
            raise ValueError(f"malformed relation: {data!r}")
        if data["name"] not in RELATION_NAMES:
            raise ValueError(f"unknown relation {data['name']!r}")
        return cls(data["name"], dict(data.get("params", {})))


def _need_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def periodic(r: int) -> Relation:
    return Relation("periodic", {"r": r})


def fricke(N: int, lam: str = "lam_H") -> Relation:
    return Relation("fricke", {"N": N, "lam": lam})


def hecke(p: int) -> Relation:
    return Relation("hecke", {"p": p})


def u_p(p: int, N: int) -> Relation:
    return Relation("u_p", {"p": p, "N": N})


def minus_id(lam: str = "lam_Q") -> Relation:
    return Relation("minus_id", {"lam": lam})
