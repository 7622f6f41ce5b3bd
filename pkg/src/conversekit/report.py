"""Deterministic check reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

SCHEMA_VERSION = 1
PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass
class Check:
    id: str
    status: str
    details: str = ""
    value: Optional[float] = None
    tolerance: Optional[float] = None

    def to_json(self) -> dict:
        out = {"id": self.id, "status": self.status, "details": self.details}
        if self.value is not None:
            out["numeric"] = {"value": self.value, "tolerance": self.tolerance}
        return out


def check(id: str, ok: bool, details: str = "", value=None, tolerance=None) -> Check:
    return Check(id, PASS if ok else FAIL, details, value, tolerance)


@dataclass
class Report:
    command: list[str] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)
    version: str = ""

    def add(self, c: Check) -> Check:
        self.checks.append(c)
        return c

    def extend(self, cs) -> None:
        self.checks.extend(cs)

    @property
    def overall(self) -> str:
        return FAIL if any(c.status == FAIL for c in self.checks) else PASS

    @property
    def exit_code(self) -> int:
        return 0 if self.overall == PASS else 1

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "version": self.version,
            "invocation": list(self.command),
            "checks": [c.to_json() for c in self.checks],
            "overall": self.overall,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False) + "\n"

    def render(self) -> str:
        lines = []
        for c in self.checks:
            line = f"[{c.status.upper():4}] {c.id}"
            if c.details:
                line += f": {c.details}"
            if c.value is not None and c.tolerance is not None:
                line += f" (value {c.value:.3e}, tol {c.tolerance:.0e})"
            lines.append(line)
        lines.append(f"overall: {self.overall}")
        return "\n".join(lines)
