"""Structured pass/fail reports shared by the verifiers and the CLI."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, List, Optional

__all__ = ["Check", "Report", "jsonable"]


def jsonable(value: Any) -> Any:
    """Convert polynomials, fractions and containers into JSON-friendly values."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str, float)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return str(value)


@dataclass
class Check:
    label: str
    ok: bool
    expected: Any = None
    actual: Any = None
    note: str = ""

    def to_json(self) -> dict:
        out = {"label": self.label, "ok": self.ok}
        if not self.ok or self.expected is not None:
            out["expected"] = jsonable(self.expected)
            out["actual"] = jsonable(self.actual)
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class Report:
    title: str
    checks: List[Check] = field(default_factory=list)

    def add(self, label: str, ok: bool, expected: Any = None, actual: Any = None,
            note: str = "") -> Check:
        c = Check(label, bool(ok), expected, actual, note)
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.label, c.ok, c.expected, c.actual, c.note))

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def status(self) -> str:
        return "ok" if self.ok else "mismatch"

    @property
    def first_failure(self) -> Optional[Check]:
        return next((c for c in self.checks if not c.ok), None)

    def to_json(self) -> dict:
        out = {"title": self.title, "status": self.status,
               "checks": [c.to_json() for c in self.checks]}
        ff = self.first_failure
        if ff is not None:
            out["first_failure"] = ff.to_json()
        return out

    def to_text(self) -> str:
        lines = [f"{self.title}: {self.status.upper()} ({sum(c.ok for c in self.checks)}"
                 f"/{len(self.checks)} checks)"]
        for c in self.checks:
            line = f"  [{'ok' if c.ok else 'FAIL'}] {c.label}"
            if c.note:
                line += f"  ({c.note})"
            lines.append(line)
            if not c.ok:
                lines.append(f"      expected: {c.expected}")
                lines.append(f"      actual:   {c.actual}")
        return "\n".join(lines)
