"""Verification reports shared by the check suites and the command line."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    suite: str
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    def add(self, name: str, ok: bool, detail: str = ""):
        self.checks.append({"name": name, "pass": bool(ok), "detail": detail})

    def extend(self, other: "Report"):
        self.checks.extend(other.checks)

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def to_json(self):
        return {"suite": self.suite, "pass": self.passed,
                "checks": sorted(self.checks, key=lambda c: c["name"])}
