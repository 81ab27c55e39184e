"""Structured pass/fail records shared by every checker."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class ConsistencyError(RuntimeError):
    """An internal invariant failed on data that passed its own checks."""


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: dict | None = None
    detail: str = ""

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"name": self.name, "passed": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class CheckReport:
    subject: str
    results: list[CheckResult] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def add(self, name: str, passed: bool, witness: dict | None = None, detail: str = "") -> bool:
        self.results.append(CheckResult(name, bool(passed), witness, detail))
        return bool(passed)

    def extend(self, other: "CheckReport", prefix: str = "") -> None:
        for r in other.results:
            self.results.append(CheckResult(prefix + r.name, r.passed, r.witness, r.detail))
        self.data.update(other.data)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __bool__(self) -> bool:
        return self.passed

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def first_failure(self) -> CheckResult | None:
        fails = self.failures
        return fails[0] if fails else None

    def __getitem__(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "results": [r.to_dict() for r in self.results],
            **({"data": self.data} if self.data else {}),
        }

    def summary(self) -> str:
        lines = [f"{self.subject}: {'PASS' if self.passed else 'FAIL'}"]
        for r in self.results:
            mark = "ok " if r.passed else "BAD"
            extra = f"  {r.witness}" if (r.witness and not r.passed) else ""
            lines.append(f"  [{mark}] {r.name}{extra}")
        return "\n".join(lines)
