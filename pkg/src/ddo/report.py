"""Structured pass/fail records for the verification routines."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    value: float
    tol: float
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "value": self.value, "tol": self.tol,
                "passed": self.passed, "detail": self.detail}


@dataclass
class VerificationReport:
    name: str
    checks: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def add(self, name, value, tol, passed=None, **detail) -> Check:
        """Record a residual; passes when value <= tol unless told otherwise."""
        if passed is None:
            passed = bool(value <= tol)
        check = Check(name, float(value), float(tol), bool(passed), detail)
        self.checks.append(check)
        return check

    def extend(self, other: "VerificationReport", prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.value, c.tol, c.passed, c.detail))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "meta": self.meta,
                "checks": [c.to_dict() for c in self.checks]}
