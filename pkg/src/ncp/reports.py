"""Report containers: named checks, certificate reports and example reproductions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    name: str
    passed: bool
    value: Any = None


@dataclass
class CheckList:
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, name: str, passed: bool, value: Any = None) -> bool:
        self.checks.append(Check(name, bool(passed), value))
        return bool(passed)

    def failures(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]


@dataclass
class CertReport(CheckList):
    condition: str = "Bm"
    params: dict = field(default_factory=dict)
    places: list = field(default_factory=list)
    witness: Any = None
    unconditional: bool = False

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks) and (self.witness is not None or self.unconditional)


@dataclass
class PaperReport(CheckList):
    example: str = ""
    parameters: dict = field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)
