"""Verification reports shared by every checking routine."""
from __future__ import annotations

import time
from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    witness: str | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "pass": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class Report:
    """Outcome of one verification suite; failures are entries, not exceptions."""

    suite: str
    params: tuple | None = None
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    elapsed: float = 0.0
    _t0: float = field(default_factory=time.perf_counter, repr=False)

    def add(self, name: str, passed: bool, witness: str | None = None) -> bool:
        self.checks.append(Check(name, bool(passed), None if passed else witness))
        return bool(passed)

    def note(self, text: str):
        self.notes.append(text)

    def extend(self, other: Report, prefix: str | None = None):
        for c in other.checks:
            name = f"{prefix}:{c.name}" if prefix else c.name
            self.checks.append(Check(name, c.passed, c.witness))
        self.notes.extend(other.notes)

    def finish(self) -> Report:
        self.elapsed = time.perf_counter() - self._t0
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def first_failure(self) -> Check | None:
        for c in self.checks:
            if not c.passed:
                return c
        return None

    def to_json(self) -> dict:
        out = {
            "suite": self.suite,
            "params": list(self.params) if self.params is not None else None,
            "checks": [c.to_json() for c in self.checks],
            "elapsed": round(self.elapsed, 6),
        }
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def summary(self) -> str:
        bad = len(self.failures)
        status = "PASS" if not bad else f"FAIL ({bad} of {len(self.checks)})"
        return f"{self.suite} {self.params}: {status}, {len(self.checks)} checks"
