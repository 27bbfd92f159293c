"""Structured pass/fail reports produced by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"


@dataclass
class Check:
    check_id: str
    status: str
    counts: dict[str, int] = field(default_factory=dict)
    counterexample: dict[str, Any] | None = None
    certification: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "check_id": self.check_id,
            "status": self.status,
            "counts": dict(sorted(self.counts.items())),
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.certification is not None:
            out["certification"] = self.certification
        return out


def check(check_id: str, counterexample: dict | None, **counts: int) -> Check:
    """Build a check that passes iff no counterexample was found."""
    return Check(
        check_id,
        PASS if counterexample is None else FAIL,
        counts=counts,
        counterexample=counterexample,
    )


@dataclass
class Report:
    name: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, check_id: str) -> Check:
        for c in self.checks:
            if c.check_id == check_id:
                return c
        raise KeyError(check_id)

    def __iter__(self):
        return iter(self.checks)

    def add(self, c: Check) -> Check:
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(
                Check(prefix + c.check_id, c.status, c.counts, c.counterexample, c.certification)
            )

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict[str, Any]:
        return {
            "report": self.name,
            "status": PASS if self.passed else FAIL,
            "checks": [c.to_dict() for c in self.checks],
        }

    def summary_lines(self) -> list[str]:
        lines = []
        for c in self.checks:
            tag = c.status.upper()
            if c.certification:
                tag += f" ({c.certification})"
            lines.append(f"{self.name}:{c.check_id}: {tag}")
        return lines
