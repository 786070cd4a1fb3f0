"""Check results, suite reports and their JSON / human renderings.

Every check compares two canonical strings, so a verdict never depends on a
floating-point tolerance. The JSON document is versioned:

    {"version": ..., "suites": [{"name", "checks", "rows"}], "summary": {...}}
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Optional

SCHEMA_VERSION = "1.0"


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


@dataclass
class CheckResult:
    """One exact comparison."""
    id: str
    suite: str
    paper_ref: str
    status: CheckStatus
    expected: str = ""
    actual: str = ""
    duration: float = 0.0             # milliseconds

    @classmethod
    def compare(cls, id: str, suite: str, paper_ref: str, expected: str, actual: str,
                duration: float = 0.0) -> CheckResult:
        status = CheckStatus.PASS if expected == actual else CheckStatus.FAIL
        return cls(id=id, suite=suite, paper_ref=paper_ref, status=status,
                   expected=expected, actual=actual, duration=duration)

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "suite": self.suite,
            "paper_ref": self.paper_ref,
            "status": self.status.value,
            "expected": self.expected,
            "actual": self.actual,
            "duration": round(self.duration, 3),
        }


@dataclass
class SuiteReport:
    name: str
    checks: list[CheckResult] = field(default_factory=list)
    rows: list[dict[str, Any]] = field(default_factory=list)   # pencil / lattice tables

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "checks": [c.to_dict() for c in self.checks],
            "rows": self.rows,
        }


@dataclass
class Report:
    suites: list[SuiteReport] = field(default_factory=list)
    version: str = SCHEMA_VERSION

    def checks(self) -> list[CheckResult]:
        return [c for s in self.suites for c in s.checks]

    def summary(self) -> dict[str, int]:
        counts = {status.value: 0 for status in CheckStatus}
        for check in self.checks():
            counts[check.status.value] += 1
        return {"passed": counts["pass"], "failed": counts["fail"], "skipped": counts["skipped"]}

    @property
    def failed(self) -> bool:
        return self.summary()["failed"] > 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "version": self.version,
            "suites": [s.to_dict() for s in self.suites],
            "summary": self.summary(),
        }


# ── Rendering ───────────────────────────────────────────────────────


def render_json(report: Report) -> str:
    return json.dumps(report.to_dict(), indent=2) + "\n"


def render_human(report: Report) -> str:
    lines = []
    for suite in report.suites:
        lines.append(f"== {suite.name} ==")
        for check in suite.checks:
            lines.append(f"  [{check.status.value.upper():7}] {check.id}  ({check.paper_ref})")
            if check.status is CheckStatus.FAIL:
                lines.append(f"            expected: {check.expected}")
                lines.append(f"            actual:   {check.actual}")
        for row in suite.rows:
            lines.append("  " + ", ".join(f"{k}={v}" for k, v in row.items()))
    s = report.summary()
    lines.append(f"{s['passed']} passed, {s['failed']} failed, {s['skipped']} skipped")
    return "\n".join(lines) + "\n"


def emit(report: Report, format: str = "human", path: Optional[Path] = None) -> str:
    """Render the report and write it to path, or stdout when path is None."""
    text = render_json(report) if format == "json" else render_human(report)
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    return text
