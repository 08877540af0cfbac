"""Structured check records and deterministic report serialization.

A report is one top-level object with ``config``, ``checks`` and ``summary``.
Serialized output is byte-stable for a fixed configuration and seed: checks
are sorted by name and wall-clock timings are kept only in memory, never
written.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List

from .errors import ConfigurationError

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_INAPPLICABLE = "inapplicable"


@dataclass
class CheckResult:
    name: str
    anchor: str
    status: str
    details: str = ""
    elapsed: float = 0.0


def run_check(name: str, anchor: str, fn: Callable[[], str | None]) -> CheckResult:
    """Run one check; exceptions other than gate violations become failures.

    The callable may return a detail string; raising marks the check failed
    with the exception text. ConfigurationError is not caught: a gate
    violation is a configuration problem, not a verification verdict.
    """
    start = time.perf_counter()
    try:
        details = fn() or ""
        status = STATUS_PASS
    except ConfigurationError:
        raise
    except Exception as exc:  # noqa: BLE001 - verdicts must not abort the run
        details = f"{type(exc).__name__}: {exc}"
        status = STATUS_FAIL
    return CheckResult(name, anchor, status, details, time.perf_counter() - start)


def inapplicable(name: str, anchor: str, details: str) -> CheckResult:
    return CheckResult(name, anchor, STATUS_INAPPLICABLE, details)


@dataclass
class Report:
    config: Dict
    checks: List[CheckResult] = field(default_factory=list)

    def sorted_checks(self) -> List[CheckResult]:
        return sorted(self.checks, key=lambda c: c.name)

    @property
    def summary(self) -> Dict[str, int]:
        counts = {STATUS_PASS: 0, STATUS_FAIL: 0, STATUS_INAPPLICABLE: 0}
        for check in self.checks:
            counts[check.status] += 1
        counts["total"] = len(self.checks)
        return counts

    @property
    def exit_code(self) -> int:
        return 1 if self.summary[STATUS_FAIL] else 0

    def to_json(self) -> str:
        payload = {
            "config": self.config,
            "checks": [
                {
                    "name": c.name,
                    "anchor": c.anchor,
                    "status": c.status,
                    "details": c.details,
                }
                for c in self.sorted_checks()
            ],
            "summary": self.summary,
        }
        return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["name", "anchor", "status", "details"])
        for c in self.sorted_checks():
            writer.writerow([c.name, c.anchor, c.status, c.details])
        return buf.getvalue()
