"""Verification reports shared by all checkers."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np


@dataclass
class Report:
    """Outcome of a verification.

    ``passed`` is True/False, or None when the bounds were too small to
    decide.  ``failures`` holds human-readable witnesses; ``details`` carries
    tables and exact values for the JSON output.
    """

    name: str
    passed: bool | None = True
    checks: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)

    def check(self, label: str, ok: bool, witness: str = "") -> bool:
        ok = bool(ok)
        self.checks.append((label, ok))
        if not ok:
            self.failures.append(f"{label}: {witness}" if witness else label)
            if self.passed is not None:
                self.passed = False
        return ok

    def inconclusive(self, reason: str):
        self.passed = None
        self.details.setdefault("inconclusive", []).append(reason)

    @property
    def status(self) -> str:
        return {True: "pass", False: "fail", None: "inconclusive"}[self.passed]

    @property
    def exit_code(self) -> int:
        return {True: 0, False: 1, None: 2}[self.passed]

    def __bool__(self):
        return self.passed is True

    @property
    def first_failure(self) -> str | None:
        return self.failures[0] if self.failures else None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "bounds": _jsonable(self.bounds),
            "checks": [{"check": c, "ok": ok} for c, ok in self.checks],
            "failures": list(self.failures),
            "details": _jsonable(self.details),
        }

    def text(self) -> str:
        lines = [f"[{self.status.upper()}] {self.name}"]
        if self.bounds:
            lines.append("  bounds: " + ", ".join(f"{k}={v}" for k, v in self.bounds.items()))
        for c, ok in self.checks:
            lines.append(f"  {'ok ' if ok else 'BAD'} {c}")
        for k, v in self.details.items():
            lines.append(f"  {k}: {_jsonable(v)}")
        return "\n".join(lines)


def _jsonable(x):
    if isinstance(x, Report):
        return x.to_dict()
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {(k if isinstance(k, str) else str(k)): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)
