from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: Any = None


@dataclass
class VerificationReport:
    """Named pass/fail checks with witnesses for the failures.

    ``overall`` is the conjunction of the asserted checks. Checks recorded with
    ``note`` are informational: they carry a boolean but never affect
    ``overall`` (used for statements the library reports but does not assert).
    """

    subject: str
    checks: list[Check] = field(default_factory=list)
    notes: list[Check] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    def add(self, name: str, passed: bool, witness: Any = None) -> bool:
        self.checks.append(Check(name, bool(passed), None if passed else witness))
        return bool(passed)

    def note(self, name: str, value: Any, detail: Any = None) -> None:
        self.notes.append(Check(name, value, detail))

    def skip(self, reason: str) -> None:
        self.skipped.append(reason)

    def extend(self, other: VerificationReport, prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness))
        for c in other.notes:
            self.notes.append(Check(prefix + c.name, c.passed, c.witness))
        self.skipped.extend(prefix + s for s in other.skipped)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __bool__(self) -> bool:
        return self.overall

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "overall": self.overall,
            "checks": [
                {"name": c.name, "passed": c.passed, "witness": _jsonable(c.witness)}
                for c in self.checks
            ],
            "notes": [
                {"name": c.name, "value": _jsonable(c.passed), "detail": _jsonable(c.witness)}
                for c in self.notes
            ],
            "skipped": list(self.skipped),
        }

    def summary(self) -> str:
        lines = [f"{self.subject}: {'PASS' if self.overall else 'FAIL'}"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            extra = "" if c.passed else f"  witness={c.witness!r}"
            lines.append(f"  [{mark}] {c.name}{extra}")
        for c in self.notes:
            extra = f"  ({c.witness})" if c.witness is not None else ""
            lines.append(f"  [note] {c.name} = {c.passed}{extra}")
        for s in self.skipped:
            lines.append(f"  [skip] {s}")
        return "\n".join(lines)


def _jsonable(x):
    import numpy as np

    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return repr(x)
