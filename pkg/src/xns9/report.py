"""Named boolean checks with witnesses, shared by all verification surfaces."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterator


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""
    witness: Any = None

    def as_dict(self) -> dict:
        out: dict[str, Any] = {"detail": self.detail, "name": self.name, "passed": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


class CheckReport:
    """Ordered list of checks; a report passes iff every check passed."""

    def __init__(self, title: str, checks: list[Check] | None = None):
        self.title = title
        self.checks: list[Check] = list(checks or [])

    def add(self, name: str, passed: bool, detail: str = "", witness: Any = None) -> Check:
        check = Check(name, bool(passed), detail, witness)
        self.checks.append(check)
        return check

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __iter__(self) -> Iterator[Check]:
        return iter(self.checks)

    def __len__(self) -> int:
        return len(self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def as_dict(self) -> dict:
        return {
            "checks": [c.as_dict() for c in self.checks],
            "passed": self.passed,
            "title": self.title,
        }

    def __repr__(self) -> str:
        status = "ok" if self.passed else "FAILED"
        return f"CheckReport({self.title!r}, {len(self.checks)} checks, {status})"
