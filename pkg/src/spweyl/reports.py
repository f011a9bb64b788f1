"""Uniform pass/fail records for the verification checks."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field


@dataclass
class CheckReport:
    name: str
    passed: bool
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    seconds: float | None = None

    def __post_init__(self):
        if not self.passed and not self.witnesses:
            raise ValueError(f"failing check {self.name!r} needs a witness")

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "name": self.name,
            "status": "pass" if self.passed else "fail",
            "witnesses": self.witnesses,
            "details": self.details,
        }
        if timing and self.seconds is not None:
            out["seconds"] = round(self.seconds, 3)
        return out

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}"


@contextmanager
def timed(record: dict):
    t0 = time.perf_counter()
    try:
        yield
    finally:
        record["seconds"] = time.perf_counter() - t0
