"""Validation reports carrying explicit witnesses.

Law violations (broken associativity, a failing functor axiom, ...) are data,
not exceptions: validators return a Report listing every violated axiom
together with the morphisms / basis indices that witness the failure.
Precondition failures (wrong field kind, dimension mismatch) raise instead.
"""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    witness: dict

    def __str__(self) -> str:
        parts = ", ".join(f"{k}={v!r}" for k, v in self.witness.items())
        return f"[{self.code}] {self.message} ({parts})" if parts else f"[{self.code}] {self.message}"


@dataclass
class Report:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, code: str, message: str, **witness) -> None:
        self.violations.append(Violation(code, message, witness))

    def extend(self, other: "Report") -> None:
        self.violations.extend(other.violations)

    def summary(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(str(v) for v in self.violations)

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [
                {"code": v.code, "message": v.message,
                 "witness": {k: repr(w) for k, w in v.witness.items()}}
                for v in self.violations
            ],
        }
