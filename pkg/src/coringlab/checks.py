"""Findings produced by the axiom checkers, and the errors raised on bad input."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Finding:
    law: str
    witness: tuple
    detail: str = ""

    def to_dict(self):
        return {"law": self.law, "witness": list(self.witness), "detail": self.detail}

    def __str__(self):
        s = f"{self.law} fails at {self.witness}"
        return f"{s}: {self.detail}" if self.detail else s


class AxiomError(ValueError):
    """Input data violates a structural law; carries the first finding."""

    def __init__(self, finding: Finding):
        super().__init__(str(finding))
        self.finding = finding


class BoundExceeded(RuntimeError):
    pass


class NotEnumerable(ValueError):
    """Raised when an enumeration is requested over the rationals."""
