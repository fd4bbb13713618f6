"""Shared exception types."""

from __future__ import annotations

__all__ = ["NumericalBreakdown"]


class NumericalBreakdown(RuntimeError):
    """A computation that is guaranteed to succeed in exact arithmetic failed
    numerically (lost pivot, empty bracket, violated inequality chain).

    Carries a ``diagnostics`` dict with whatever condition information the
    failing routine could collect.
    """

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})

    def __str__(self) -> str:  # keep diagnostics visible in tracebacks
        base = super().__str__()
        if self.diagnostics:
            return f"{base} (diagnostics: {self.diagnostics})"
        return base
