"""Source positions and diagnostic records shared by the parser and the validator."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class SourceSpan:
    """1-based position of a token or construct in an annotation document."""

    line: int
    column: int
    length: int = 1

    def __post_init__(self) -> None:
        if self.line < 1 or self.column < 1 or self.length < 1:
            raise ValueError("span line/column/length must be >= 1")

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


@dataclass(frozen=True)
class Diagnostic:
    """One finding from parsing or validation.

    ``rule`` is a stable identifier (for example ``parse/arity`` or
    ``R1_SlidingRequiresContact``); ``action_id`` is set when the finding
    concerns a specific action.
    """

    severity: Severity
    rule: str
    message: str
    span: SourceSpan | None = None
    action_id: str | None = None

    def __str__(self) -> str:
        return format_diagnostic(self)


def format_diagnostic(diag: Diagnostic) -> str:
    """Render ``SEVERITY rule action-id: message (line:col)``."""
    head = f"{diag.severity} {diag.rule}"
    if diag.action_id:
        head += f" {diag.action_id}"
    text = f"{head}: {diag.message}"
    if diag.span is not None:
        text += f" ({diag.span})"
    return text


def has_errors(diags) -> bool:
    return any(d.severity is Severity.ERROR for d in diags)
