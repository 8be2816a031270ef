from __future__ import annotations

from dataclasses import dataclass

from ...core.errors import EXIT_USAGE, TerraError


@dataclass(slots=True)
class TraceParseError(TerraError):
    line: int = 0
    exit_code: int = EXIT_USAGE

    def __str__(self) -> str:  # pragma: no cover
        return f"line {self.line}: {self.detail}" if self.line else self.detail
