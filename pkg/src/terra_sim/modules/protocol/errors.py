from __future__ import annotations

from dataclasses import dataclass

from ...core.errors import EXIT_RUNTIME, TerraError


@dataclass(slots=True)
class ProtocolError(TerraError):
    exit_code: int = EXIT_RUNTIME
