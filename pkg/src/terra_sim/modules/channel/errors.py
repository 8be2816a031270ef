from __future__ import annotations

from dataclasses import dataclass

from ...core.errors import EXIT_RUNTIME, EXIT_USAGE, TerraError


@dataclass(slots=True)
class ChannelError(TerraError):
    exit_code: int = EXIT_RUNTIME


@dataclass(slots=True)
class CalibrationError(TerraError):
    exit_code: int = EXIT_USAGE
