from __future__ import annotations

from dataclasses import dataclass

from ...core.errors import EXIT_USAGE, TerraError


@dataclass(slots=True)
class GeometryError(TerraError):
    exit_code: int = EXIT_USAGE
