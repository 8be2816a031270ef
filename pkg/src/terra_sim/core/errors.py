from __future__ import annotations

from dataclasses import dataclass, fields

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2


@dataclass(slots=True)
class TerraError(Exception):
    detail: str
    exit_code: int = EXIT_RUNTIME

    def __str__(self) -> str:  # pragma: no cover
        return self.detail

    def __reduce__(self):
        # batch runs raise inside worker processes
        return (self.__class__, tuple(getattr(self, f.name) for f in fields(self)))


@dataclass(slots=True)
class ScenarioError(TerraError):
    exit_code: int = EXIT_USAGE


@dataclass(slots=True)
class InvariantViolation(TerraError):
    exit_code: int = EXIT_RUNTIME
