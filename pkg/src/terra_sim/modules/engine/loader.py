"""Scenario files: YAML documents validated into ScenarioConfig."""

from __future__ import annotations

import logging
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

import yaml
from pydantic import BaseModel, ValidationError

from ...core.config import get_settings
from ...core.errors import ScenarioError
from .schemas import ScenarioConfig

logger = logging.getLogger(__name__)

SCENARIO_PACKAGE = "terra_sim.scenarios"


def bundled_scenarios() -> list[str]:
    return sorted(
        entry.name.removesuffix(".yaml")
        for entry in resources.files(SCENARIO_PACKAGE).iterdir()
        if entry.name.endswith(".yaml")
    )


def load_scenario(source: str | Path | None = None, overrides: Sequence[str] = ()) -> ScenarioConfig:
    """Load a scenario file or bundled scenario name, then apply key=value overrides."""
    name, text = _read_source(source)
    try:
        data = yaml.safe_load(text) if text.strip() else {}
    except yaml.YAMLError as exc:
        raise ScenarioError(f"Scenario '{name}' is not valid YAML: {exc}") from exc
    if not isinstance(data, dict):
        raise ScenarioError(f"Scenario '{name}' must be a mapping of configuration keys")
    data.setdefault("name", name)
    for override in overrides:
        apply_override(data, override)
    return validate_scenario(data)


def validate_scenario(data: dict[str, Any]) -> ScenarioConfig:
    try:
        return ScenarioConfig.model_validate(data)
    except ValidationError as exc:
        error = exc.errors()[0]
        key = ".".join(str(part) for part in error["loc"]) or "<root>"
        if error["type"] == "extra_forbidden":
            raise ScenarioError(f"Unknown configuration key '{key}'") from None
        raise ScenarioError(f"Invalid value for '{key}': {error['msg']}") from None


def apply_override(data: dict[str, Any], override: str) -> None:
    """Set one dotted key from a ``key=value`` string; the value is parsed as YAML."""
    key, sep, raw = override.partition("=")
    key = key.strip()
    if not sep or not key:
        raise ScenarioError(f"Override '{override}' must have the form key=value")
    parts = key.split(".")
    _check_key(parts, key)
    try:
        value = yaml.safe_load(raw) if raw.strip() else None
    except yaml.YAMLError as exc:
        raise ScenarioError(f"Override '{override}' has an unparsable value") from exc

    target = data
    for part in parts[:-1]:
        node = target.get(part)
        if not isinstance(node, dict):
            node = {}
            target[part] = node
        target = node
    target[parts[-1]] = value


def _check_key(parts: list[str], key: str) -> None:
    model: type[BaseModel] | None = ScenarioConfig
    for part in parts:
        if model is None or part not in model.model_fields:
            raise ScenarioError(f"Unknown configuration key '{key}'")
        annotation = model.model_fields[part].annotation
        model = annotation if isinstance(annotation, type) and issubclass(annotation, BaseModel) else None


def _read_source(source: str | Path | None) -> tuple[str, str]:
    if source is None:
        source = get_settings().DEFAULT_SCENARIO
    path = Path(source)
    if path.is_file():
        return path.stem, path.read_text(encoding="utf-8")
    name = str(source)
    resource = resources.files(SCENARIO_PACKAGE) / f"{name}.yaml"
    if resource.is_file():
        logger.debug("Loading bundled scenario %s", name)
        return name, resource.read_text(encoding="utf-8")
    raise ScenarioError(f"Scenario '{name}' not found (bundled: {', '.join(bundled_scenarios())})")
