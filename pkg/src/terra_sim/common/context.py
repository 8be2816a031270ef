from __future__ import annotations

import contextvars
import logging
from contextlib import contextmanager
from typing import Iterator

try:
    from opentelemetry import trace
except Exception:  # pragma: no cover
    trace = None  # type: ignore


scenario_ctx_var: contextvars.ContextVar[str] = contextvars.ContextVar("scenario", default="-")
seed_ctx_var: contextvars.ContextVar[str] = contextvars.ContextVar("seed", default="-")


@contextmanager
def run_context(scenario: str, seed: int | None) -> Iterator[None]:
    """Bind scenario name and seed for every log record emitted inside the block."""
    scenario_token = scenario_ctx_var.set(scenario or "-")
    seed_token = seed_ctx_var.set("-" if seed is None else str(seed))
    try:
        yield
    finally:
        seed_ctx_var.reset(seed_token)
        scenario_ctx_var.reset(scenario_token)


class RunContextLogFilter(logging.Filter):
    def filter(self, record: logging.LogRecord) -> bool:  # pragma: no cover - pure logging
        try:
            record.scenario = scenario_ctx_var.get()
        except Exception:
            record.scenario = "-"

        try:
            record.seed = seed_ctx_var.get()
        except Exception:
            record.seed = "-"

        if trace is not None:
            try:
                span = trace.get_current_span()
                span_ctx = span.get_span_context() if span else None
                if span_ctx and span_ctx.trace_id:
                    record.trace_id = f"{span_ctx.trace_id:032x}"
                    record.span_id = f"{span_ctx.span_id:016x}"
                else:
                    record.trace_id = record.span_id = "-"
            except Exception:
                record.trace_id = record.span_id = "-"
        else:
            record.trace_id = record.span_id = "-"
        return True
