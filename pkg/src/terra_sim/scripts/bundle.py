"""Output bundles: tick and event tables, CDFs, summary document and trace.

Files are written to a scratch directory beside the destination and moved in
only when everything has been written, so a failed run leaves no partial files.
"""

from __future__ import annotations

import json
import os
import shutil
import tempfile
from contextlib import contextmanager
from dataclasses import asdict
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Iterator

import pandas as pd

from .. import __version__
from ..modules.engine.batch import Comparison
from ..modules.engine.metrics import cdf
from ..modules.engine.models import RunResult
from ..modules.trace.service import export_trace

TICK_COLUMNS = [
    "time_ms",
    "state",
    "activity",
    "serving_beam_id",
    "serving_rss_dbm",
    "combined_rss_dbm",
    "los_rss_dbm",
    "ground_rss_dbm",
    "los_blocked",
    "ground_blocked",
    "data_pkt_ok",
    "ctrl_ok",
    "nominal_los_rss_dbm",
]


def write_run_bundle(result: RunResult, out_dir: Path, extra: dict[str, Any] | None = None) -> list[Path]:
    with _staging(out_dir) as staging:
        ticks_frame(result).to_csv(staging / "ticks.csv", index=False)
        events_frame(result).to_csv(staging / "events.csv", index=False)
        _cdf_frame(cdf(r.serving_rss_dbm for r in result.records), "serving_rss_dbm").to_csv(
            staging / "cdf_serving_rss.csv", index=False
        )
        _cdf_frame(cdf(result.summary.per_blockage_event_per), "event_per").to_csv(
            staging / "cdf_event_per.csv", index=False
        )
        if result.rss_matrix is not None:
            (staging / "trace.csv").write_text(
                export_trace(result.rss_matrix, result.scenario.tick_ms, result.records[0].time_ms if result.records else 0),
                encoding="utf-8",
            )
        _write_json(staging / "summary.json", summary_document(result, extra))
    return sorted(out_dir.iterdir())


def write_compare_bundle(comparison: Comparison, out_dir: Path, extra: dict[str, Any] | None = None) -> list[Path]:
    with _staging(out_dir) as staging:
        pd.DataFrame([asdict(e) for e in comparison.paired_events], columns=[
            "seed", "track_index", "occlusion_start_ms", "terra_per", "baseline_per", "baseline_outage_ms"
        ]).to_csv(staging / "paired_events.csv", index=False)
        scenario = comparison.terra[0].scenario if comparison.terra else None
        document = {
            "metadata": _metadata(extra),
            "config": scenario.model_dump(mode="json", exclude={"seed", "protocol"}) if scenario else None,
            "seeds": comparison.seeds,
            "aggregate": comparison.aggregate(),
            "violations": comparison.violations,
            "runs": [
                {
                    "seed": seed,
                    "terra": asdict(t_run.summary),
                    "baseline": asdict(b_run.summary),
                }
                for seed, t_run, b_run in zip(comparison.seeds, comparison.terra, comparison.baseline)
            ],
        }
        _write_json(staging / "compare.json", document)
    return sorted(out_dir.iterdir())


def ticks_frame(result: RunResult) -> pd.DataFrame:
    rows = []
    for record in result.records:
        row = asdict(record)
        row["activity"] = record.activity.value
        rows.append(row)
    frame = pd.DataFrame(rows, columns=TICK_COLUMNS)
    frame["serving_beam_id"] = frame["serving_beam_id"].astype("Int64")
    return frame


def events_frame(result: RunResult) -> pd.DataFrame:
    columns = [
        "track_index",
        "occlusion_start_ms",
        "occlusion_end_ms",
        "window_end_ms",
        "data_ticks",
        "data_errors",
        "per",
        "outage_ms",
        "longest_outage_ms",
    ]
    return pd.DataFrame([asdict(event) for event in result.events], columns=columns)


def summary_document(result: RunResult, extra: dict[str, Any] | None = None) -> dict[str, Any]:
    return {
        # timestamps live only in this block
        "metadata": _metadata(extra),
        "config": result.scenario.model_dump(mode="json"),
        "seed": result.scenario.seed,
        "summary": asdict(result.summary),
    }


def _metadata(extra: dict[str, Any] | None) -> dict[str, Any]:
    return {
        "generated_at": datetime.now(timezone.utc).isoformat(),
        "version": __version__,
        **(extra or {}),
    }


def _cdf_frame(points: list[tuple[float, float]], name: str) -> pd.DataFrame:
    return pd.DataFrame(points, columns=[name, "cumulative_fraction"])


def _write_json(path: Path, document: dict[str, Any]) -> None:
    path.write_text(json.dumps(document, indent=2, default=_json_default) + "\n", encoding="utf-8")


def _json_default(value: Any) -> Any:
    if hasattr(value, "item"):
        return value.item()
    if hasattr(value, "value"):
        return value.value
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


@contextmanager
def _staging(out_dir: Path) -> Iterator[Path]:
    out_dir = Path(out_dir)
    out_dir.parent.mkdir(parents=True, exist_ok=True)
    staging = Path(tempfile.mkdtemp(prefix=f".{out_dir.name}-", dir=out_dir.parent))
    try:
        yield staging
        out_dir.mkdir(exist_ok=True)
        for item in staging.iterdir():
            os.replace(item, out_dir / item.name)
    finally:
        shutil.rmtree(staging, ignore_errors=True)
