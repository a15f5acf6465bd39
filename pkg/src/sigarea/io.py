"""CSV ingestion and report emission.

CSV is the one tabular format (inputs, generated panels, trace outputs);
JSON carries the structured run report.  Every float is serialized with 17
significant digits, which round-trips IEEE double exactly, and every file
is written atomically (temp file + rename in the target directory) so a
crashed run never leaves a half-written report behind.

The JSON emitter is a small recursive writer rather than json.dump because
the float formatting must be byte-stable across runs and platforms; the
stdlib encoder does not let the '%.17g' policy be applied per value.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import math
import os
import tempfile
from typing import Iterator, Mapping

import numpy as np

from .errors import IoError, NonNumericCell, ParseError, RaggedRows
from .pipeline import DiscoveryResult, PairReport
from .series import Panel, Series, interpolate_uniform

FLOAT_FORMAT = "%.17g"


def format_float(value: float) -> str:
    """17-significant-digit decimal form; exact float64 round-trip."""
    if not math.isfinite(value):
        raise ValueError(f"cannot serialize non-finite value {value!r}")
    return FLOAT_FORMAT % value


def _to_json(value) -> str:
    if value is None:
        return "null"
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_to_json(v) for v in value) + "]"
    if isinstance(value, Mapping):
        items = (f"{json.dumps(str(k))}: {_to_json(v)}" for k, v in value.items())
        return "{" + ", ".join(items) + "}"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
                handle.write(text)
            os.replace(tmp, path)
        except BaseException:
            os.unlink(tmp)
            raise
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def read_csv(
    path: str, interpolation_step: float | None = None
) -> tuple[Panel, np.ndarray | None]:
    """Load a panel from a headed CSV file.

    The header names the channels; a first column named exactly "time" is
    treated as timestamps rather than a channel.  With a time column and an
    interpolation step, every channel is linearly resampled onto the
    uniform grid and the returned time array is that grid.
    """
    with open(path, encoding="utf-8-sig", newline="") as handle:
        rows = list(csv.reader(handle))
    rows = [row for row in rows if row]
    if not rows:
        raise ParseError(f"{path}: empty file")
    header = [cell.strip() for cell in rows[0]]
    if len(set(header)) != len(header):
        raise ParseError(f"{path}: duplicate column names in header")
    width = len(header)
    body = np.empty((len(rows) - 1, width))
    for r, row in enumerate(rows[1:], start=2):
        if len(row) != width:
            raise RaggedRows(
                f"{path}: line {r} has {len(row)} cells, header has {width}"
            )
        for c, cell in enumerate(row):
            try:
                body[r - 2, c] = float(cell)
            except ValueError:
                raise NonNumericCell(
                    f"{path}: line {r}, column {header[c]!r}: "
                    f"{cell.strip()!r} is not a number"
                ) from None
    if body.shape[0] == 0:
        raise ParseError(f"{path}: no data rows")

    has_time = header[0] == "time"
    times = body[:, 0] if has_time else None
    names = header[1:] if has_time else header
    columns = body[:, 1:] if has_time else body
    if not names:
        raise ParseError(f"{path}: no data columns besides time")
    if interpolation_step is not None:
        if times is None:
            raise ParseError(
                f"{path}: interpolation requested but there is no time column"
            )
        series = tuple(
            interpolate_uniform(times, columns[:, k], interpolation_step, name)
            for k, name in enumerate(names)
        )
        grid = times[0] + interpolation_step * np.arange(len(series[0]))
        return Panel(series), grid
    series = tuple(Series(name, columns[:, k]) for k, name in enumerate(names))
    return Panel(series), times


def write_csv(panel: Panel, path: str, times: np.ndarray | None = None) -> None:
    """Write a panel as a headed CSV, optionally with a leading time column."""
    if times is not None and len(times) != panel.length:
        raise ValueError("time column length does not match the panel")
    lines = []
    header = (["time"] if times is not None else []) + list(panel.names)
    lines.append(",".join(header))
    columns = [s.values for s in panel.series]
    if times is not None:
        columns = [np.asarray(times, dtype=np.float64)] + columns
    for r in range(panel.length):
        lines.append(",".join(format_float(col[r]) for col in columns))
    _atomic_write(path, "\n".join(lines) + "\n")


_PAIR_COLUMNS = (
    "i",
    "j",
    "ssad",
    "abs_ssad",
    "ts_savr",
    "direction",
    "edge",
    "granger_min_p",
    "ccm_max_r2",
    "error",
)


def _pair_cells(report: PairReport) -> Iterator[str]:
    yield report.pair[0]
    yield report.pair[1]
    for value in (report.ssad, report.abs_ssad, report.ts_savr):
        yield "" if value is None else format_float(value)
    yield report.direction or ""
    yield "true" if report.edge else "false"
    for value in (report.granger_min_p, report.ccm_max_r2):
        yield "" if value is None else format_float(value)
    yield report.error or ""


def _pair_record(report: PairReport) -> dict:
    record: dict = {
        "i": report.pair[0],
        "j": report.pair[1],
        "ssad": report.ssad,
        "abs_ssad": report.abs_ssad,
        "ts_savr": report.ts_savr,
        "direction": report.direction,
        "edge": report.edge,
    }
    if report.granger_min_p is not None:
        record["granger_min_p"] = report.granger_min_p
    if report.ccm_max_r2 is not None:
        record["ccm_max_r2"] = report.ccm_max_r2
    if report.error is not None:
        record["error"] = report.error
    return record


def _safe_name(name: str) -> str:
    return "".join(ch if ch.isalnum() or ch in "-_" else "_" for ch in name)


def write_report(result: DiscoveryResult, out_dir: str) -> list[str]:
    """Serialize a discovery run into ``out_dir``.

    Emits report.json (config, per-ordered-pair scores, graph edges),
    pairs.csv (the same scores as a flat table), and one
    trace_<i>_<j>.csv per successful pair with columns window_index
    (1-based, the t of the band multiplier), actual_area, mu, lower,
    upper.  Returns the written paths.
    """
    try:
        os.makedirs(out_dir, exist_ok=True)
    except OSError as exc:
        raise IoError(f"cannot create {out_dir}: {exc}") from exc

    written: list[str] = []
    document = {
        "config": dataclasses.asdict(result.config),
        "nodes": list(result.nodes),
        "pairs": [_pair_record(r) for r in result.reports],
        "graph": {
            "nodes": list(result.graph.nodes),
            "edges": [
                {
                    "source": e.source,
                    "target": e.target,
                    "label": e.label,
                    "confidence": e.confidence,
                }
                for e in result.graph.edges
            ],
        },
    }
    report_path = os.path.join(out_dir, "report.json")
    _atomic_write(report_path, _to_json(document) + "\n")
    written.append(report_path)

    pairs_lines = [",".join(_PAIR_COLUMNS)]
    for report in result.reports:
        pairs_lines.append(",".join(_csv_quote(c) for c in _pair_cells(report)))
    pairs_path = os.path.join(out_dir, "pairs.csv")
    _atomic_write(pairs_path, "\n".join(pairs_lines) + "\n")
    written.append(pairs_path)

    for (i, j), trace in result.traces.items():
        rows = ["window_index,actual_area,mu,lower,upper"]
        for w in range(trace.actual.size):
            rows.append(
                ",".join(
                    [str(w + 1)]
                    + [
                        format_float(arr[w])
                        for arr in (trace.actual, trace.mu, trace.lower, trace.upper)
                    ]
                )
            )
        trace_path = os.path.join(
            out_dir, f"trace_{_safe_name(i)}_{_safe_name(j)}.csv"
        )
        _atomic_write(trace_path, "\n".join(rows) + "\n")
        written.append(trace_path)
    return written


def _csv_quote(cell: str) -> str:
    if any(ch in cell for ch in ',"\n'):
        return '"' + cell.replace('"', '""') + '"'
    return cell
