"""Deterministic run reports: JSON/CSV rendering, schema, scan checkpoints.

Key order and column order are fixed, findings are sorted by their natural
keys, and the seed is echoed, so two runs with equal parameters produce
byte-identical findings.  Every JSON report is validated against
REPORT_SCHEMA before it is written.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import jsonschema

from . import __version__

SCHEMA_ID = "blockarith-report/1"
CHECKPOINT_SCHEMA_ID = "blockarith-checkpoint/1"

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": [
        "schema",
        "command",
        "parameters",
        "version",
        "seed",
        "verdict",
        "findings",
        "wall_time_s",
    ],
    "properties": {
        "schema": {"const": SCHEMA_ID},
        "command": {"type": "string", "minLength": 1},
        "parameters": {"type": "object"},
        "version": {"type": "string"},
        "seed": {"type": "integer"},
        "verdict": {"type": "string", "minLength": 1},
        "findings": {"type": ["object", "array"]},
        "wall_time_s": {"type": "number"},
    },
    "additionalProperties": False,
}

# column orders for the CSV sinks (scan-type commands only)
CSV_COLUMNS = {
    "scan": ("inequality", "k", "n", "lhs", "rhs_num", "rhs_den", "domain_ok"),
    "ew": ("k", "n1", "n2", "witnesses"),
    "abc-enumerate": ("a", "b", "c", "radical", "omega_abc", "quality", "degenerate"),
}


def build_report(
    command: str,
    parameters: dict,
    seed: int,
    verdict: str,
    findings,
    wall_time_s: float,
) -> dict:
    """Assemble a report dict in the documented key order and validate it."""
    report = {
        "schema": SCHEMA_ID,
        "command": command,
        "parameters": parameters,
        "version": __version__,
        "seed": seed,
        "verdict": verdict,
        "findings": findings,
        "wall_time_s": round(wall_time_s, 6),
    }
    jsonschema.validate(report, REPORT_SCHEMA)
    return report


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def render_csv(command: str, rows: list[dict]) -> str:
    """Fixed-column CSV for a scan-type command's findings."""
    if command not in CSV_COLUMNS:
        raise ValueError(f"command {command!r} has no CSV format")
    columns = CSV_COLUMNS[command]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([row[c] for c in columns])
    return buf.getvalue()


def write_output(text: str, out: Path | None) -> None:
    if out is None:
        print(text, end="")
    else:
        Path(out).write_text(text)


# ---------------------------------------------------------------------------
# scan checkpoints


def save_checkpoint(path: Path, parameters: dict, completed_k: int, triples: list) -> None:
    payload = {
        "schema": CHECKPOINT_SCHEMA_ID,
        "parameters": parameters,
        "completed_k": completed_k,
        "triples": [list(t) for t in triples],
    }
    Path(path).write_text(json.dumps(payload))


def load_checkpoint(path: Path, parameters: dict) -> tuple[int, list[tuple[int, int, int]]] | None:
    """Return (completed_k, triples) when the checkpoint matches, else None."""
    path = Path(path)
    if not path.exists():
        return None
    try:
        payload = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError):
        return None
    if payload.get("schema") != CHECKPOINT_SCHEMA_ID or payload.get("parameters") != parameters:
        return None
    triples = [tuple(int(v) for v in t) for t in payload.get("triples", [])]
    return int(payload["completed_k"]), triples
