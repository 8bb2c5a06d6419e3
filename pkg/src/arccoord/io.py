"""JSON and CSV helpers shared by the CLI."""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .ribbon import RibbonStructure
from .surface import MaximalCoordinates

CSV_SCHEMA_VERSION = 1


def load_json(path) -> dict:
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a JSON object")
    return data


def surface_from_json(data: dict) -> MaximalCoordinates:
    if "a_lengths" not in data:
        raise KeyError("a_lengths")
    return MaximalCoordinates(RibbonStructure.from_json(data), data["a_lengths"])


def surface_to_json(m: MaximalCoordinates) -> dict:
    out = m.ribbon.to_json()
    out["a_lengths"] = [float(x) for x in m.a]
    return out


def _plain(obj):
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, float) and not np.isfinite(obj):
        return None
    return obj


def dumps(obj) -> str:
    return json.dumps(_plain(obj), indent=2) + "\n"


def csv_table(table: str, columns, rows) -> str:
    buf = io.StringIO()
    buf.write(f"# arccoord-csv v{CSV_SCHEMA_VERSION} table={table}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return v


def read_csv_table(text: str):
    """Parse csv_table output back into (table name, header, rows)."""
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# arccoord-csv"):
        raise ValueError("missing arccoord-csv header")
    table = lines[0].split("table=", 1)[1].strip()
    rows = list(csv.reader(lines[1:]))
    return table, rows[0], rows[1:]


def json_files(path) -> list[Path]:
    path = Path(path)
    if path.is_dir():
        return sorted(path.glob("*.json"))
    return [path]
