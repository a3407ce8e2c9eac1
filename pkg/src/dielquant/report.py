"""Render result rows as an aligned table, CSV or JSON.

Rows are lists of (column, value) pairs so column order is fixed by the caller.
Floats are printed with 12 significant digits.
"""
from __future__ import annotations

import csv
import io
import json

FORMATS = ("table", "csv", "json")


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "PASS" if value else "FAIL"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _json_value(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, float):
        return float(f"{value:.12g}")
    return value


def render(rows, fmt: str = "table", command: str = "", parameters: dict | None = None) -> str:
    if fmt not in FORMATS:
        raise ValueError(f"unknown output format {fmt!r}")
    columns = [name for name, _ in rows[0]] if rows else []
    if fmt == "json":
        doc = {
            "command": command,
            "parameters": {k: _json_value(v) for k, v in (parameters or {}).items()},
            "rows": [{k: _json_value(v) for k, v in row} for row in rows],
        }
        return json.dumps(doc, indent=2) + "\n"
    cells = [[_fmt(v) for _, v in row] for row in rows]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(cells)
        return buf.getvalue()
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip(),
             "  ".join("-" * w for w in widths)]
    lines += ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines) + "\n"
