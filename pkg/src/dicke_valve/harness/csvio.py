"""CSV emission and parsing of sweep results."""

from __future__ import annotations

import csv
import datetime
import io
import math
import sys
from pathlib import Path

from .. import __version__
from .config import config_hash
from .sweep import SweepResult

TOOL_NAME = "dicke-valve"


def format_value(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return "%.17g" % value
    if value is None:
        return ""
    return str(value)


def render_csv(result: SweepResult, timestamp: bool = True) -> str:
    """CSV text with ``#`` provenance comments, a header and one line per row."""
    buf = io.StringIO()
    if result.config is not None:
        buf.write(f"# config_sha256: {config_hash(result.config)}\n")
    buf.write(f"# tool: {TOOL_NAME} {__version__}\n")
    if timestamp:
        now = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
        buf.write(f"# generated: {now}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(result.columns)
    for row in result.rows:
        writer.writerow([format_value(row.get(c, math.nan if c != "error" else "")) for c in result.columns])
    return buf.getvalue()


def emit_csv(result: SweepResult, path, timestamp: bool = True) -> None:
    """Write ``result`` as UTF-8 CSV to ``path`` (``"-"`` for stdout)."""
    text = render_csv(result, timestamp)
    if str(path) == "-":
        sys.stdout.write(text)
        return
    path = Path(path)
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write CSV to {path}: {exc.strerror}") from exc


def _parse_cell(text: str):
    if text == "":
        return ""
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def read_csv(path) -> tuple[list, list]:
    """Parse an emitted CSV back into ``(columns, rows)``, skipping comments."""
    with open(path, encoding="utf-8", newline="") as fh:
        lines = [line for line in fh if not line.startswith("#")]
    reader = csv.reader(lines)
    header = next(reader)
    rows = [dict(zip(header, (_parse_cell(c) for c in rec))) for rec in reader]
    return header, rows
