"""JSON and CSV writers with fixed float formatting and a provenance header."""

import csv
import io
import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from fracspde import __version__
from fracspde.settings import FLOAT_DIGITS

logger = logging.getLogger(__name__)


def format_float(value: float, digits: int = FLOAT_DIGITS) -> str:
    """Text of value with `digits` significant digits; nan and inf spelled out."""
    return f"{value:.{digits}g}"


def normalize(obj: Any, digits: int = FLOAT_DIGITS) -> Any:
    """
    Recursively convert a result into JSON-ready builtins.

    numpy scalars and arrays become Python numbers and lists, enums become
    their values, objects with `to_dict` are expanded, and every float is
    rounded to `digits` significant digits. Non-finite floats become None.
    """
    if hasattr(obj, "to_dict"):
        return normalize(obj.to_dict(), digits)
    if isinstance(obj, dict):
        return {str(k): normalize(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [normalize(v, digits) for v in obj]
    if isinstance(obj, np.ndarray):
        return normalize(obj.tolist(), digits)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if not math.isfinite(value):
            return None
        return float(format_float(value, digits))
    if hasattr(obj, "value") and isinstance(obj.value, str):
        return obj.value
    return obj


def provenance(command: str, params: Optional[Dict[str, Any]] = None, **extra: Any) -> Dict[str, Any]:
    """
    Header identifying what produced a document.

    No timestamps or host data are recorded, so identical runs give
    identical bytes.
    """
    header: Dict[str, Any] = {"tool": "fracspde", "version": __version__, "command": command, "params": params or {}}
    header.update({k: v for k, v in extra.items() if v is not None})
    return header


class CommandOutput:
    """A JSON document plus its tabular CSV view."""

    def __init__(self, command: str, document: Dict[str, Any], rows: List[Dict[str, Any]], columns: Sequence[str]):
        self.command = command
        self.document = document
        self.rows = rows
        self.columns = list(columns)

    def render(self, fmt: str, digits: int = FLOAT_DIGITS) -> str:
        if fmt == "json":
            return render_json(self.document, digits)
        if fmt == "csv":
            return render_csv(self.rows, self.columns, digits)
        raise ValueError(f"unknown output format '{fmt}'")


def flatten(document: Dict[str, Any], prefix: str = "") -> List[Dict[str, Any]]:
    """(key, value) rows for the scalar leaves of a nested document, with dotted keys."""
    rows: List[Dict[str, Any]] = []
    for key, value in document.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            rows.extend(flatten(value, f"{name}."))
        elif isinstance(value, (list, tuple)):
            for i, item in enumerate(value):
                if isinstance(item, dict):
                    rows.extend(flatten(item, f"{name}.{i}."))
                else:
                    rows.append({"key": f"{name}.{i}", "value": item})
        else:
            rows.append({"key": name, "value": value})
    return rows


def render_json(document: Dict[str, Any], digits: int = FLOAT_DIGITS) -> str:
    return json.dumps(normalize(document, digits), indent=2, ensure_ascii=False) + "\n"


def _cell(value: Any, digits: int) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format_float(float(value), digits)
    return str(normalize(value, digits))


def render_csv(rows: Sequence[Dict[str, Any]], columns: Sequence[str], digits: int = FLOAT_DIGITS) -> str:
    """CSV text with a header row; floats use %.{digits}g."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(column), digits) for column in columns])
    return buffer.getvalue()


def write_output(output: CommandOutput, fmt: str, output_file: Path, digits: int = FLOAT_DIGITS) -> Path:
    """
    Write a command output to a file, creating parent directories.

    Args:
        output: Document and rows to write
        fmt: json or csv
        output_file: Target path
        digits: Significant digits for floats

    Returns:
        The path written
    """
    output_file.parent.mkdir(parents=True, exist_ok=True)
    with open(output_file, "w", encoding="utf-8", newline="") as f:
        f.write(output.render(fmt, digits))
    logger.info(f"Wrote {fmt} output of '{output.command}' to {output_file}")
    return output_file


def load_document(input_file: Path) -> Dict[str, Any]:
    """Read a JSON result document."""
    with open(input_file, "r", encoding="utf-8") as f:
        return json.load(f)
