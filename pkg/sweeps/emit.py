"""
emit.py - CSV and JSON writers for sweep results

Both writers render the whole document in memory first and then hand it to
the sink in one piece. File sinks are written to a temporary file in the
target directory and renamed into place, so an aborted run never leaves a
partial file behind. Output contains no timestamps: the same result always
produces the same bytes.
"""

import json
import logging
import math
import os
import tempfile
from typing import IO, Any, Dict, List, Optional, Union

from cavity.errors import SinkWriteFailure

from .sweep import SweepResult

logger = logging.getLogger(__name__)

Sink = Union[str, os.PathLike, IO[str]]

# 17 significant digits round-trip every double exactly.
FLOAT_FORMAT = '.16e'


def format_number(value: Optional[float]) -> str:
    """Scientific notation with 17 significant digits; a missing value is nan."""
    return 'nan' if value is None else format(float(value), FLOAT_FORMAT)


def render_csv(result: SweepResult) -> str:
    """
    CSV text: header then one LF-terminated line per row.

    Failed rows keep their place with nan values; their error codes are
    carried by the JSON rows and the log only, so every line has the same
    fields and none ends in a separator.
    """
    value_columns = result.spec.columns
    lines = [','.join(['swept_value'] + value_columns)]
    for row in result.rows:
        fields = [format_number(row.value)]
        fields.extend(format_number(row.values.get(name)) for name in value_columns)
        lines.append(','.join(fields))
    return '\n'.join(lines) + '\n'


def _json_number(value: Optional[float]) -> Optional[float]:
    if value is None or not math.isfinite(value):
        return None
    return float(value)


def render_json(result: SweepResult) -> str:
    """JSON text with metadata, column names and one object per row."""
    value_columns = result.spec.columns
    rows: List[Dict[str, Any]] = []
    for row in result.rows:
        entry: Dict[str, Any] = {'swept_value': _json_number(row.value)}
        for name in value_columns:
            entry[name] = _json_number(row.values.get(name))
        entry['quadrature_error'] = _json_number(row.quadrature_error)
        if row.failed:
            entry['error'] = row.error
            entry['message'] = row.message
        rows.append(entry)
    document = {
        'metadata': result.metadata,
        'columns': result.columns,
        'rows': rows,
    }
    return json.dumps(document, indent=2, allow_nan=False) + '\n'


def write_text(text: str, destination: Sink) -> int:
    """
    Write text to a path (atomically) or to an open text stream.

    Returns:
        int: Number of UTF-8 bytes written

    Raises:
        SinkWriteFailure: If the sink cannot be written
    """
    data = text.encode('utf-8')
    if hasattr(destination, 'write'):
        try:
            destination.write(text)
            destination.flush()
        except (OSError, ValueError) as exc:
            raise SinkWriteFailure(f"Cannot write to output stream: {exc}") from exc
        return len(data)

    path = os.fspath(destination)
    directory = os.path.dirname(os.path.abspath(path))
    tmp_path = None
    try:
        fd, tmp_path = tempfile.mkstemp(prefix='.partial-', dir=directory)
        with os.fdopen(fd, 'wb') as handle:
            handle.write(data)
        os.replace(tmp_path, path)
    except OSError as exc:
        if tmp_path is not None and os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise SinkWriteFailure(f"Cannot write {path}: {exc}", path=path) from exc
    logger.info("Wrote %d bytes to %s", len(data), path)
    return len(data)


def emit_csv(result: SweepResult, destination: Sink) -> int:
    """
    Write a sweep result as CSV.

    Args:
        result: Sweep to write
        destination: File path or writable text stream

    Returns:
        int: Byte count of the UTF-8 output
    """
    return write_text(render_csv(result), destination)


def emit_json(result: SweepResult, destination: Sink) -> int:
    return write_text(render_json(result), destination)
