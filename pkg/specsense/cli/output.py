import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, Mapping, Optional, Sequence

from specsense.cli.constants import FLOAT_FORMAT
from specsense.cli.models import OutputFormat
from specsense.core.constants import TXT_ENCODING
from specsense.core.exceptions import OutputError

logger = logging.getLogger(__name__)

Row = Mapping[str, Any]


def _csv_cell(value: Any) -> str:
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return format(value, FLOAT_FORMAT)
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, float) and not isinstance(value, bool):
        return float(format(value, FLOAT_FORMAT))
    return value


def render(rows: Sequence[Row], fmt: OutputFormat, columns: Sequence[str]) -> str:
    """
    Serializes homogeneous rows; floats keep 12 significant digits.
    :param rows: Result rows, each holding exactly the given columns.
    :param fmt: CSV (header always present) or JSON (array of objects).
    :param columns: Column order.
    :return: Document text.
    """
    for row in rows:
        if list(row.keys()) != list(columns):
            raise ValueError(f"Row keys {list(row.keys())} do not match the columns {list(columns)}.")
    if fmt is OutputFormat.JSON:
        payload = [{column: _json_value(row[column]) for column in columns} for row in rows]
        return json.dumps(payload, indent=2, allow_nan=False) + '\n'
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(columns)
    writer.writerows([_csv_cell(row[column]) for column in columns] for row in rows)
    return buffer.getvalue()


def write_output(rows: Sequence[Row], fmt: OutputFormat, path: Optional[Path], columns: Sequence[str]) -> None:
    """
    Writes result rows to a file, or to standard output if no path is given.
    :param rows: Result rows.
    :param fmt: Output format.
    :param path: Target file.
    :param columns: Column order, needed for the header of an empty CSV.
    :return: None
    """
    text = render(rows, fmt, columns)
    if path is None:
        sys.stdout.write(text)
        return
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding=TXT_ENCODING)
    except OSError as error:
        raise OutputError(f"Cannot write results to {path}: {error}") from error
    logger.info(f'Wrote {len(rows)} rows to {path}.')
