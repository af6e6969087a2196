"""
Result files. Every file carries the tool version, the full run
configuration (minus the output path), summary values and a description of
each column. Numbers are written with 15 significant digits in both formats.

Files are written to a temporary sibling and renamed into place, so a failed
run leaves no partial output.
"""

import csv
import io
import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

from . import TOOL_NAME, __version__
from .run_config import CONFIG_PREFIX, FORMATS
from utils.helpers import ConfigurationError


def format_number(value):
    """Text form used in CSV cells and headers."""
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    value = float(value)
    if math.isnan(value):
        return 'nan'
    if math.isinf(value):
        return 'inf' if value > 0 else '-inf'
    return f"{value:.15g}"


def json_value(value):
    """JSON form; non-finite floats become null."""
    if isinstance(value, str) or value is None:
        return value
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    value = float(value)
    if not math.isfinite(value):
        return None
    return float(format(value, '.15g'))


@dataclass
class ResultTable:
    command: str
    columns: List[Tuple[str, str]]
    rows: List[list] = field(default_factory=list)
    config: Dict[str, object] = field(default_factory=dict)
    summary: Dict[str, object] = field(default_factory=dict)

    @property
    def column_names(self):
        return [name for name, _ in self.columns]

    def add_row(self, *values):
        if len(values) != len(self.columns):
            raise ConfigurationError(f"row has {len(values)} values for {len(self.columns)} columns")
        self.rows.append(list(values))


def render_csv(table):
    buffer = io.StringIO()
    buffer.write(f"# {TOOL_NAME} {__version__} {table.command}\n")
    for key, value in table.config.items():
        buffer.write(f"{CONFIG_PREFIX} {key} = {format_number(value)}\n")
    for key, value in table.summary.items():
        buffer.write(f"# summary: {key} = {format_number(value)}\n")
    for name, description in table.columns:
        buffer.write(f"# column: {name} - {description}\n")
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(table.column_names)
    for row in table.rows:
        writer.writerow([format_number(value) for value in row])
    return buffer.getvalue()


def render_json(table):
    document = {
        'tool': TOOL_NAME,
        'tool_version': __version__,
        'command': table.command,
        'config': {key: json_value(value) for key, value in table.config.items()},
        'summary': {key: json_value(value) for key, value in table.summary.items()},
        'columns': [{'name': name, 'description': description} for name, description in table.columns],
        'rows': [[json_value(value) for value in row] for row in table.rows],
    }
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


class ResultWriter:
    def __init__(self, path, output_format='csv'):
        if output_format not in FORMATS:
            raise ConfigurationError(f"unknown output format {output_format!r}")
        self.path = path
        self.output_format = output_format

    def render(self, table):
        return render_csv(table) if self.output_format == 'csv' else render_json(table)

    def write(self, table):
        text = self.render(table)
        directory = os.path.dirname(os.path.abspath(self.path))
        os.makedirs(directory, exist_ok=True)
        handle, temporary = tempfile.mkstemp(prefix='.partial-', dir=directory)
        try:
            with os.fdopen(handle, 'w', encoding='utf-8', newline='') as f:
                f.write(text)
            os.chmod(temporary, 0o644)
            os.replace(temporary, self.path)
        except BaseException:
            if os.path.exists(temporary):
                os.remove(temporary)
            raise
        return self.path
