"""
Report assembly and rendering.

A report is a plain dict checked against ``ReportSerializer`` and the published
schema in ``schema/report.schema.json``. JSON is the source
of truth; CSV and text are views of the ``rows`` table (when a command has one)
or of the flat outputs.
"""
import csv
import io
import json
from functools import lru_cache
from pathlib import Path

import jsonschema
from rest_framework.renderers import JSONRenderer

from . import __version__
from .serializers import ReportSerializer

SCHEMA_PATH = Path(__file__).resolve().parent / 'schema' / 'report.schema.json'


def build_report(command: str, parameters: dict, inputs: dict, outputs: dict,
                 passed: bool, elapsed: float | None = None) -> dict:
    report = {
        'command': command,
        'version': __version__,
        'parameters': {key: parameters.get(key) for key in ('n', 'r', 'p')},
        'input': inputs,
        'outputs': outputs,
        'passed': bool(passed),
    }
    if elapsed is not None:
        report['timing'] = {'elapsed_ms': round(elapsed * 1000, 3)}
    ReportSerializer(data=report).is_valid(raise_exception=True)
    jsonschema.validate(instance=report, schema=load_schema())
    return report


@lru_cache(maxsize=1)
def load_schema() -> dict:
    return json.loads(SCHEMA_PATH.read_text())


def _table(report: dict) -> tuple[list[str], list[list]]:
    rows = report['outputs'].get('rows')
    if rows:
        header = list(rows[0])
        return header, [[row.get(column) for column in header] for row in rows]
    flat = [
        [key, json.dumps(value) if isinstance(value, (dict, list)) else value]
        for key, value in report['outputs'].items()
    ]
    return ['output', 'value'], flat


def render_json(report: dict) -> str:
    return JSONRenderer().render(report, renderer_context={'indent': 2}).decode() + '\n'


def render_csv(report: dict) -> str:
    header, rows = _table(report)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def render_text(report: dict) -> str:
    header, rows = _table(report)
    cells = [[str(cell) for cell in header]] + [[str(cell) for cell in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    lines = [f'{report["command"]} ({"passed" if report["passed"] else "FAILED"})']
    for k, row in enumerate(cells):
        lines.append('  '.join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip())
        if k == 0:
            lines.append('  '.join('-' * width for width in widths))
    return '\n'.join(lines) + '\n'


RENDERERS = {
    'json': render_json,
    'csv': render_csv,
    'text': render_text,
}


def render(report: dict, fmt: str = 'json') -> str:
    return RENDERERS[fmt](report)
