"""
Writers for solution CSVs, study reports (CSV, JSON sidecar, Markdown, HTML), gnuplot
scripts and matrix dumps. Outputs carry no timestamps so identical runs give identical files.
"""

import csv
import io
import json
import math
import os
from typing import Dict, Iterable, List, Optional, Sequence, TextIO, Tuple

import markdown
import numpy as np
from jinja2 import Environment, StrictUndefined

from nli1d import templates
from nli1d.shared_libraries import constants
from nli1d.shared_libraries.error_middleware import with_graceful_degradation
from nli1d.shared_libraries.logging_config import get_logger
from nli1d.shared_libraries.types import StudyKind, StudyReport
from nli1d.discretization.assembly import dump_coordinates
from nli1d.discretization.banded import BandedSymmetricMatrix

logger = get_logger(__name__)

_ENV = Environment(undefined=StrictUndefined, keep_trailing_newline=True, autoescape=False)

_QUANTITY_LABELS = {
    StudyKind.DELTA: "L2 error vs local solution",
    StudyKind.H: "L2 error vs fine solution",
    StudyKind.JUMP_H: "jump",
    StudyKind.JUMP_DELTA: "jump",
    StudyKind.OPERATOR_LIMIT: "|L u - kappa Lap u|",
}

_TITLES = {
    StudyKind.DELTA: "Horizon convergence",
    StudyKind.H: "Mesh convergence",
    StudyKind.JUMP_H: "Interface jump under mesh refinement",
    StudyKind.JUMP_DELTA: "Interface jump under horizon refinement",
    StudyKind.OPERATOR_LIMIT: "Local limit of the nonlocal operator",
}


def format_float(value: Optional[float]) -> str:
    """6 significant digits; empty for a missing value."""
    if value is None:
        return ""
    return format(float(value), constants.CSV_FLOAT_FORMAT)


def format_length(value: Optional[float]) -> str:
    """'2^-k' for exact powers of two, 6 significant digits otherwise."""
    if value is None:
        return ""
    if value > 0:
        mantissa, exponent = math.frexp(value)
        if mantissa == 0.5:
            return f"2^{exponent - 1}"
    return format_float(value)


def _open_text(path: str):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    return open(path, "w", newline="", encoding="utf-8")


def write_csv(rows: Iterable[Sequence], header: Sequence[str], path: Optional[str] = None,
              stream: Optional[TextIO] = None) -> str:
    """Comma separated, LF line endings. Writes to path, else to stream; returns the text."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    text = buffer.getvalue()
    if path is not None:
        with _open_text(path) as file:
            file.write(text)
        logger.info(f"Wrote {path}")
    elif stream is not None:
        stream.write(text)
    return text


def solution_rows(x: np.ndarray, columns: Sequence[np.ndarray]) -> List[List[str]]:
    return [[format_float(xi)] + [format_float(col[i]) for col in columns] for i, xi in enumerate(x)]


def study_rows(report: StudyReport) -> List[List[str]]:
    return [
        [format_float(row.param1), format_float(row.param2), format_float(row.quantity), format_float(row.order)]
        for row in report.rows
    ]


def sidecar_path(csv_path: str, suffix: str) -> str:
    root, _ = os.path.splitext(csv_path)
    return root + suffix


def write_study_json(report: StudyReport, path: str) -> None:
    """Full-precision sidecar: floats are written in shortest round-trip form."""
    with _open_text(path) as file:
        json.dump(report.model_dump(mode="json"), file, indent=2)
        file.write("\n")
    logger.info(f"Wrote {path}")


def render_study_markdown(report: StudyReport) -> str:
    param_headers = ["delta1", "delta2"] if report.kind in (StudyKind.DELTA, StudyKind.JUMP_DELTA) else (
        ["delta"] if report.kind == StudyKind.OPERATOR_LIMIT else ["h"])
    rows, failures = [], []
    for row in report.rows:
        params = [format_length(row.param1)] + ([format_length(row.param2)] if len(param_headers) == 2 else [])
        rows.append({
            "params": params,
            "quantity": f"{row.quantity:.2e}" if row.quantity is not None else "failed",
            "order": f"{row.order:.2f}" if row.order is not None else "--",
        })
        if row.error:
            failures.append({"params": params, "message": row.error.get("error", "")})

    fixed = ", ".join(f"{key} = {format_length(value)}" for key, value in report.fixed.items())
    description = f"Kernel {report.kernel.value}; fixed {fixed}." if report.kernel else f"Fixed {fixed}."
    template = _ENV.from_string(templates.get_study_table_template_markdown())
    return template.render(
        title=_TITLES[report.kind],
        description=description,
        param_headers=param_headers,
        quantity_label=_QUANTITY_LABELS[report.kind],
        rows=rows,
        config=report.config,
        failures=failures,
    )


def write_study_markdown(report: StudyReport, path: str) -> str:
    text = render_study_markdown(report)
    with _open_text(path) as file:
        file.write(text)
    logger.info(f"Wrote {path}")
    return text


@with_graceful_degradation(fallback_value=None, fallback_message="HTML summary skipped")
def write_study_html(report: StudyReport, path: str) -> str:
    body = markdown.markdown(render_study_markdown(report), extensions=["tables"])
    html = f"<!DOCTYPE html>\n<html>\n<head><meta charset=\"utf-8\"><title>{_TITLES[report.kind]}</title></head>\n<body>\n{body}\n</body>\n</html>\n"
    with _open_text(path) as file:
        file.write(html)
    logger.info(f"Wrote {path}")
    return path


def write_study_report(report: StudyReport, csv_path: str, html: bool = False) -> Dict[str, str]:
    """CSV plus JSON and Markdown sidecars next to it (and HTML on request)."""
    written = {"csv": csv_path}
    write_csv(study_rows(report), constants.STUDY_CSV_HEADER, path=csv_path)
    written["json"] = sidecar_path(csv_path, ".json")
    write_study_json(report, written["json"])
    written["markdown"] = sidecar_path(csv_path, ".md")
    write_study_markdown(report, written["markdown"])
    if html:
        html_path = write_study_html(report, sidecar_path(csv_path, ".html"))
        if html_path:
            written["html"] = html_path
    return written


def render_plot_script(title: str, series: Sequence[Tuple[str, str, np.ndarray, np.ndarray, bool]],
                       xrange: Optional[Tuple[float, float]] = None) -> str:
    """series items: (datablock name, legend title, x, y, dashed)."""
    template = _ENV.from_string(templates.get_plot_script_template_gnuplot())
    return template.render(
        title=title,
        series=[
            {"name": name, "title": legend, "dashed": dashed,
             "points": [(format_float(xi), format_float(yi)) for xi, yi in zip(x, y)]}
            for name, legend, x, y, dashed in series
        ],
        xrange=[format_float(v) for v in xrange] if xrange else None,
    )


@with_graceful_degradation(fallback_value=None, fallback_message="Plot script skipped")
def write_plot_script(path: str, title: str, series, xrange=None) -> str:
    with _open_text(path) as file:
        file.write(render_plot_script(title, series, xrange))
    logger.info(f"Wrote {path}")
    return path


@with_graceful_degradation(fallback_value=None, fallback_message="Matrix dump skipped")
def write_matrix_dump(path: str, matrix: BandedSymmetricMatrix) -> str:
    with _open_text(path) as file:
        for line in dump_coordinates(matrix):
            file.write(line + "\n")
    logger.info(f"Wrote {path}")
    return path
