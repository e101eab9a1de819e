"""Tests for CSV, study report, plot script and matrix dump writers."""

import json

import numpy as np
import pytest

from nli1d.shared_libraries.types import KernelFamily, StudyKind, StudyReport, StudyRow
from nli1d.discretization.banded import BandedSymmetricMatrix
from nli1d.tools.report_writer import (
    format_float,
    format_length,
    render_plot_script,
    render_study_markdown,
    solution_rows,
    write_csv,
    write_matrix_dump,
    write_plot_script,
    write_study_report,
)


@pytest.fixture
def mesh_report():
    return StudyReport(
        kind=StudyKind.H,
        kernel=KernelFamily.K1,
        config={"h_fine": 2.0 ** -12},
        fixed={"delta1": 2.0 ** -5, "delta2": 2.0 ** -4, "h_fine": 2.0 ** -12},
        rows=[
            StudyRow(param1=2.0 ** -5, quantity=6.58e-5),
            StudyRow(param1=2.0 ** -6, quantity=1.63e-5, order=2.01),
            StudyRow(param1=2.0 ** -7, quantity=None, error={"success": False, "error": "Solve failed."}),
        ],
    )


def test_format_float():
    assert format_float(None) == ""
    assert format_float(0.1) == "0.1"
    assert format_float(1.0 / 3.0) == "0.333333"
    assert format_float(6.58e-5) == "6.58e-05"


@pytest.mark.parametrize("value, text", [(2.0 ** -5, "2^-5"), (1.0, "2^0"), (0.3, "0.3"), (None, "")])
def test_format_length(value, text):
    assert format_length(value) == text


def test_write_csv(tmp_path):
    path = tmp_path / "out" / "solution.csv"
    rows = solution_rows(np.array([0.0, 0.5]), [np.array([1.0, 2.0]), np.array([0.25, 0.125])])
    text = write_csv(rows, ("x", "u_nonlocal", "u_local_exact"), path=str(path))

    assert text == "x,u_nonlocal,u_local_exact\n0,1,0.25\n0.5,2,0.125\n"
    assert path.read_bytes() == text.encode()


def test_study_report_files(tmp_path, mesh_report):
    written = write_study_report(mesh_report, str(tmp_path / "study_h_k1.csv"))
    assert set(written) == {"csv", "json", "markdown"}

    lines = (tmp_path / "study_h_k1.csv").read_text().splitlines()
    assert lines[0] == "param1,param2,quantity,order"
    assert lines[1] == "0.03125,,6.58e-05,"
    assert lines[3] == "0.0078125,,,"

    restored = StudyReport.model_validate(json.loads((tmp_path / "study_h_k1.json").read_text()))
    assert restored.model_dump() == mesh_report.model_dump()

    table = (tmp_path / "study_h_k1.md").read_text()
    assert "| 2^-5 | 6.58e-05 | -- |" in table
    assert "| 2^-6 | 1.63e-05 | 2.01 |" in table
    assert "| 2^-7 | failed | -- |" in table
    assert "- 2^-7: Solve failed." in table


def test_markdown_for_horizon_study():
    report = StudyReport(
        kind=StudyKind.DELTA,
        kernel=KernelFamily.K2,
        fixed={"h": 2.0 ** -12},
        rows=[StudyRow(param1=2.0 ** -5, param2=2.0 ** -4, quantity=3.86e-4)],
    )
    table = render_study_markdown(report)
    assert table.startswith("# Horizon convergence")
    assert "| delta1 | delta2 | L2 error vs local solution | order |" in table
    assert "| 2^-5 | 2^-4 | 3.86e-04 | -- |" in table
    assert "Kernel k2; fixed h = 2^-12." in table


def test_html_summary(tmp_path, mesh_report):
    written = write_study_report(mesh_report, str(tmp_path / "study.csv"), html=True)
    html = (tmp_path / "study.html").read_text()
    assert written["html"] == str(tmp_path / "study.html")
    assert "<table>" in html and "Mesh convergence" in html


def test_plot_script(tmp_path):
    x = np.array([-0.5, 0.0, 0.5])
    series = [("u_k1", "nonlocal k1", x, x ** 2, False), ("u_local", "local", x, x, True)]
    script = render_plot_script("demo", series, xrange=(-0.25, 0.25))

    assert "$u_k1 << EOD\n-0.5 0.25\n0 0\n0.5 0.25\nEOD" in script
    assert "set xrange [-0.25:0.25]" in script
    assert 'dashtype 2 title "local"' in script

    path = tmp_path / "plot.gp"
    assert write_plot_script(str(path), "demo", series) == str(path)
    assert "set xrange" not in path.read_text()


def test_matrix_dump(tmp_path):
    path = tmp_path / "matrix.txt"
    matrix = BandedSymmetricMatrix.from_dense(np.array([[2.0, -1.0], [-1.0, 2.0]]), 1)
    assert write_matrix_dump(str(path), matrix) == str(path)
    assert path.read_text().splitlines() == ["0 0 2", "1 0 -1", "1 1 2"]


def test_optional_artifact_failure_is_tolerated(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert write_matrix_dump(str(blocker / "matrix.txt"), BandedSymmetricMatrix.identity(2)) is None
