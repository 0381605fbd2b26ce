import json
import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from ampcyl.cases import TYPE_LABELS, bundled_case, serialize
from ampcyl.cli import main, render_figure, window_polygon
from ampcyl.cone2 import Ray2, Wedge


def test_verify_all_passes(capsys):
    assert main(["verify", "--all"]) == 0
    out = capsys.readouterr().out
    lines = out.strip().splitlines()
    assert sum(1 for ln in lines if ln.startswith("PASS ")) == 13
    assert sum(1 for ln in lines if ln.startswith("FAIL ")) == 0
    assert sum(1 for ln in lines if "warning:" in ln) == 2


def test_verify_single_case(capsys):
    assert main(["verify", "--case", "E7"]) == 0
    assert capsys.readouterr().out.strip() == "PASS E7"


def test_verify_accepts_file_stem_alias(capsys):
    assert main(["verify", "--case", "A7pp"]) == 0
    assert capsys.readouterr().out.strip() == "PASS A7''"


def test_verify_unknown_case(capsys):
    assert main(["verify", "--case", "E8"]) == 2
    assert "unknown case" in capsys.readouterr().err


def test_verify_needs_selection(capsys):
    assert main(["verify"]) == 2


def test_unknown_subcommand_exits_2():
    assert main(["frobnicate"]) == 2


def test_cylinder_override_insufficient(capsys):
    assert main(["verify", "--case", "D5+A2", "--cylinders", "U0"]) == 1
    out = capsys.readouterr().out
    assert "NOT COVERED" in out
    assert "witness=(-1,5)" in out


def test_cylinder_override_sufficient(capsys):
    assert main(["verify", "--case", "D5+A2", "--cylinders", "U0,U1"]) == 0
    assert "COVERED" in capsys.readouterr().out


def test_cylinder_override_unknown_name(capsys):
    assert main(["verify", "--case", "D5+A2", "--cylinders", "U9"]) == 2


def test_verify_json_format(capsys):
    assert main(["verify", "--all", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [entry["label"] for entry in doc] == list(TYPE_LABELS)
    assert all(entry["passed"] for entry in doc)
    total_warnings = sum(len(entry["warnings"]) for entry in doc)
    assert total_warnings == 2


def test_report_json_is_stable(capsys):
    assert main(["report", "--case", "D6+A1", "--format", "json"]) == 0
    first = capsys.readouterr().out
    assert main(["report", "--case", "D6+A1", "--format", "json"]) == 0
    second = capsys.readouterr().out
    assert first == second
    doc = json.loads(first)[0]
    assert list(doc) == ["label", "passed", "checks", "warnings"]
    assert [c["name"] for c in doc["checks"]][0] == "line-table"


def test_report_text_to_file(tmp_path, capsys):
    out = tmp_path / "report.txt"
    assert main(["report", "--case", "E7", "--out", str(out)]) == 0
    text = out.read_text()
    assert "== E7 ==" in text
    assert "ok   line-table" in text


def test_figure_single_case(tmp_path):
    out = tmp_path / "e7.svg"
    assert main(["figure", "--case", "E7", "--out", str(out)]) == 0
    svg = out.read_text()
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg")
    assert "b = -5/2·a" in svg
    assert "a = 0" in svg


def test_figure_all_cases(tmp_path):
    assert main(["figure", "--all", "--out", str(tmp_path)]) == 0
    files = sorted(p.name for p in tmp_path.glob("*.svg"))
    assert len(files) == 13
    assert "A7pp.svg" in files


def test_figure_bytes_deterministic():
    case = bundled_case("D5+A2")
    assert render_figure(case) == render_figure(case)


def test_figure_d6a1_labels():
    svg = render_figure(bundled_case("D6+A1"))
    assert "a = 0" in svg
    assert "b = -3/2·a" in svg
    assert svg.count("<polygon") == 1


def test_list_text(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert len(out) == 13
    assert out[0].startswith("A5+A2")
    assert "{U0}" in out[0]


def test_list_json(capsys):
    assert main(["list", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [d["label"] for d in doc] == list(TYPE_LABELS)


def test_cases_dir_overrides_bundle(tmp_path, capsys):
    case = bundled_case("D6+A1")
    doc = json.loads(serialize(case))
    doc["pushforwards"]["l1"] = ["1", "0"]
    (tmp_path / "D6+A1.json").write_text(json.dumps(doc))
    assert main(["verify", "--case", "D6+A1", "--cases-dir", str(tmp_path)]) == 1
    out = capsys.readouterr().out
    assert out.startswith("FAIL D6+A1")


def test_cases_dir_parse_error(tmp_path, capsys):
    (tmp_path / "broken.json").write_text("{")
    assert main(["verify", "--all", "--cases-dir", str(tmp_path)]) == 2
    assert "error:" in capsys.readouterr().err


def test_window_polygon_span():
    wedge = Wedge.span(Ray2(0, 1), Ray2(2, -3))
    poly = window_polygon(wedge)
    assert poly[0] == (Fraction(0), Fraction(0))
    assert poly[1] == (Fraction(0), Fraction(5))
    assert (Fraction(5), Fraction(5)) in poly
    assert (Fraction(5), Fraction(-5)) in poly
    assert poly[-1] == (Fraction(10, 3), Fraction(-5))


def test_window_polygon_single_is_segment():
    poly = window_polygon(Wedge.single(Ray2(1, -2)))
    assert poly == [
        (Fraction(0), Fraction(0)),
        (Fraction(5, 2), Fraction(-5)),
    ]


def test_window_polygon_wraps_top_left_corner():
    wedge = Wedge.span(Ray2(-2, 1), Ray2(0, 1))
    poly = window_polygon(wedge)
    assert (Fraction(-5), Fraction(5)) in poly
    assert poly[1] == (Fraction(-5), Fraction(5, 2))
    assert poly[-1] == (Fraction(0), Fraction(5))
