"""Command line interface: exit codes, output routing, formats."""

import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from tactilechart.cli import main


@pytest.fixture
def spec_file(tmp_path, bar_spec):
    def write(spec=None, name="chart.json"):
        path = tmp_path / name
        path.write_text(json.dumps(spec if spec is not None else bar_spec()),
                        encoding="utf-8")
        return str(path)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCompile:
    def test_clean_spec_exits_zero_svg_on_stdout(self, capsys, spec_file):
        code, out, err = run(capsys, "compile", spec_file())
        assert code == 0
        assert err == ""
        assert out.startswith("<svg") and out.endswith("</svg>\n")

    def test_output_flag_writes_a_file(self, capsys, spec_file, tmp_path):
        dest = tmp_path / "chart.svg"
        code, out, _ = run(capsys, "compile", spec_file(), "-o", str(dest))
        assert code == 0
        assert out == ""
        assert dest.read_text(encoding="utf-8").startswith("<svg")

    def test_guideline_error_exits_one_but_still_renders(
            self, capsys, spec_file, bar_spec):
        spec = bar_spec(encoding={
            "x": {"field": "cat", "type": "nominal"},
            "y": {"field": "val", "type": "quantitative",
                  "axis": {"gridWidth": 3}},
        })
        code, out, err = run(capsys, "compile", spec_file(spec))
        assert code == 1
        assert out.startswith("<svg")      # diagnostics go to stderr
        assert "R2" in err and "error" in err

    def test_warnings_exit_zero(self, capsys, spec_file, bar_spec):
        spec = bar_spec(mark={"type": "bar", "width": 120})
        code, out, err = run(capsys, "compile", spec_file(spec))
        assert code == 0
        assert "R3" in err and "warning" in err
        assert out.startswith("<svg")

    def test_missing_file_exits_two(self, capsys, tmp_path):
        code, out, err = run(capsys, "compile", str(tmp_path / "absent.json"))
        assert code == 2
        assert out == ""
        assert "io/read" in err

    def test_unparseable_spec_exits_two(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json", encoding="utf-8")
        code, out, err = run(capsys, "compile", str(bad))
        assert code == 2
        assert "spec/parse" in err and "line 1" in err

    def test_scene_format_is_json(self, capsys, spec_file):
        code, out, _ = run(capsys, "compile", spec_file(), "--format", "scene")
        assert code == 0
        scene = json.loads(out)
        assert scene["dpi"] == 96
        assert [lyr["name"] for lyr in scene["layers"]][0] == "frame"

    def test_resolved_format_roundtrips_through_the_compiler(
            self, capsys, spec_file, tmp_path):
        code, out, _ = run(capsys, "compile", spec_file(), "--format", "resolved")
        assert code == 0
        resolved = json.loads(out)
        assert resolved["config"]["font"] == "Swell Braille"
        # Compiling the resolved spec again gives the identical SVG.
        again = tmp_path / "resolved.json"
        again.write_text(out, encoding="utf-8")
        _, svg1, _ = run(capsys, "compile", spec_file())
        _, svg2, _ = run(capsys, "compile", str(again))
        assert svg1 == svg2

    def test_dpi_flag_changes_the_output(self, capsys, spec_file):
        _, lo, _ = run(capsys, "compile", spec_file())
        _, hi, _ = run(capsys, "compile", spec_file(), "--dpi", "192")
        assert lo != hi
        assert ET.fromstring(hi).get("data-dpi") == "192"

    def test_mode_flag_switches_renderers(self, capsys, spec_file):
        _, font, _ = run(capsys, "compile", spec_file(), "--mode", "font")
        assert "<text" in font
        _, dots, _ = run(capsys, "compile", spec_file(), "--mode", "dots")
        assert "<text" not in dots

    def test_grade_flag_changes_braille(self, capsys, spec_file, bar_spec):
        spec = bar_spec(title="station")
        _, g2, _ = run(capsys, "compile", spec_file(spec), "--mode", "font")
        _, g1, _ = run(capsys, "compile", spec_file(spec), "--mode", "font",
                       "--grade", "1")
        assert "/ATION" in g2      # 'st' groupsign in grade 2
        assert "STATION" in g1     # spelled out in grade 1


class TestLint:
    def test_clean_chart_reports_no_diagnostics(self, capsys, spec_file):
        code, out, _ = run(capsys, "lint", spec_file())
        assert code == 0
        assert "no diagnostics" in out

    def test_diagnostics_go_to_stdout(self, capsys, spec_file, bar_spec):
        spec = bar_spec(mark={"type": "bar", "width": 120})
        code, out, _ = run(capsys, "lint", spec_file(spec))
        assert code == 0
        assert "R3" in out and "warning" in out

    def test_json_output_is_structured(self, capsys, spec_file, bar_spec):
        spec = bar_spec(encoding={
            "x": {"field": "cat", "type": "nominal",
                  "axis": {"labelAngle": 45}},
            "y": {"field": "val", "type": "quantitative"},
        })
        code, out, _ = run(capsys, "lint", spec_file(spec), "--json")
        assert code == 1
        diags = json.loads(out)
        assert diags and diags[0]["ruleId"] == "R6"
        assert diags[0]["severity"] == "error"
        assert "citation" in diags[0]


class TestReference:
    def test_dump_defaults_json(self, capsys):
        code, out, _ = run(capsys, "dump-defaults")
        assert code == 0
        rows = json.loads(out)
        paths = {r["path"] for r in rows}
        assert "axis.tickSize" in paths
        assert all(r["citation"] for r in rows)

    def test_dump_defaults_text(self, capsys):
        code, out, _ = run(capsys, "dump-defaults", "--text")
        assert code == 0
        assert "axis.tickSize" in out and "26.5" in out

    def test_palette_lists_assignment_order(self, capsys):
        code, out, _ = run(capsys, "palette")
        assert code == 0
        assert out.index("solidGrayFill") < out.index("dottedFill")
        assert "solid, dashed, dotted, longDashed" in out

    def test_palette_json(self, capsys):
        code, out, _ = run(capsys, "palette", "--json")
        data = json.loads(out)
        assert len(data["textures"]) == 10
        assert data["shapes"] == ["circle", "square", "triangle"]


class TestEntryPoint:
    def test_module_runs_as_a_console_script(self, spec_file):
        proc = subprocess.run(
            [sys.executable, "-m", "tactilechart.cli", "compile", spec_file()],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert proc.stdout.startswith("<svg")

    def test_version_flag(self):
        proc = subprocess.run(
            [sys.executable, "-m", "tactilechart.cli", "--version"],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert "tactilechart" in proc.stdout
