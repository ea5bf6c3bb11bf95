import csv
import json
from pathlib import Path

import pytest

from curvesym.cli import Report, RunConfig, main, parse_curve_file, run
from curvesym.curve import crunode, curve_to_json
from curvesym.errors import CurveParseError

GOLDEN = Path(__file__).parent / "golden"


def write_curve(tmp_path, data, name="curve.json"):
    path = tmp_path / name
    path.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(path)


def poly(*coeffs):
    return [str(c) for c in coeffs]


def curve_file(tmp_path, x, y, z):
    return write_curve(tmp_path, {k: {"num": poly(*n), "den": poly(*d)} for k, (n, d) in zip("xyz", (x, y, z))})


# -- config ------------------------------------------------------------------------


def test_config_requires_exactly_one_source():
    with pytest.raises(ValueError):
        RunConfig()
    with pytest.raises(ValueError):
        RunConfig(input="a.json", builtin="crunode")


def test_config_rejects_bad_digits_and_signs():
    with pytest.raises(ValueError):
        RunConfig(builtin="crunode", decimal_digits=0)
    with pytest.raises(ValueError):
        RunConfig(builtin="crunode", signs="all")


# -- golden reports ----------------------------------------------------------------


@pytest.mark.parametrize("name,golden", [("crunode", "crunode.json"), ("daisy:1", "daisy1.json")])
def test_report_matches_golden(name, golden):
    rep, code, message = run(RunConfig(builtin=name, decimal_digits=20))
    assert code == 0 and message == ""
    data = json.loads(rep.to_json())
    data.pop("timings")
    assert data == json.loads((GOLDEN / golden).read_text())


def test_report_round_trips():
    rep, _, _ = run(RunConfig(builtin="crunode"))
    again = Report.from_dict(json.loads(rep.to_json()))
    assert again == rep
    assert rep.direct["count"] == len(rep.direct["records"]) == 2
    assert rep.opposite["count"] == len(rep.opposite["records"]) == 2


def test_single_sign_leaves_other_block_empty():
    rep, code, _ = run(RunConfig(builtin="crunode", signs="minus"))
    assert code == 0 and rep.direct is None and rep.opposite["count"] == 2


def test_timings_cover_each_stage():
    rep, _, _ = run(RunConfig(builtin="crunode"))
    assert {"invariants", "equations", "direct.candidates", "opposite.speed",
            "reconstruct", "total"} <= set(rep.timings)


def test_decimal_digits_control_rendering():
    rep, _, _ = run(RunConfig(builtin="crunode", decimal_digits=5))
    assert rep.direct["records"][0]["Q"]["decimal"][0][0] == "-1.00000"


def test_file_input_matches_builtin(tmp_path):
    path = write_curve(tmp_path, curve_to_json(crunode()))
    assert parse_curve_file(path) == crunode()
    a, _, _ = run(RunConfig(input=path))
    b, _, _ = run(RunConfig(builtin="crunode"))
    assert a.direct == b.direct and a.opposite == b.opposite


# -- refusals and errors ----------------------------------------------------------------


def test_planar_input_is_refused(tmp_path):
    path = curve_file(tmp_path, ((0, 1), (1,)), ((0, 0, 1), (1,)), ((0,), (1,)))
    rep, code, message = run(RunConfig(input=path))
    assert code == 2 and rep.degeneracy["kind"] == "Planar"
    assert "plane-curve" in message and rep.direct is None


def test_line_input_is_refused(tmp_path):
    path = curve_file(tmp_path, ((0, 1), (1,)), ((0, 2), (1,)), ((1, 3), (1,)))
    _, code, message = run(RunConfig(input=path))
    assert code == 2 and "Line" in message


def test_circle_input_is_refused(tmp_path):
    path = curve_file(tmp_path, ((1, 0, -1), (1, 0, 1)), ((0, 2), (1, 0, 1)), ((0,), (1,)))
    _, code, message = run(RunConfig(input=path))
    assert code == 2 and "Circle" in message


@pytest.mark.parametrize("mutate,needle", [
    (lambda d: d["x"]["num"].__setitem__(1, "0.5"), "floating point not accepted; use exact rationals"),
    (lambda d: d["y"].__setitem__("den", ["0"]), "zero denominator polynomial"),
    (lambda d: d["z"]["num"].__setitem__(0, "two"), "z.num[0]"),
])
def test_bad_coefficients_exit_one(tmp_path, mutate, needle):
    data = curve_to_json(crunode())
    mutate(data)
    path = write_curve(tmp_path, data)
    rep, code, message = run(RunConfig(input=path))
    assert rep is None and code == 1
    assert needle in message and path in message


def test_json_syntax_error_reports_position(tmp_path):
    path = write_curve(tmp_path, '{"x": {"num": ["1"],\n "den": }')
    with pytest.raises(CurveParseError, match="line 2, column"):
        parse_curve_file(path)


def test_missing_file_and_unknown_builtin(tmp_path):
    assert run(RunConfig(input=str(tmp_path / "nope.json")))[1] == 1
    assert run(RunConfig(builtin="space_rose"))[1] == 1


# -- plot data ---------------------------------------------------------------------


def test_plot_data_lists_fixed_sets(tmp_path):
    out = tmp_path / "plot.csv"
    run(RunConfig(builtin="crunode", emit_plot_data=str(out), decimal_digits=6))
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["type", "label", "v1", "v2", "v3", "v4", "v5", "v6"]
    samples = [r for r in rows if r[0] == "sample"]
    assert len(samples) == 243
    planes = sorted(tuple(float(v) for v in r[2:]) for r in rows if r[0] == "plane")
    assert planes == [(-1, 0, 1, 0), (1, 0, 1, 0)]
    axes = [r for r in rows if r[0] == "axis"]
    assert len(axes) == 1 and [float(v) for v in axes[0][5:]] == [0, 1, 0]


def test_plot_data_center_of_daisy(tmp_path):
    out = tmp_path / "plot.csv"
    run(RunConfig(builtin="daisy:1", emit_plot_data=str(out)))
    centers = [r for r in csv.reader(out.open()) if r[0] == "center"]
    assert len(centers) == 1 and all(float(v) == 0 for v in centers[0][2:5])


# -- entry point -------------------------------------------------------------------


def test_main_text_output(capsys):
    assert main(["--builtin", "crunode"]) == 0
    out = capsys.readouterr().out
    assert "direct symmetries: 2" in out and "opposite symmetries: 2" in out
    assert "plane x + z = 0" in out and "plane -x + z = 0" in out
    assert "line through (0, 0, 0) with direction (0, 1, 0)" in out


def test_main_json_output(capsys):
    assert main(["--builtin", "daisy:1", "--format", "json", "--signs", "plus"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert sorted(r["kind"] for r in data["direct"]["records"]) == ["HalfTurn", "Identity"]


def test_main_refusal_exit_code(tmp_path, capsys):
    path = curve_file(tmp_path, ((0, 1), (1,)), ((0, 0, 1), (1,)), ((0,), (1,)))
    assert main(["--input", path]) == 2
    assert "refused: Planar" in capsys.readouterr().err


def test_main_rejects_missing_source():
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2
