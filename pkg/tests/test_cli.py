import io
import json

import pytest

import pyfreediv
from pyfreediv.cli import build_parser, run
from pyfreediv.errors import PreconditionError
from pyfreediv.options import AnalysisOptions


def run_json(*argv):
    stream = io.StringIO()
    code = run(list(argv) + ["--json"], stream)
    return code, (json.loads(stream.getvalue()) if stream.getvalue() else None)


def test_analyze():
    code, out = run_json("analyze", "x*y*z")
    assert code == 0
    assert out["free"] is True
    assert out["linear_type"] == {"verdict": True, "route": "fitting"}


def test_human_output():
    stream = io.StringIO()
    assert run(["check-free", "x*y*z"], stream) == 0
    assert "free: True" in stream.getvalue()


def test_check_free_certificate():
    code, out = run_json("check-free", "x*y*z")
    assert code == 0
    assert len(out["certificate"]) == 3
    assert all(len(row) == 2 for row in out["certificate"])


def test_resolve_and_saturation():
    code, out = run_json("resolve", "x*y*z")
    assert code == 0
    assert out["length"] == 2
    assert out["betti"] == {"0": {"0": 1}, "1": {"2": 3}, "2": {"3": 2}}
    code, out = run_json("saturation", "x*(x^2+y*z)")
    assert code == 0
    assert out["st"] == 2
    assert out["indeg"] == 1


def test_check_linear_type_and_koszul_free():
    code, out = run_json("check-linear-type", "x*y*z")
    assert code == 0
    assert out["verdict"] is True
    code, out = run_json("check-koszul-free", "x*y*z")
    assert code == 0
    assert out["koszul_free"] is True
    assert out["sense"] == "s1"


@pytest.mark.parametrize("argv", [
    ["analyze", "x^-1"],
    ["analyze", "x*w"],
    ["check-koszul-free", "a*b*c*d", "--vars", "a,b,c,d"],
    ["cramer", "x*y*z"],
    ["family", "named", "--name", "cayley_sextic"],
    ["family", "quintic_plus", "--d", "4"],
])
def test_refusals_exit_with_2(argv):
    assert run(argv, io.StringIO()) == 2


def test_family_quintic_plus():
    code, out = run_json("family", "quintic_plus", "--d", "5")
    assert code == 0
    assert out["polynomial"] == "x^5 + x^2*y^3 + x*y^4 + y^5 + y^4*z"
    assert out["diffs"] == []


def test_out_and_config(tmp_path):
    config = tmp_path / "options.json"
    config.write_text(json.dumps({"cramer": False, "timings": True}))
    out_file = tmp_path / "report.json"
    assert run(["analyze", "x*y*z", "--config", str(config), "--out", str(out_file)], io.StringIO()) == 0
    report = json.loads(out_file.read_text())
    assert report["timings"] is not None
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"colour": "blue"}))
    assert run(["analyze", "x*y*z", "--config", str(bad)], io.StringIO()) == 2


def test_command_line_flags_override_the_config():
    args = build_parser().parse_args(["analyze", "x", "--seed", "7", "--route", "both"])
    assert args.seed == 7
    assert args.route == "both"
    assert args.rees is None


def test_corpus_case():
    code, out = run_json("corpus", "--case", "01_conic_line")
    assert code == 0
    assert out["failed"] == 0
    assert {row["case"] for row in out["rows"]} == {"01_conic_line"}


def test_run_config():
    report = pyfreediv.run_config({"polynomial": "a*b", "variables": "a,b"})
    assert report["free"] is True
    with pytest.raises(PreconditionError):
        pyfreediv.run_config({"polynomial": "x", "colour": "blue"})


def test_options():
    options = AnalysisOptions.from_dict({"seed": 3})
    assert options.seed == 3
    assert options.replace(seed=None, route="rees").to_dict()["route"] == "rees"
    assert options.replace(seed=None).seed == 3
    with pytest.raises(PreconditionError):
        AnalysisOptions(route="guess")
    with pytest.raises(PreconditionError):
        AnalysisOptions(degree_cap=0)
    with pytest.raises(PreconditionError):
        AnalysisOptions.from_dict({"budget": 1})


def test_quick_corpus_case():
    code, out = run_json("corpus", "--case", "09_addition2", "--quick")
    assert code == 0
    assert out["failed"] == 0
    assert all(row["check"].startswith("n=3 ") for row in out["rows"])
