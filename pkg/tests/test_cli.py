import json
from importlib import resources

import pytest

from dab.cli import main

CATALOG = sorted(p.name for p in resources.files("dab").joinpath("catalog").iterdir()
                 if p.name.endswith(".dab"))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bertini_plane(capsys):
    code, out, _ = run(capsys, "bertini", "--var-free", "n=2", "--order", "1", "--degree", "1")
    rep = json.loads(out)
    assert code == 0 and rep["verdict"] == "pass"
    assert rep["result"]["predicted"]["expanded"] == "t + 2"
    assert rep["result"]["computed"]["expanded"] == "t + 2"
    assert set(rep) >= {"command", "inputs", "chains", "verdict", "timings_ms", "flags", "engine"}
    assert set(rep["chains"][0]) >= {"leaders", "kolchin", "inequations"}
    assert set(rep["chains"][0]["kolchin"]) >= {"binomial_coeffs", "threshold"}


def test_kolchin_constants(capsys):
    code, out, _ = run(capsys, "kolchin", "--system", "y'")
    k = json.loads(out)["result"]["kolchin"]
    assert code == 0
    assert (k["expanded"], k["differential_dimension"], k["differential_type"], k["typical_dimension"]) == \
        ("1", 0, 0, "1")


def test_through_exponential(capsys):
    code, out, _ = run(capsys, "through", "--system", "dy - y", "--point", "1", "--count", "1")
    res = json.loads(out)["result"]
    assert code == 0 and res["empty"] and not res["point_on_variety"]


def test_ritt(capsys):
    code, out, _ = run(capsys, "ritt", "--no-timings")
    rep = json.loads(out)
    assert code == 0 and rep["verdict"] == "pass"
    assert rep["result"]["homogeneity_degree"]["value"] == 5
    assert rep["result"]["preparation_membership"]["witness"]


def test_fail_exit_code(capsys):
    code, out, _ = run(capsys, "homog", "--poly", "y + y'^2")
    assert code == 1 and json.loads(out)["verdict"] == "fail"


@pytest.mark.parametrize("argv", [
    ["kolchin", "--system", "y + w"],
    ["kolchin", "--m", "2", "--system", "D[1](y)"],
    ["bertini"],
    ["prolong", "--system", "y'"],
    ["kolchin", "--file", "/nonexistent.dab"],
])
def test_error_exit_code(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and "error" in json.loads(err)


def test_out_file(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "homog", "--poly", "y^3", "--out", str(path), "--no-timings")
    assert code == 0 and path.read_text().strip() == out.strip()


def test_reduce_and_powmember(capsys):
    code, out, _ = run(capsys, "reduce", "--poly", "y''", "--system", "y' - y")
    res = json.loads(out)["result"]
    assert code == 0 and res["remainder"] == "y" and res["certificate_holds"]
    code, out, _ = run(capsys, "powmember", "--vars", "x,y", "--poly", "(x*y')^2", "--gen", "x*y'",
                       "--power", "2", "--order", "1", "--degree", "4")
    assert code == 0 and json.loads(out)["result"]["member"]


def test_lyover(capsys):
    code, out, _ = run(capsys, "lyover", "--system", "y^2 + 1", "--field", "i^2 + 1")
    res = json.loads(out)["result"]
    assert code == 0 and (res["base_components"], res["extension_components"]) == (1, 2)


@pytest.mark.parametrize("name", CATALOG)
def test_catalog_runs_pass_and_threads_agree(capsys, tmp_path, name):
    path = tmp_path / name
    path.write_text(resources.files("dab").joinpath("catalog", name).read_text())
    code1, out1, _ = run(capsys, "run", "--file", str(path), "--no-timings", "--threads", "1")
    code4, out4, _ = run(capsys, "run", "--file", str(path), "--no-timings", "--threads", "4")
    assert code1 == 0 and code4 == 0
    assert out1 == out4
    assert all(r["verdict"] in ("pass", "skip") for r in json.loads(out1))
