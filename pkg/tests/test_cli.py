import io
import json
import subprocess
import sys

import pytest

from chiloc import hyperbolicity
from chiloc.euler import chi_loc_closed
from chiloc.cli import run

from test_euler import MUTATIONS


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_chi0_json():
    code, out, _ = call("chi0", "--n", "2", "--m", "5", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"n": 2, "m": 5, "chi0": 28}


def test_chi_loc_plain():
    assert call("chi-loc", "--n", "1", "--m", "0") == (0, "0\n", "")


@pytest.mark.parametrize("method", ["closed", "genfun", "delta", "weighted"])
def test_chi_loc_methods(method):
    code, out, _ = call("chi-loc", "--n", "3", "--m", "7", "--method", method)
    assert code == 0 and int(out) == chi_loc_closed(3, 7)


@pytest.mark.parametrize("method", ["direct", "polytopes", "qpoly"])
def test_chi0_methods(method):
    assert call("chi0", "--n", "2", "--m", "4", "--method", method)[1] == "15\n"


def test_chi1_json_has_integer_fields():
    code, out, _ = call("chi1", "--n", "2", "--m", "2", "--format", "json")
    data = json.loads(out)
    assert data == {"n": 2, "m": 2, "chi_loc": 10, "chi0": 3, "chi1": 7}
    assert all(isinstance(v, int) for v in data.values())


def test_rdn_csv():
    code, out, err = call("rdn", "--dmax", "10", "--nmax", "6", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "d,n,r"
    rows = [tuple(map(int, line.split(","))) for line in lines[1:]]
    assert len(rows) == 36
    for d, n, r in rows:
        published = hyperbolicity.PUBLISHED_RDN[d][n - 1]
        assert published is None or published == r
    assert "(5,6)" in err


def test_rdn_other_formats():
    _, md, _ = call("rdn")
    assert "9*" in md and "| 338 |" in md
    _, tex, _ = call("rdn", "--format", "tex")
    assert tex.startswith("\\begin{tabular}") and "10 & 338 & 162 & 106 & 78 & 62 & 52 \\\\" in tex
    _, js, _ = call("rdn", "--format", "json", "--dmax", "6", "--nmax", "6")
    cells = json.loads(js)
    assert len(cells) == 12 and "note" in cells[5] and "note" not in cells[0]


def test_qpoly_and_genfun():
    code, out, _ = call("qpoly", "--n", "1", "--format", "json")
    data = json.loads(out)
    assert data["period"] == 2 and data["rows"][0][3] == "1/4"
    code, out, _ = call("genfun", "--n", "2", "--kind", "chi0", "--shift", "1", "--terms", "6", "--format", "json")
    assert json.loads(out)["series"] == ["0", "3", "8", "15", "28", "44"]
    code, out, _ = call("genfun", "--n", "1", "--terms", "6")
    assert out.splitlines()[1] == "0 1 6 14 30 51"


def test_ehrhart_and_describe():
    code, out, _ = call("ehrhart", "--n", "1", "--piece", "P", "--i", "1", "--t", "4")
    assert (code, out) == (0, "1\n")
    code, out, _ = call("ehrhart", "--n", "2", "--format", "json")
    assert json.loads(out)["period"] == 6  # denominators 3, 6, 2
    code, out, _ = call("describe", "--n", "1", "--format", "json")
    data = json.loads(out)
    assert data["volume"] == "5/108" and len(data["vertices"]) == 5
    assert call("describe", "--n", "2", "--piece", "P", "--i", "3")[0] == 1


def test_surface_verbs():
    code, out, _ = call("check-surface", "--d", "10", "--n", "1", "--r", "345", "--format", "json")
    data = json.loads(out)
    assert data["big"] and data["required"] == 338 and data["miyaoka_max"] == 360
    code, out, _ = call("labs", "--k", "4", "--format", "json")
    assert json.loads(out)["verdict"] is True
    code, _, err = call("labs", "--k", "2")
    assert code == 1 and "degree" in err
    assert call("check-surface", "--d", "5", "--n", "1", "--r", "3", "--m", "2")[0] == 1


@pytest.mark.parametrize(
    "argv",
    [[], ["frobnicate"], ["chi0", "--n", "2"], ["chi0", "--n", "0", "--m", "1"], ["chi0", "--n", "1", "--m", "1", "--bogus"],
     ["chi0", "--n", "1", "--m", "1", "--format", "tex"], ["chi-loc", "--n", "1", "--m", "1", "--method", "guess"]],
)
def test_usage_errors(argv):
    code, out, err = call(*argv)
    assert code == 1 and out == "" and err


def test_validate_ok():
    code, out, _ = call("validate", "--nmax", "4", "--mmax", "20", "--format", "json")
    assert code == 0 and json.loads(out)["ok"]


@pytest.mark.parametrize("name", sorted(MUTATIONS))
def test_validate_exit_2_under_mutation(name, monkeypatch, fresh_caches):
    module, attr, replacement = MUTATIONS[name]
    monkeypatch.setattr(module, attr, replacement)
    code, out, _ = call("validate", "--nmax", "4", "--mmax", "20")
    assert code == 2 and out.startswith("FAILED")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "chiloc", "chi0", "--n", "2", "--m", "5", "--format", "json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["chi0"] == 28
