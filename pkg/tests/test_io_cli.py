import json

import pytest

from dyconvex.cli import main
from dyconvex.dyadic import as_point
from dyconvex.io import ParseError, PointFile, parse_point

NOTDPOL_FILE = """# four generators
dim 2
0, 0
1, 3
3, 0
1, 1
"""


@pytest.fixture
def gens(tmp_path):
    path = tmp_path / "notdpol.txt"
    path.write_text(NOTDPOL_FILE)
    return path


def _run(capsys, *argv):
    code = main(list(map(str, argv)))
    out, err = capsys.readouterr()
    return code, out, err


def test_point_file_round_trip():
    pf = PointFile.parse(NOTDPOL_FILE)
    assert pf.dim == 2 and len(pf.points) == 4
    assert PointFile.parse(pf.dumps()) == pf
    assert PointFile.parse("1\n0\n3*2^-1  # comment\n").points == (as_point(0), as_point(3 / 2))


@pytest.mark.parametrize(
    "text",
    ["", "dim 0\n1\n", "dim 2\n", "dim 2\n1, 2, 3\n", "dim 2\n1/3, 0\n", "0, 0\n1, 1\n", "dim two\n1\n"],
)
def test_point_file_rejects(text):
    with pytest.raises(ParseError):
        PointFile.parse(text)


def test_parse_point():
    assert parse_point("1/2, -3*2^-2") == as_point((0.5, -0.75))
    with pytest.raises(ParseError):
        parse_point("1, 2", 3)


@pytest.mark.parametrize("point, code, result", [("1,0", 3, False), ("3/2,0", 0, True), ("1/2,1/2", 0, True)])
def test_member(capsys, gens, point, code, result):
    rc, out, _ = _run(capsys, "member", "--gens", gens, "--point", point)
    doc = json.loads(out)
    assert rc == code
    assert doc["op"] == "member" and doc["result"] is result
    assert set(doc) == {"op", "inputs", "result", "certificate", "evidence"}
    assert doc["evidence"]["in_hull"] is True


def test_member_output_is_deterministic(capsys, gens):
    first = _run(capsys, "member", "--gens", gens, "--point", "1,0")
    second = _run(capsys, "member", "--gens", gens, "--point", "1,0")
    assert first == second


def test_closure_and_svg(capsys, gens, tmp_path):
    svg = tmp_path / "fig.svg"
    rc, out, _ = _run(capsys, "closure", "--gens", gens, "--exp-cap", 1, "--max-points", 2000, "--svg", svg)
    doc = json.loads(out)
    assert rc == 0
    assert ["3*2^-1", "0"] in doc["result"]["points"]
    assert ["1*2^0", "0"] not in doc["result"]["points"]
    text = svg.read_text()
    assert text.startswith("<?xml") and "<polygon" in text and 'scale(1,-1)' in text
    _run(capsys, "closure", "--gens", gens, "--exp-cap", 1, "--max-points", 2000, "--svg", svg)
    assert svg.read_text() == text


def test_closure_limit_warning(capsys, gens):
    rc, out, err = _run(capsys, "closure", "--gens", gens, "--exp-cap", 4, "--max-points", 30)
    assert rc == 0 and json.loads(out)["result"]["limit_reached"] is True
    assert "point limit" in err


def test_classify_interval(capsys, tmp_path):
    path = tmp_path / "iv.txt"
    path.write_text("dim 1\n0\n1\n9\n")
    rc, out, _ = _run(capsys, "classify", "interval", "--gens", path)
    assert rc == 0 and json.loads(out)["result"]["type_k"] == 9


def test_classify_triangle(capsys, tmp_path):
    rc, out, _ = _run(capsys, "classify", "triangle", "--params", "3,15,6,0")
    assert rc == 0 and json.loads(out)["result"] == {"class": "Hat", "boundary": [3, 3, 3]}
    path = tmp_path / "t.txt"
    path.write_text("dim 2\n0,0\n12,15\n15,12\n")
    rc, out, _ = _run(capsys, "classify", "triangle", "--vertices", path)
    doc = json.loads(out)
    assert rc == 0 and doc["result"]["params"] == [3, 27, 6, 0]
    assert doc["evidence"]["area_odd_part"] == 81
    path.write_text("dim 2\n1,2\n7,3\n2,9\n")
    rc, out, _ = _run(capsys, "classify", "triangle", "--vertices", path)
    assert rc == 3 and json.loads(out)["result"] is None


def test_classify_bad_params(capsys):
    rc, _, err = _run(capsys, "classify", "triangle", "--params", "1,2,3")
    assert rc == 1 and "four parameters" in err
    rc, _, err = _run(capsys, "classify", "triangle", "--params", "0,5,3,0")
    assert rc == 1


def test_gens(capsys, gens, tmp_path):
    rc, out, _ = _run(capsys, "gens", "--semipolytope", gens, "--reduce")
    doc = json.loads(out)
    assert rc == 0 and doc["result"]["count"] == 4 and doc["certificate"]["validated"] is True
    tri = tmp_path / "tri.txt"
    tri.write_text("dim 2\n0,0\n3,0\n0,3\n")
    rc, out, _ = _run(capsys, "gens", "--polytope", tri, "--reduce")
    assert rc == 0 and json.loads(out)["result"]["count"] == 6


def test_verify(capsys):
    rc, out, _ = _run(capsys, "verify", "--example", "notdpol")
    assert rc == 0 and "0 failing check(s)" in out
    rc, out, _ = _run(capsys, "verify", "--example", "normalization-remark")
    assert rc == 2 and "expected:" in out


def test_usage_errors(capsys, tmp_path, gens):
    assert _run(capsys, "member", "--gens", gens)[0] == 1
    assert _run(capsys, "member", "--gens", tmp_path / "missing.txt", "--point", "0,0")[0] == 1
    assert _run(capsys, "member", "--gens", gens, "--point", "1/3,0")[0] == 1
    assert _run(capsys, "member", "--gens", gens, "--point", "1,0,0")[0] == 1
    assert _run(capsys, "closure", "--gens", gens, "--exp-cap", -1)[0] == 1
    assert _run(capsys, "verify", "--example", "nope")[0] == 1
    assert _run(capsys)[0] == 1


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "dyconvex", "classify", "triangle", "--params", "0,3,3,0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and '"Right"' in proc.stdout
