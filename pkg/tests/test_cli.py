import json
import subprocess
import sys

import pytest

from abeltrace.cli import main
from abeltrace.parser import parse_ratfunc


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out), out


def test_trace_example(capsys):
    code, doc, _ = run(capsys, "trace", "--n", "1", "--f", "y^2 - x1", "--h", "x1", "--kmax", "2")
    assert code == 0
    assert doc["v"] == ["a1^2+2*b1", "a1^3+3*a1*b1", "a1^4+4*a1^2*b1+2*b1^2"]
    assert doc["u"] == ["2", "a1", "a1^2+2*b1"]
    assert doc["d"] == 2


def test_castelnuovo_example(capsys):
    code, doc, raw = run(capsys, "castelnuovo", "--d", "4", "--n", "2", "--q", "1")
    assert code == 0 and raw.strip() == '{"pi_q": 8}'


def test_wood_example(capsys):
    code, _, raw = run(capsys, "wood", "--u1", "b1^2")
    assert code == 0 and raw.strip() == '{"affine_in_b": false}'


def test_reconstruct(capsys):
    code, doc, _ = run(capsys, "reconstruct", "--f", "y^2 - x1", "--h", "x1")
    assert code == 0
    assert doc["F"] == "-y*a1+y^2-b1"
    assert doc["H"] == "y*a1+b1"
    assert doc["star"] and doc["starstar"] and doc["hankel"]["equal"]
    assert doc["f"] == "y^2-x1" and doc["h"] == "x1"


def test_outputs_reparse(capsys):
    _, doc, _ = run(capsys, "abel-inverse", "--f", "y^3 - x1^3 - 1", "--h", "y + x1")
    for key in ("F", "H", "f", "h"):
        parse_ratfunc(doc[key], 1)
    _, doc, _ = run(capsys, "trace", "--f", "y^2 + x1*y - 1", "--h", "1/(y+3)")
    for key in ("u", "v", "w"):
        for text in doc[key]:
            parse_ratfunc(text, 1)


def test_abel_inverse_from_w(capsys):
    _, first, _ = run(capsys, "trace", "--f", "y^2 - x1", "--h", "x1", "--kmax", "3")
    code, doc, _ = run(capsys, "abel-inverse", "--n", "1", "--w", ";".join(first["w"]))
    assert code == 0
    assert doc["F"] == "-y*a1+y^2-b1" and doc["h"] == "x1"


def test_abel_inverse_degenerate(capsys):
    code, doc, _ = run(capsys, "abel-inverse", "--f", "y - x1", "--f", "y^2 - x1 - 1", "--h", "y - x1")
    assert code == 3
    assert doc["error"]["name"] == "DegenerateStildeSystem"
    assert doc["error"]["cause"] == "vanishing_on_component"


def test_abelian(capsys):
    code, doc, _ = run(capsys, "abelian", "--f", "y^4 + x1^4 - 1")
    assert code == 0
    assert doc["dimension"] == doc["expected_dimension"] == 3
    assert doc["generators"] == ["1", "x1", "y"]
    assert all(c["vanishes"] for c in doc["nullity"])


def test_degree_drop_exit_code(capsys):
    code, doc, _ = run(capsys, "trace", "--f", "y^2 - x1^3")
    assert code == 3
    err = doc["error"]
    assert err["name"] == "DegreeDropAtInfinity"
    assert (err["vertical_degree"], err["global_degree"]) == (2, 3)


@pytest.mark.parametrize(
    "argv, name",
    [
        (["trace"], "InputError"),
        (["frobnicate"], "InputError"),
        (["trace", "--f", "y^^2"], "SyntaxError"),
        (["trace", "--f", "y - z"], "UnknownVariable"),
        (["castelnuovo", "--d", "4", "--q", "1"], "InputError"),
        (["castelnuovo", "--d", "4", "--n", "1", "--q", "3"], "OutOfRange"),
    ],
)
def test_validation_errors(capsys, argv, name):
    code, doc, _ = run(capsys, *argv)
    assert code == 2
    assert doc["error"]["name"] == name
    assert "\n" not in doc["error"]["message"]


def test_file_input(capsys, tmp_path):
    job = tmp_path / "job.txt"
    job.write_text("# parabola\nf = y^2 - x1\nh = x1\nkmax = 2\n")
    code, doc, _ = run(capsys, "trace", "--n", "1", "--file", str(job))
    assert code == 0 and doc["v"][0] == "a1^2+2*b1"


def test_file_rejects_unknown_keys(capsys, tmp_path):
    job = tmp_path / "job.txt"
    job.write_text("f = y^2 - x1\ncolour = blue\n")
    code, doc, _ = run(capsys, "trace", "--file", str(job))
    assert code == 2 and "colour" in doc["error"]["message"]


def test_output_path(capsys, tmp_path):
    target = tmp_path / "out.json"
    assert main(["castelnuovo", "--d", "5", "--n", "1", "--q", "1", "--output", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text()) == {"pi_q": 6}


def test_pretty(capsys):
    _, doc, raw = run(capsys, "castelnuovo", "--d", "4", "--n", "2", "--q", "1", "--pretty")
    assert raw.startswith("{\n  ") and doc == {"pi_q": 8}


def test_verify_and_seed_override(capsys, monkeypatch):
    code, doc, _ = run(capsys, "verify", "--f", "y^2 - x1", "--h", "x1", "--kmax", "1", "--count", "5", "--seed", "3")
    assert code == 0 and doc["passed"] and doc["seed"] == 3
    monkeypatch.setenv("ABELTRACE_SEED", "11")
    _, doc, _ = run(capsys, "verify", "--f", "y^2 - x1", "--kmax", "0", "--count", "5", "--seed", "3")
    assert doc["seed"] == 11


def test_console_script_is_deterministic():
    cmd = [sys.executable, "-m", "abeltrace.cli", "trace", "--n", "1", "--f", "y^3 - x1*y + 1", "--h", "y/(x1+2)"]
    outs = [subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2)]
    assert outs[0] == outs[1]
