import csv
import io
import json

import pytest
from click.testing import CliRunner

from zonal.cli import main


def run(*args):
    return CliRunner().invoke(main, list(args))


def test_table_csv():
    res = run("table", "--r", "2", "--d", "2", "--n", "3", "--format", "csv")
    assert res.exit_code == 0
    rows = list(csv.reader(io.StringIO(res.output)))
    assert rows[0] == ["k", "l", "exact", "float"]
    assert len(rows) == 5


def test_table_json():
    res = run("table", "--r", "2", "--d", "1", "--n", "2", "--format", "json")
    assert res.exit_code == 0
    obj = json.loads(res.output)
    assert obj["display"][1] == ["1.000000000000", "0.000000000000", "-1.000000000000"]
    assert [row["rep"] for row in obj["rows"]] == [[2, 0], [1, 1], [0, 2]]


def test_table_out_file(tmp_path):
    target = tmp_path / "t.json"
    res = run("table", "--r", "3", "--d", "3", "--n", "2", "--out", str(target))
    assert res.exit_code == 0 and res.output == ""
    assert json.loads(target.read_text())["params"] == {"r": 3, "d": 3, "n": 2}


@pytest.mark.parametrize(
    "args",
    [
        ["table", "--r", "3", "--d", "2", "--n", "2"],
        ["table", "--r", "3", "--d", "1", "--n", "0"],
        ["table", "--r", "3", "--d", "1"],
        ["eval", "--r", "2", "--d", "2", "--n", "3", "--k", "2,1", "--l", "2,1"],
        ["eval", "--r", "2", "--d", "2", "--n", "3", "--k", "2,2", "--l", "3,0"],
        ["eval", "--r", "2", "--d", "2", "--n", "3", "--k", "x,1", "--l", "3,0"],
        ["eval", "--r", "2", "--d", "1", "--n", "2", "--k", "-1,3", "--l", "2,0"],
        ["laplace", "--r", "0", "--d", "1", "--n", "2", "--k", "1"],
        ["expand", "--r", "2", "--d", "1", "--n", "2", "--l", "1,1", "--lp", "1,2"],
    ],
)
def test_invalid_input_exits_2(args):
    res = run(*args)
    assert res.exit_code == 2, res.output
    assert res.exception is None or isinstance(res.exception, SystemExit)


def test_eval_examples():
    res = run("eval", "--r", "4", "--d", "4", "--n", "2", "--k", "1,1,0,0", "--l", "0,1,0,1")
    assert res.exit_code == 0
    assert res.output.splitlines()[0] == "exact: 0"
    res = run("eval", "--r", "2", "--d", "1", "--n", "2", "--k", "0,2", "--l", "1,1")
    assert res.output.splitlines() == ["exact: -1", "float: -1.000000000000"]
    res = run("eval", "--r", "5", "--d", "1", "--n", "3", "--k", "3,0,0,0,0", "--l", "0,1,1,0,1")
    assert res.output.splitlines()[0] == "exact: 1"
    res = run("eval", "--r", "3", "--d", "3", "--n", "2", "--k", "1,1,0", "--l", "0,1,1", "--format", "json")
    obj = json.loads(res.output)
    assert obj["exact"] == "-1/2" and obj["float"] == "-0.500000000000"


def test_expand():
    res = run("expand", "--r", "2", "--d", "1", "--n", "2", "--l", "1,1", "--lp", "1,1")
    assert res.exit_code == 0
    obj = json.loads(res.output)
    assert obj["l"] == [1, 1] and obj["l_prime"] == [1, 1]
    assert obj["terms"] == [{"coset": [2, 0], "coefficient": "1/2"}, {"coset": [0, 2], "coefficient": "1/2"}]


def test_verify_all_small():
    res = run("verify", "--r", "2", "--d", "2", "--n", "3", "--suite", "all")
    assert res.exit_code == 0, res.output
    obj = json.loads(res.output)
    assert obj["status"] == "pass"
    assert [s["suite"] for s in obj["suites"]] == ["orthogonality", "product", "laplace", "oracle", "rahman"]


def test_verify_rahman():
    res = run("verify", "--suite", "rahman", "--N", "8")
    assert res.exit_code == 0
    assert json.loads(res.output)["params"] is None


def test_verify_budget():
    res = run("verify", "--r", "5", "--d", "1", "--n", "6", "--suite", "oracle")
    assert res.exit_code == 3
    res = run("verify", "--r", "2", "--d", "1", "--n", "3", "--suite", "oracle", "--budget", "10")
    assert res.exit_code == 3


def test_term_budget_exit_3():
    res = run("table", "--r", "5", "--d", "1", "--n", "4", "--term-budget", "100")
    assert res.exit_code == 3


def test_verify_is_deterministic():
    args = ["verify", "--r", "3", "--d", "1", "--n", "2", "--suite", "all"]
    a = run(*args, "--jobs", "1")
    b = run(*args, "--jobs", "3")
    c = run(*args, "--jobs", "3")
    assert a.exit_code == 0
    assert a.output == b.output == c.output
    assert "elapsed\": null" in a.output
    timed = json.loads(run(*args, "--timing").output)
    assert isinstance(timed["elapsed"], float)


def test_laplace_examples():
    res = run("laplace", "--r", "2", "--d", "1", "--n", "2", "--k", "1")
    assert res.exit_code == 0
    obj = json.loads(res.output)
    assert [e["lambda"] for e in obj["eigenpairs"]] == ["2", "0", "-2"]
    assert obj["verified"] is True
    assert obj["k"] == 1 and obj["params"] == {"r": 2, "d": 1, "n": 2}
    res = run("laplace", "--r", "4", "--d", "2", "--n", "3", "--k", "0")
    m = json.loads(res.output)["matrix"]
    assert m == [[int(i == j) for j in range(len(m))] for i in range(len(m))]
    res = run("laplace", "--r", "3", "--d", "3", "--n", "2", "--k", "1")
    assert all(x == 0 for row in json.loads(res.output)["matrix"] for x in row)
    res = run("laplace", "--r", "4", "--d", "1", "--n", "6", "--k", "1", "--budget", "100")
    assert res.exit_code == 3


def test_outputs_are_byte_identical():
    args = ["table", "--r", "4", "--d", "2", "--n", "2"]
    assert run(*args).output == run(*args).output
