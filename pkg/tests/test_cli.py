import json

import pytest
from click.testing import CliRunner

from main import Request, cli, format_element, format_matrix, parse_element, parse_matrix, run
from ring_core import IntegerRing, PolynomialRing
from utils import InvalidElement


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    result = runner.invoke(cli, list(args) + ["--json"])
    return result, json.loads(result.output)


def test_solve_lists_solutions(runner):
    result, out = invoke(runner, "solve", "--ring", "int", "--mod", "36", "--a", "4", "--b", "24", "--all", "--generating")
    assert result.exit_code == 0
    assert out["status"] == "ok"
    assert out["data"]["solutions"] == ["6", "15", "24", "33"]
    assert out["data"]["generating"] == ["15", "33"]


def test_unsolvable_exits_with_one(runner):
    result, out = invoke(runner, "solve", "--mod", "36", "--a", "4", "--b", "5")
    assert result.exit_code == 1
    assert out["status"] == "error"
    assert out["data"]["error"] == "Unsolvable"


def test_input_errors_exit_with_two(runner):
    result, out = invoke(runner, "solve", "--ring", "fpx:4", "--mod", "36", "--a", "4", "--b", "5")
    assert result.exit_code == 2
    assert out["data"]["error"] == "InvalidRing"
    result, out = invoke(runner, "chain", "--mod", "72", "--phi", "8,4")
    assert result.exit_code == 2
    assert out["data"]["error"] == "InvalidChain"


def test_malformed_permutation_is_an_input_error(runner):
    result, out = invoke(runner, "perm-check", "--mod", "72", "--phi", "4,8,24", "--perm", "1,x,3")
    assert result.exit_code == 2
    assert out["data"]["error"] == "InvalidElement"


def test_fractional_coefficients_are_rejected(runner):
    result, out = invoke(runner, "unit-part", "--ring", "fpx:3", "--mod", "[0,0,1.9]", "--x", "[0,2.7]")
    assert result.exit_code == 2
    assert out["status"] == "error"
    assert out["data"]["error"] == "InvalidElement"


def test_zelisko_check(runner):
    result, out = invoke(runner, "zelisko-check", "--mod", "72", "--phi", "4,8", "--matrix", "[[1,0],[2,1]]", "--brute")
    assert result.exit_code == 0
    assert out["data"]["member"] is True
    assert out["data"]["brute"] is True


def test_zelisko_witness_non_member(runner):
    result, out = invoke(runner, "zelisko-witness", "--mod", "72", "--phi", "4,8", "--matrix", "[[1,0],[1,1]]")
    assert result.exit_code == 1
    assert out["data"]["error"] == "NotAMember"


def test_zelisko_sample_is_reproducible(runner):
    args = ("zelisko-sample", "--mod", "72", "--phi", "4,8,24", "--seed", "7")
    first, second = invoke(runner, *args)[0], invoke(runner, *args)[0]
    assert first.output == second.output
    assert json.loads(first.output)["data"]["member"] is True


def test_chain_and_perm_check(runner):
    _, out = invoke(runner, "chain", "--mod", "72", "--phi", "4,8,24")
    assert out["data"]["psi"] == {"2,1": "2", "3,1": "6", "3,2": "3"}
    _, out = invoke(runner, "perm-check", "--mod", "72", "--phi", "4,8,24")
    assert out["data"]["checked"] == 6 and out["data"]["holds"] is True
    _, out = invoke(runner, "perm-check", "--mod", "72", "--phi", "4,8,24", "--perm", "3,1,2")
    assert out["data"]["holds"] is True


def test_domain_commands(runner):
    _, out = invoke(runner, "smith", "--matrix", "[[4,6],[2,8]]")
    assert out["data"]["phi"] == ["2", "10"]
    _, out = invoke(runner, "complete-row", "--row", "2,3,5")
    assert out["data"]["matrix"] == [["1", "0", "2"], ["0", "1", "0"], ["2", "3", "5"]]
    assert out["data"]["u"] == ["2", "0", "1"]
    _, out = invoke(runner, "right-assoc", "--matrix", "[[1,0],[0,2]]", "--other", "[[2,0],[0,1]]")
    assert out["data"]["right_associates"] is False


def test_polynomial_ring(runner):
    _, out = invoke(runner, "unit-part", "--ring", "fpx:3", "--mod", "[0,0,1]", "--x", "[0,2]")
    assert out["data"] == {"mu": "[0,1]", "unit": "[2]"}


def test_probe(runner):
    _, out = invoke(runner, "probe", "--mod", "72", "--a", "4", "--b", "8")
    assert out["data"]["gcd_all"] == "2"
    assert out["data"]["failing_pairs"] == [["20", "56", "4"]]
    _, out = invoke(runner, "probe", "--mod-range", "30..36")
    assert {"mod": "36", "a": "4", "b": "24", "gcd": "3"} in out["data"]["hits"]


def test_golden_passes(runner):
    result, out = invoke(runner, "golden")
    assert result.exit_code == 0
    assert out["data"]["passed"] is True


def test_human_output(runner):
    result = runner.invoke(cli, ["solve", "--mod", "36", "--a", "4", "--b", "24", "--all"])
    assert result.exit_code == 0
    assert "solutions: 6, 15, 24, 33" in result.output


def test_run_without_modulus():
    report = run(Request("solve", payload={"a": "4", "b": "24"}))
    assert report.exit_code == 2
    assert report.data["error"] == "InvalidModulus"


def test_report_json_is_deterministic():
    req = Request("solve", "int", "72", {"a": "8", "b": "24", "all": True})
    assert run(req).to_json() == run(req).to_json()


def test_element_and_matrix_codecs():
    Z, F5 = IntegerRing(), PolynomialRing(5)
    assert parse_element(Z, format_element(Z, -123456789012345678901234567890)) == -123456789012345678901234567890
    assert parse_element(F5, format_element(F5, (1, 0, 4))) == (1, 0, 4)
    assert parse_element(F5, format_element(F5, ())) == ()
    rows = ((1, -2), (3, 4))
    assert parse_matrix(Z, json.dumps(format_matrix(Z, rows))) == rows
    prows = (((1,), (0, 1)), ((), (2, 3)))
    assert parse_matrix(F5, json.dumps(format_matrix(F5, prows))) == prows
    with pytest.raises(InvalidElement):
        parse_element(Z, "[1,2]")
