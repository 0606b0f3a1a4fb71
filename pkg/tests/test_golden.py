import golden as claims
from golden import GoldenRunner, golden
from utils import NotAUnit, Unsolvable


def test_every_claim_passes():
    runner = golden()
    failed = [r for r in runner.results if r["status"] != "PASS"]
    assert not failed, failed
    assert runner.passed


def test_claim_blocks_are_complete():
    runner = GoldenRunner()
    runner.run_all()
    names = [r["claim"] for r in runner.results]
    assert len(names) == len(set(names))
    assert sum(n.startswith("Z36_") for n in names) == 5
    assert sum(n.startswith("Z72_") for n in names) == 7
    assert sum(n.startswith("PROBE_") for n in names) == 2


def test_failures_are_recorded_not_raised():
    runner = GoldenRunner()
    runner.check("ALWAYS_FALSE", lambda: False, "a claim that fails")
    runner.check("RAISES", _raise_not_a_unit, "a claim that raises")
    assert [r["status"] for r in runner.results] == ["FAIL", "FAIL"]
    assert not runner.passed


def test_broken_solver_fails_claims_instead_of_raising(monkeypatch):
    monkeypatch.setattr(claims, "solve", _raise_unsolvable)
    monkeypatch.setattr(claims, "gcd_solution_probe", _raise_unsolvable)
    runner = GoldenRunner()
    runner.run_all()
    status = {r["claim"]: r["status"] for r in runner.results}
    assert len(status) == 15
    assert all(status[n] == "FAIL" for n in status if n.startswith(("Z72_", "PROBE_")))
    assert status["Z36_SOLUTIONS"] == "FAIL"
    assert status["Z6_UNIT_PART"] == "PASS"
    assert not runner.passed


def _raise_not_a_unit():
    raise NotAUnit("6 is not a unit modulo 36")


def _raise_unsolvable(*args, **kwargs):
    raise Unsolvable("no solution", gcd=4, rhs=5)
