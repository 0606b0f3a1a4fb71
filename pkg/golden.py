"""
Golden claims: the worked numeric examples over Z_6, Z_36 and Z_72 rerun
against the library. Each claim records PASS or FAIL; failures are data,
never exceptions.
"""

import logging
from typing import Callable, Dict, List

from linsolve import enumerate_solutions, gcd_solution_probe, generating_solutions, is_generating, solve
from residue import Modulus, annihilator, associate_unit, associates, decompose, is_unit
from ring_core import IntegerRing
from utils import AlgebraError

logger = logging.getLogger(__name__)

Z = IntegerRing()

# (a, b) -> (solutions, generating solutions) in Z_72
Z72_TABLE = {
    (4, 8): ([2, 20, 38, 56], [2, 38]),
    (8, 24): ([3, 12, 21, 30, 39, 48, 57, 66], [3, 21, 39, 57]),
    (4, 24): ([6, 24, 42, 60], [6, 42]),
}


def _reps(residues) -> List[int]:
    return [x.rep for x in residues]


class GoldenRunner:
    """Runs every claim block and keeps the per-claim results."""

    def __init__(self):
        self.results: List[Dict[str, str]] = []
        self.errors: List[str] = []

    def log_claim(self, name: str, status: str, message: str = "") -> None:
        self.results.append({"claim": name, "status": status, "message": message})
        if status == "PASS":
            logger.info(f"{name}: {message}")
        else:
            logger.error(f"{name}: {message}")
            self.errors.append(f"{name}: {message}")

    def check(self, name: str, claim: Callable[[], bool], message: str) -> None:
        try:
            ok = bool(claim())
        except AlgebraError as e:
            self.log_claim(name, "FAIL", f"{message} ({type(e).__name__}: {e})")
            return
        self.log_claim(name, "PASS" if ok else "FAIL", message)

    # --- blocks ---
    def unit_part_block(self):
        z6, z36 = Modulus(6, Z), Modulus(36, Z)

        def four_mod_6():
            g, e = decompose(z6(4))
            return g.rep == 2 and e.rep == 5 and (g * e).rep == 4

        def eight_mod_36():
            g, e = decompose(z36(8))
            return g.rep == 4 and e.rep in (11, 29) and is_unit(e) and (g * e).rep == 8

        self.check("Z6_UNIT_PART", four_mod_6, "4 = 2*5 in Z_6")
        self.check("Z36_UNIT_PART", eight_mod_36, "8 = 4*e in Z_36 with e in {11, 29}")

    def z36_block(self):
        z36 = Modulus(36, Z)
        a, b = z36(4), z36(24)
        self.check("Z36_SOLUTIONS", lambda: _reps(enumerate_solutions(solve(a, b))) == [6, 15, 24, 33],
                   "4x = 24 in Z_36 has solutions {6, 15, 24, 33}")
        self.check("Z36_ANNIHILATOR",
                   lambda: annihilator(a).rep == 9
                   and sorted(_reps(enumerate_solutions(solve(a, z36(0))))) == [0, 9, 18, 27],
                   "Ann(4) = {0, 9, 18, 27}")
        self.check("Z36_GENERATING", lambda: _reps(generating_solutions(solve(a, b))) == [15, 33],
                   "generating solutions are {15, 33}")
        self.check("Z36_ASSOCIATES",
                   lambda: associates(z36(15), z36(33))
                   and associate_unit(z36(33), z36(15)).rep in (7, 31)
                   and (z36(15) * associate_unit(z36(33), z36(15))).rep == 33,
                   "33 = 15*e with e in {7, 31}")

    def z72_block(self):
        z72 = Modulus(72, Z)
        for (a, b), (sols, gens) in Z72_TABLE.items():
            eq = (z72(a), z72(b))
            self.check(f"Z72_{a}x={b}_SOLUTIONS",
                       lambda eq=eq, sols=sols: _reps(enumerate_solutions(solve(*eq))) == sols,
                       f"{a}x = {b} has solutions {sols}")
            self.check(f"Z72_{a}x={b}_GENERATING",
                       lambda eq=eq, gens=gens: _reps(generating_solutions(solve(*eq))) == gens,
                       f"{a}x = {b} has generating solutions {gens}")

        def non_generating():
            s = solve(z72(4), z72(24))
            return (z72(2) * z72(12)).rep == 24 and s.contains(z72(24)) and not is_generating(s, z72(24))

        self.check("Z72_NON_GENERATING", non_generating, "24 = 2*12 solves 4x = 24 but is not generating")

    def probe_block(self):
        z72 = Modulus(72, Z)

        def gcd_all():
            report = gcd_solution_probe(z72(4), z72(8))
            return report.gcd_all == 2 and report.gcd_all_is_solution

        def failing_pair():
            report = gcd_solution_probe(z72(4), z72(8))
            return any((x.rep, y.rep, g) == (20, 56, 4) for x, y, g in report.failing_pairs)

        self.check("PROBE_GCD_ALL", gcd_all, "gcd of all solutions of 4x = 8 in Z_72 is 2, a solution")
        self.check("PROBE_PAIR", failing_pair, "gcd(20, 56) = 4 is not a solution")

    def run_all(self) -> List[Dict[str, str]]:
        self.unit_part_block()
        self.z36_block()
        self.z72_block()
        self.probe_block()
        passed = sum(1 for r in self.results if r["status"] == "PASS")
        logger.info(f"golden claims: {passed}/{len(self.results)} passed")
        return self.results

    @property
    def passed(self) -> bool:
        return not self.errors


def golden() -> GoldenRunner:
    runner = GoldenRunner()
    runner.run_all()
    return runner
