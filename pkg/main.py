# --- START OF FILE main.py ---

import json
import logging
import sys
from dataclasses import dataclass, field
from itertools import permutations
from typing import Any, Callable, Dict, List, Optional, Tuple

import click

# --- Local Imports ---
from utils import (
    EXIT_INPUT_ERROR, EXIT_MATH_FAILURE, EXIT_OK,
    AlgebraError, DimensionMismatch, InvalidElement, InvalidModulus, PreconditionViolated,
)
import linsolve
import residue
import smith_fact
import zelisko
from golden import golden
from residue import Modulus, Residue
from ring_core import DomainElement, RingCtx, ring_from_spec

logger = logging.getLogger(__name__)

DOMAIN_COMMANDS = ("smith", "right-assoc", "complete-row")


# ==============================================================
# ===== Codecs =================================================
# ==============================================================
def format_element(ctx: RingCtx, a: DomainElement) -> str:
    if ctx.p is None:
        return str(a)
    return json.dumps(list(a), separators=(",", ":"))


def _coerce(ctx: RingCtx, value: Any) -> DomainElement:
    if isinstance(value, str):
        return parse_element(ctx, value)
    return ctx.element(value)


def parse_element(ctx: RingCtx, text: str) -> DomainElement:
    """Decimal integer, or a coefficient array such as ``[1,0,1]`` over F_p[x]."""
    raw = (text or "").strip()
    if not raw:
        raise InvalidElement("empty element")
    if raw.startswith("["):
        if ctx.p is None:
            raise InvalidElement(f"coefficient array '{raw}' given for the integers")
        try:
            return ctx.element(json.loads(raw))
        except json.JSONDecodeError:
            raise InvalidElement(f"malformed coefficient array '{raw}'") from None
    if ctx.p is None:
        return ctx.element(raw)
    try:
        return ctx.element(int(raw))
    except ValueError:
        raise InvalidElement(f"not an integer or coefficient array: '{raw}'") from None


def parse_list(ctx: RingCtx, text: str) -> List[DomainElement]:
    """``4,8,24`` or a JSON array such as ``[[1],[0,1]]``."""
    raw = (text or "").strip()
    if raw.startswith("["):
        try:
            values = json.loads(raw)
        except json.JSONDecodeError:
            raise InvalidElement(f"malformed list '{raw}'") from None
        if not isinstance(values, list):
            raise InvalidElement(f"expected a list, got '{raw}'")
        return [_coerce(ctx, v) for v in values]
    return [parse_element(ctx, part) for part in raw.split(",") if part.strip()]


def parse_matrix(ctx: RingCtx, text: str) -> Tuple[Tuple[DomainElement, ...], ...]:
    try:
        rows = json.loads(text)
    except (json.JSONDecodeError, TypeError):
        raise InvalidElement(f"malformed matrix '{text}'") from None
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InvalidElement(f"a matrix is a list of rows, got '{text}'")
    if not rows or any(len(r) != len(rows) for r in rows):
        raise DimensionMismatch(f"expected a square matrix, got row lengths {[len(r) for r in rows]}")
    return tuple(tuple(_coerce(ctx, v) for v in row) for row in rows)


def format_matrix(ctx: RingCtx, rows) -> List[List[str]]:
    return [[format_element(ctx, x.rep if isinstance(x, Residue) else x) for x in row] for row in rows]


# ==============================================================
# ===== Requests and reports ===================================
# ==============================================================
@dataclass
class Request:
    command: str
    ring: str = "int"
    mod: Optional[str] = None
    payload: Dict[str, Any] = field(default_factory=dict)


@dataclass
class Report:
    status: str
    data: Dict[str, Any] = field(default_factory=dict)
    diagnostics: List[str] = field(default_factory=list)
    exit_code: int = EXIT_OK

    def to_json(self) -> str:
        return json.dumps({"status": self.status, "data": self.data, "diagnostics": self.diagnostics},
                          sort_keys=True, ensure_ascii=False)


class _Call:
    """Parsed operands shared by the command handlers."""

    def __init__(self, request: Request):
        self.request = request
        self.payload = request.payload
        self.ctx = ring_from_spec(request.ring)
        self.diagnostics: List[str] = []
        self.mod: Optional[Modulus] = None
        if request.command not in DOMAIN_COMMANDS + ("golden", "probe"):
            if request.mod is None:
                raise InvalidModulus(f"'{request.command}' needs --mod")
            self.mod = Modulus(parse_element(self.ctx, request.mod), self.ctx)

    @property
    def bound(self) -> Optional[int]:
        return self.payload.get("bound")

    def fmt(self, a) -> str:
        return format_element(self.ctx, a.rep if isinstance(a, Residue) else a)

    def residue(self, key: str) -> Residue:
        if self.payload.get(key) is None:
            raise PreconditionViolated(f"missing operand --{key}")
        return self.mod(parse_element(self.ctx, self.payload[key]))

    def phi(self) -> zelisko.DiagPhi:
        return zelisko.DiagPhi(linsolve.chain_system([self.mod(v) for v in parse_list(self.ctx, self.payload["phi"])]))

    def domain_matrix(self, key: str = "matrix"):
        text = self.payload.get(key)
        if text is None:
            raise PreconditionViolated(f"missing matrix operand --{key}")
        return parse_matrix(self.ctx, text)

    def residue_matrix(self) -> zelisko.ResidueMatrix:
        return zelisko.ResidueMatrix.from_reps(self.mod, self.domain_matrix())


# --- R_m commands ---
def _cmd_solve(call: _Call) -> Dict[str, Any]:
    s = linsolve.solve(call.residue("a"), call.residue("b"))
    data = {"gen": call.fmt(s.gen), "ann": call.fmt(s.ann), "count": s.size}
    if call.payload.get("all"):
        data["solutions"] = [call.fmt(x) for x in linsolve.enumerate_solutions(s, call.bound)]
    if call.payload.get("generating"):
        data["generating"] = [call.fmt(x) for x in linsolve.generating_solutions(s, call.bound)]
    return data


def _cmd_generating(call: _Call) -> Dict[str, Any]:
    s = linsolve.solve(call.residue("a"), call.residue("b"))
    return {"generating": [call.fmt(x) for x in linsolve.generating_solutions(s, call.bound)]}


def _cmd_min_gen(call: _Call) -> Dict[str, Any]:
    return {"min_generating": call.fmt(linsolve.min_generating(call.residue("a"), call.residue("b"), call.bound))}


def _cmd_ann(call: _Call) -> Dict[str, Any]:
    a = call.residue("a")
    gen = residue.annihilator(a)
    data = {"ann": call.fmt(gen)}
    if call.payload.get("all"):
        zero_rhs = linsolve.solve(a, call.mod.zero)
        data["elements"] = [call.fmt(x) for x in linsolve.enumerate_solutions(zero_rhs, call.bound)]
    return data


def _cmd_assoc(call: _Call) -> Dict[str, Any]:
    x, y = call.residue("x"), call.residue("y")
    data = {"associates": residue.associates(x, y)}
    if data["associates"]:
        data["unit"] = call.fmt(residue.associate_unit(x, y))
    return data


def _cmd_unit_part(call: _Call) -> Dict[str, Any]:
    g, e = residue.decompose(call.residue("x"))
    return {"mu": call.fmt(g), "unit": call.fmt(e)}


def _cmd_chain(call: _Call) -> Dict[str, Any]:
    cs = call.phi().cs
    return {"phi": [call.fmt(f) for f in cs.phi],
            "psi": {f"{i + 1},{j + 1}": call.fmt(v) for (i, j), v in sorted(cs.psi_table.items())}}


def _cmd_perm_check(call: _Call) -> Dict[str, Any]:
    cs = call.phi().cs
    if call.payload.get("perm"):
        try:
            sigma = [int(k) - 1 for k in call.payload["perm"].split(",")]
        except ValueError:
            raise InvalidElement(f"permutation must be comma-separated integers: '{call.payload['perm']}'") from None
        return {"perm": [k + 1 for k in sigma], "holds": linsolve.verify_perm_identity(cs, sigma)}
    failures = [[k + 1 for k in sigma] for sigma in permutations(range(cs.n))
                if not linsolve.verify_perm_identity(cs, sigma)]
    return {"checked": len(list(permutations(range(cs.n)))), "failures": failures, "holds": not failures}


def _cmd_zelisko_check(call: _Call) -> Dict[str, Any]:
    H, Phi = call.residue_matrix(), call.phi()
    data = {"member": zelisko.membership(H, Phi), "invertible": zelisko.is_invertible(H)}
    if call.payload.get("brute"):
        data["brute"] = zelisko.brute_membership(H, Phi)
        if data["brute"] != data["member"]:
            call.diagnostics.append("brute-force search disagrees with the divisibility test")
    return data


def _cmd_zelisko_witness(call: _Call) -> Dict[str, Any]:
    S = zelisko.witness(call.residue_matrix(), call.phi())
    return {"witness": format_matrix(call.ctx, S.rows), "det": call.fmt(zelisko.det(S))}


def _require_seed(call: _Call) -> int:
    seed = call.payload.get("seed")
    if seed is None:
        raise PreconditionViolated("random sampling needs --seed")
    return seed


def _cmd_zelisko_sample(call: _Call) -> Dict[str, Any]:
    Phi = call.phi()
    H = zelisko.sample(Phi, _require_seed(call))
    return {"matrix": format_matrix(call.ctx, H.rows), "member": zelisko.membership(H, Phi)}


def _cmd_psi_det(call: _Call) -> Dict[str, Any]:
    cs = call.phi().cs
    if call.payload.get("matrix") is not None:
        h = call.residue_matrix()
    else:
        h = zelisko.sample(zelisko.DiagPhi(linsolve.chain_system([call.mod.one] * cs.n)), _require_seed(call))
    return {"matrix": format_matrix(call.ctx, h.rows), "holds": zelisko.psi_det_identity(cs, h)}


def _cmd_probe(call: _Call) -> Dict[str, Any]:
    ctx = call.ctx
    if call.payload.get("mod_range"):
        if ctx.p is not None:
            raise PreconditionViolated("--mod-range sweeps integer moduli only")
        lo, _, hi = call.payload["mod_range"].partition("..")
        try:
            moduli = range(int(lo), int(hi) + 1)
        except ValueError:
            raise InvalidElement(f"malformed range '{call.payload['mod_range']}', expected LO..HI") from None
        hits = linsolve.probe_sweep(ctx, [m for m in moduli if m > 1], call.bound)
        return {"hits": [{"mod": call.fmt(r.a.mod.m), "a": call.fmt(r.a), "b": call.fmt(r.b),
                          "gcd": call.fmt(r.gcd_all)} for r in hits]}
    if call.request.mod is None:
        raise InvalidModulus("'probe' needs --mod or --mod-range")
    call.mod = Modulus(parse_element(ctx, call.request.mod), ctx)
    report = linsolve.gcd_solution_probe(call.residue("a"), call.residue("b"), call.bound)
    if report.truncated:
        call.diagnostics.append("failing pair list truncated")
    return {"solutions": [call.fmt(x) for x in report.solutions],
            "gcd_all": call.fmt(report.gcd_all),
            "gcd_all_is_solution": report.gcd_all_is_solution,
            "failing_pairs": [[call.fmt(x), call.fmt(y), call.fmt(g)] for x, y, g in report.failing_pairs]}


# --- domain commands ---
def _cmd_smith(call: _Call) -> Dict[str, Any]:
    result = smith_fact.smith(call.ctx, call.domain_matrix())
    return {"phi": [call.fmt(f) for f in result.phi],
            "P": format_matrix(call.ctx, result.P), "Q": format_matrix(call.ctx, result.Q)}


def _cmd_right_assoc(call: _Call) -> Dict[str, Any]:
    A, B = call.domain_matrix("matrix"), call.domain_matrix("other")
    data = {"right_associates": smith_fact.right_associate(call.ctx, A, B)}
    if smith_fact.right_associate_oracle(call.ctx, A, B) != data["right_associates"]:
        call.diagnostics.append("direct A = B*U test disagrees")
    return data


def _cmd_complete_row(call: _Call) -> Dict[str, Any]:
    if not call.payload.get("row"):
        raise PreconditionViolated("missing operand --row")
    M = smith_fact.complete_row(call.ctx, parse_list(call.ctx, call.payload["row"]))
    n = len(M)
    return {"matrix": format_matrix(call.ctx, M),
            "u": [call.fmt(M[0][n - 1])] + [call.fmt(M[k][n - 1]) for k in range(1, n - 1)] + [call.fmt(M[0][0])]}


def _cmd_golden(call: _Call) -> Dict[str, Any]:
    runner = golden()
    for e in runner.errors:
        call.diagnostics.append(e)
    return {"claims": runner.results, "passed": runner.passed}


KNOWN_HANDLERS: Dict[str, Callable[[_Call], Dict[str, Any]]] = {
    "solve": _cmd_solve, "generating": _cmd_generating, "min-gen": _cmd_min_gen,
    "ann": _cmd_ann, "assoc": _cmd_assoc, "unit-part": _cmd_unit_part,
    "chain": _cmd_chain, "perm-check": _cmd_perm_check,
    "zelisko-check": _cmd_zelisko_check, "zelisko-witness": _cmd_zelisko_witness,
    "zelisko-sample": _cmd_zelisko_sample, "psi-det": _cmd_psi_det,
    "smith": _cmd_smith, "right-assoc": _cmd_right_assoc, "complete-row": _cmd_complete_row,
    "probe": _cmd_probe, "golden": _cmd_golden,
}


def run(request: Request) -> Report:
    """Dispatch one request; every failure becomes an error report."""
    handler = KNOWN_HANDLERS.get(request.command)
    if handler is None:
        return Report("error", {"error": "UnknownCommand"}, [f"unknown command '{request.command}'"],
                      EXIT_INPUT_ERROR)
    try:
        call = _Call(request)
        data = handler(call)
    except AlgebraError as e:
        logger.info(f"{request.command}: {type(e).__name__}: {e}")
        return Report("error", {"error": type(e).__name__}, [str(e)], e.exit_code)
    except Exception as e:
        logger.error(f"Unexpected error running '{request.command}'", exc_info=True)
        return Report("error", {"error": type(e).__name__}, [str(e)], EXIT_MATH_FAILURE)

    exit_code = EXIT_OK
    if request.command == "golden" and not data["passed"]:
        exit_code = EXIT_MATH_FAILURE
    status = "ok" if exit_code == EXIT_OK else "error"
    return Report(status, data, call.diagnostics, exit_code)


# ==============================================================
# ===== Human-readable output ==================================
# ==============================================================
def _human(report: Report) -> str:
    lines = []
    if report.status != "ok":
        lines.append(f"error: {report.data.get('error', 'failure')}")
    for key in sorted(report.data):
        value = report.data[key]
        if key == "claims":
            for claim in value:
                lines.append(f"  [{claim['status']}] {claim['claim']}: {claim['message']}")
        elif isinstance(value, list) and value and isinstance(value[0], list):
            lines.append(f"{key}:")
            width = max(len(str(x)) for row in value for x in row)
            for row in value:
                lines.append("  " + "  ".join(str(x).rjust(width) for x in row))
        elif isinstance(value, list):
            lines.append(f"{key}: {', '.join(str(v) for v in value) if value else '-'}")
        elif isinstance(value, dict):
            lines.append(f"{key}:")
            for k, v in value.items():
                lines.append(f"  {k}: {v}")
        elif key != "error":
            lines.append(f"{key}: {value}")
    for note in report.diagnostics:
        lines.append(f"note: {note}")
    return "\n".join(lines)


def _emit(request: Request, as_json: bool) -> None:
    report = run(request)
    click.echo(report.to_json() if as_json else _human(report))
    sys.exit(report.exit_code)


# ==============================================================
# ===== Command line ===========================================
# ==============================================================
def _ring_options(with_mod: bool = True):
    def decorate(f):
        f = click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")(f)
        f = click.option("--bound", type=int, default=None, help="Cap on enumerated elements.")(f)
        if with_mod:
            f = click.option("--mod", "modulus", default=None, help="Modulus m.")(f)
        f = click.option("--ring", default="int", show_default=True, help="'int' or 'fpx:<p>'.")(f)
        return f
    return decorate


def _matrix_text(matrix: Optional[str], matrix_file: Optional[str]) -> Optional[str]:
    if matrix_file:
        with open(matrix_file, "r", encoding="utf-8") as fh:
            return fh.read()
    return matrix


@click.group()
def cli():
    """Linear equations and Zelisko groups over R/mR."""


@cli.command()
@_ring_options()
@click.option("--a", required=True)
@click.option("--b", required=True)
@click.option("--all", "show_all", is_flag=True, help="List every solution.")
@click.option("--generating", is_flag=True, help="List the generating solutions.")
def solve(ring, modulus, bound, as_json, a, b, show_all, generating):
    """Solve a*x = b in R_m."""
    _emit(Request("solve", ring, modulus, {"a": a, "b": b, "all": show_all, "generating": generating,
                                            "bound": bound}), as_json)


@cli.command()
@_ring_options()
@click.option("--a", required=True)
@click.option("--b", required=True)
def generating(ring, modulus, bound, as_json, a, b):
    """Generating solutions of a*x = b."""
    _emit(Request("generating", ring, modulus, {"a": a, "b": b, "bound": bound}), as_json)


@cli.command("min-gen")
@_ring_options()
@click.option("--a", required=True)
@click.option("--b", required=True)
def min_gen(ring, modulus, bound, as_json, a, b):
    """First generating solution in enumeration order."""
    _emit(Request("min-gen", ring, modulus, {"a": a, "b": b, "bound": bound}), as_json)


@cli.command()
@_ring_options()
@click.option("--a", required=True)
@click.option("--all", "show_all", is_flag=True)
def ann(ring, modulus, bound, as_json, a, show_all):
    """Annihilator of a."""
    _emit(Request("ann", ring, modulus, {"a": a, "all": show_all, "bound": bound}), as_json)


@cli.command()
@_ring_options()
@click.option("--x", required=True)
@click.option("--y", required=True)
def assoc(ring, modulus, bound, as_json, x, y):
    """Associate test with the connecting unit."""
    _emit(Request("assoc", ring, modulus, {"x": x, "y": y, "bound": bound}), as_json)


@cli.command("unit-part")
@_ring_options()
@click.option("--x", required=True)
def unit_part(ring, modulus, bound, as_json, x):
    _emit(Request("unit-part", ring, modulus, {"x": x, "bound": bound}), as_json)


@cli.command()
@_ring_options()
@click.option("--phi", required=True, help="Divisibility chain, e.g. 4,8,24.")
def chain(ring, modulus, bound, as_json, phi):
    """psi table of a divisibility chain."""
    _emit(Request("chain", ring, modulus, {"phi": phi, "bound": bound}), as_json)


@cli.command("perm-check")
@_ring_options()
@click.option("--phi", required=True)
@click.option("--perm", default=None, help="One-based permutation; all of S_n when omitted.")
def perm_check(ring, modulus, bound, as_json, phi, perm):
    _emit(Request("perm-check", ring, modulus, {"phi": phi, "perm": perm, "bound": bound}), as_json)


def _zelisko_command(name: str, help_text: str, extra=()):
    def register(f):
        f = click.option("--matrix-file", type=click.Path(exists=True, dir_okay=False), default=None)(f)
        f = click.option("--matrix", default=None, help="Nested JSON array.")(f)
        f = click.option("--phi", required=True)(f)
        for opt in extra:
            f = opt(f)
        f = _ring_options()(f)
        return cli.command(name, help=help_text)(f)
    return register


@_zelisko_command("zelisko-check", "Decide membership in the Zelisko group.",
                  extra=(click.option("--brute", is_flag=True, help="Also run the brute-force search."),))
def zelisko_check(ring, modulus, bound, as_json, brute, phi, matrix, matrix_file):
    _emit(Request("zelisko-check", ring, modulus,
                  {"phi": phi, "matrix": _matrix_text(matrix, matrix_file), "brute": brute, "bound": bound}), as_json)


@_zelisko_command("zelisko-witness", "Invertible S with H*Phi = Phi*S.")
def zelisko_witness(ring, modulus, bound, as_json, phi, matrix, matrix_file):
    _emit(Request("zelisko-witness", ring, modulus,
                  {"phi": phi, "matrix": _matrix_text(matrix, matrix_file), "bound": bound}), as_json)


@cli.command("zelisko-sample")
@_ring_options()
@click.option("--phi", required=True)
@click.option("--seed", type=int, required=True)
def zelisko_sample(ring, modulus, bound, as_json, phi, seed):
    """Random member of the Zelisko group."""
    _emit(Request("zelisko-sample", ring, modulus, {"phi": phi, "seed": seed, "bound": bound}), as_json)


@_zelisko_command("psi-det", "Compare the determinants of the psi-weighted lower and upper forms.",
                  extra=(click.option("--seed", type=int, default=None),))
def psi_det(ring, modulus, bound, as_json, seed, phi, matrix, matrix_file):
    _emit(Request("psi-det", ring, modulus,
                  {"phi": phi, "matrix": _matrix_text(matrix, matrix_file), "seed": seed, "bound": bound}), as_json)


@cli.command()
@_ring_options(with_mod=False)
@click.option("--matrix", default=None)
@click.option("--matrix-file", type=click.Path(exists=True, dir_okay=False), default=None)
def smith(ring, bound, as_json, matrix, matrix_file):
    """Smith normal form with transforming matrices."""
    _emit(Request("smith", ring, None, {"matrix": _matrix_text(matrix, matrix_file), "bound": bound}), as_json)


@cli.command("right-assoc")
@_ring_options(with_mod=False)
@click.option("--matrix", required=True, help="A")
@click.option("--other", required=True, help="B")
def right_assoc(ring, bound, as_json, matrix, other):
    """Is A = B*U for an invertible U?"""
    _emit(Request("right-assoc", ring, None, {"matrix": matrix, "other": other, "bound": bound}), as_json)


@cli.command("complete-row")
@_ring_options(with_mod=False)
@click.option("--row", required=True, help="Coprime entries a_1..a_n, a_1 != 0.")
def complete_row(ring, bound, as_json, row):
    _emit(Request("complete-row", ring, None, {"row": row, "bound": bound}), as_json)


@cli.command()
@_ring_options()
@click.option("--a", default=None)
@click.option("--b", default=None)
@click.option("--mod-range", default=None, help="LO..HI, integers only.")
def probe(ring, modulus, bound, as_json, a, b, mod_range):
    """Is the gcd of all solutions again a solution?"""
    _emit(Request("probe", ring, modulus, {"a": a, "b": b, "mod_range": mod_range, "bound": bound}), as_json)


@cli.command("golden")
@click.option("--json", "as_json", is_flag=True)
def golden_cmd(as_json):
    """Rerun the worked examples."""
    _emit(Request("golden"), as_json)


def main() -> None:
    cli()


if __name__ == '__main__':
    main()

# --- END OF FILE main.py ---
