"""Command-line interface.

Exit codes: 0 ok, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import criterion, descent, frey, prime_ideals, sunit
from .real_cyclotomic import build_field, verify_lemma_cycl

SCHEMA_VERSION = "1.0"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class CommandResult:
    ok: bool
    payload: dict
    text: str
    name: str = ""
    command: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "ok" if self.ok else "failed"

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "name": self.name,
            "command": self.command,
            "status": self.status,
            "payload": self.payload,
        }


class UsageError(Exception):
    pass


def load_schema() -> dict:
    ref = resources.files("cyclofermat").joinpath("data").joinpath("cli_output.schema.json")
    return json.loads(ref.read_text())


def validate_output(doc: dict) -> None:
    """Raise jsonschema.ValidationError if ``doc`` does not match the shipped schema."""
    import jsonschema

    jsonschema.validate(doc, load_schema())


def _field(r: int):
    prime_ideals.require_prime(r, "r")
    if r < 5:
        raise UsageError(f"r = {r} must be at least 5")
    return build_field(r)


def _table(args):
    if args.table:
        return criterion.load_narrow_class_table(args.table)
    return criterion.load_default_table()


def cmd_field(args) -> CommandResult:
    fld = _field(args.r)
    disc = fld.discriminant()
    payload = {
        "r": fld.r,
        "degree": fld.degree,
        "min_poly": list(fld.min_poly.coeffs),
        "discriminant": disc,
        "discriminant_sign": 1 if disc > 0 else -1,
        "discriminant_check": fld.check_discriminant(),
    }
    text = (
        f"K = Q(zeta_{fld.r} + zeta_{fld.r}^-1), d = {fld.degree}\n"
        f"P_r = {fld.min_poly}\n"
        f"disc = {disc} (r^(d-1) check: {payload['discriminant_check']})"
    )
    return CommandResult(payload["discriminant_check"], payload, text)


def cmd_split(args) -> CommandResult:
    fld = _field(args.r)
    factors = prime_ideals.split_prime(fld, args.p)
    payload = {"r": fld.r, "p": args.p, "factors": [q.to_dict() for q in factors]}
    lines = [f"{args.p} O_K in K_{fld.r}:"]
    lines += [f"  {q.label()}  e={q.e} f={q.f}" for q in factors]
    return CommandResult(True, payload, "\n".join(lines))


def cmd_lemma21(args) -> CommandResult:
    fld = _field(args.r)
    rep = verify_lemma_cycl(fld, ideals=True)
    lines = [f"r = {fld.r}: {len(rep.checks)} checks, {'all pass' if rep.ok else 'FAILURES'}"]
    for c in rep.checks:
        mark = "ok" if c["ok"] else "FAIL"
        lines.append(f"  {mark:4} {c['kind']:7} N({c['element']}) = {c['norm']}")
    return CommandResult(rep.ok, rep.to_dict(), "\n".join(lines))


def cmd_descent(args) -> CommandResult:
    fld = _field(args.r)
    rep = descent.verify_descent(fld, args.a0, args.b0)
    w = rep.witness
    lines = [
        f"(a0 + b0 i)^r = {w.A} + {w.B} i,  c = {w.c}",
        f"case {rep.case}, v_r(beta_j) = {rep.r_valuations}",
        f"A = a0 * prod beta_j: {rep.product_identity}",
        f"pairwise coprime away from r: {rep.coprime_away_from_r}",
    ]
    lines += [f"  beta_{j} = {b}" for j, b in enumerate(w.betas, start=1)]
    return CommandResult(rep.ok, rep.to_dict(), "\n".join(lines))


def cmd_frey(args) -> CommandResult:
    fld = _field(args.r)
    w = descent.make_witness(fld, args.a0, args.b0)
    params = frey.frey_parameters(fld, w, args.j, args.k, args.case, p=args.p, n=args.n, k_r=args.k_r)
    curve = frey.frey_curve(params)
    payload = curve.to_dict()

    (rprime,) = prime_ideals.split_prime(fld, fld.r)
    primes = prime_ideals.split_prime(fld, 2) + [rprime]
    level = None
    if args.p is not None:
        level = frey.conductor_and_level(fld, curve, args.p, pth_power_content=args.pth_power_content)
        primes = list(dict.fromkeys(primes + level.conductor))
    payload["reduction"] = [
        {"prime": q.label(), "type": frey.classify_reduction(curve, q).value} for q in primes
    ]
    two = []
    for P in prime_ideals.split_prime(fld, 2):
        v2 = prime_ideals.valuation(2, P)
        entry = {"prime": P.label(), "v_j": prime_ideals.valuation(curve.j_inv, P), "v_2": v2}
        if args.p is not None and args.n is not None:
            entry["expected"] = 4 * (1 - args.p * args.n) * v2
        two.append(entry)
    payload["j_valuation_above_2"] = two
    payload["level"] = None if level is None else level.to_dict()

    lines = [
        f"case {params.case}, j = {params.j}, k = {params.k}",
        f"A = {params.A}",
        f"B = {params.B}",
        f"C = {params.C}",
        f"c4 = {curve.c4}",
        f"disc = {curve.disc}",
        f"j = {curve.j_inv}",
    ]
    lines += [f"  {e['prime']}: {e['type']}" for e in payload["reduction"]]
    if level is not None:
        lines.append("conductor: " + " ".join(q.label() for q in level.conductor))
        lines.append(f"level n_{args.p}: " + " ".join(q.label() for q in level.level))
        if level.unfactored:
            lines += [f"unfactored block {b.residue}: semistable {b.semistable}" for b in level.unfactored]
    return CommandResult(True, payload, "\n".join(lines))


def cmd_sunit(args) -> CommandResult:
    fld = _field(args.r)
    spec = "S2" if args.set == "2" else "S2r"
    genset = None
    if args.gens:
        genset = sunit.load_generator_file(fld, args.gens, spec)
    rep = sunit.certify_field(fld, spec, args.bound, genset)
    lines = [
        f"K_{fld.r}, {spec}, bound {args.bound}: {len(rep.solutions)} solutions in {rep.n_orbits} orbits",
        f"valuation bound holds on all: {rep.all_hold}",
    ]
    if rep.disclaimer:
        lines.append(rep.disclaimer)
    for s in rep.solutions:
        lines.append(f"  [{s.orbit_tag}] lambda = {s.lam}, mu = {s.mu}, v = {list(s.valuations)}")
    return CommandResult(rep.all_hold, rep.to_dict(), "\n".join(lines))


def _record_line(rec: criterion.EligibilityRecord) -> str:
    verdict = {True: "eligible", False: "not eligible", None: "unknown"}[rec.overall]
    why = f" ({'; '.join(rec.reasons)})" if rec.reasons else ""
    return f"r = {rec.r}: {verdict}{why}"


def cmd_eligible(args) -> CommandResult:
    rec = criterion.eligibility(args.r, _table(args))
    return CommandResult(True, rec.to_dict(), _record_line(rec))


def cmd_scan(args) -> CommandResult:
    table = _table(args)
    eligible = criterion.scan(args.max, table)
    records = [criterion.eligibility(r, table) for r in table.primes() if r <= args.max]
    payload = {"max": args.max, "eligible": eligible, "records": [x.to_dict() for x in records]}
    text = f"eligible r <= {args.max}: {', '.join(map(str, eligible))}"
    return CommandResult(True, payload, text)


COMMANDS: dict[str, Callable] = {
    "field": cmd_field,
    "split": cmd_split,
    "lemma21": cmd_lemma21,
    "descent": cmd_descent,
    "frey": cmd_frey,
    "sunit": cmd_sunit,
    "eligible": cmd_eligible,
    "scan": cmd_scan,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON")
    common.add_argument("--table", default=argparse.SUPPRESS, help="narrow class number CSV")

    parser = _Parser(prog="cyclofermat", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="emit JSON")
    parser.add_argument("--table", default=None, help="narrow class number CSV")
    sub = parser.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    p = sub.add_parser("field", parents=[common], help="minimal polynomial and discriminant")
    p.add_argument("r", type=int)

    p = sub.add_parser("split", parents=[common], help="factor p O_K")
    p.add_argument("r", type=int)
    p.add_argument("p", type=int)

    p = sub.add_parser("lemma21", parents=[common], help="unit and norm checks on t_j")
    p.add_argument("r", type=int)

    p = sub.add_parser("descent", parents=[common], help="beta_j factorization of A")
    for name in ("r", "a0", "b0"):
        p.add_argument(name, type=int)

    p = sub.add_parser("frey", parents=[common], help="Frey curve invariants and level")
    for name in ("r", "a0", "b0", "j", "k"):
        p.add_argument(name, type=int)
    p.add_argument("--case", choices=frey.CASES, default=None)
    p.add_argument("--p", type=int, default=None, help="exponent p (enables the level)")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k-r", dest="k_r", type=int, default=None)
    p.add_argument("--pth-power-content", action="store_true")

    p = sub.add_parser("sunit", parents=[common], help="bounded S-unit search")
    p.add_argument("r", type=int)
    p.add_argument("--set", choices=("2", "2r"), default="2")
    p.add_argument("--bound", type=int, default=3)
    p.add_argument("--gens", default=None, help="generator file")

    p = sub.add_parser("eligible", parents=[common], help="eligibility record for r")
    p.add_argument("r", type=int)

    p = sub.add_parser("scan", parents=[common], help="eligible primes up to --max")
    p.add_argument("--max", type=int, default=200)
    return parser


def run(argv: Optional[list[str]] = None) -> tuple[int, str, str]:
    """(exit code, stdout, stderr) without touching the process streams."""
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return EXIT_USAGE, "", f"error: {exc}\n"
    except SystemExit as exc:
        return int(exc.code or 0), "", ""
    try:
        result = COMMANDS[args.cmd](args)
    except (UsageError, ValueError, FileNotFoundError, KeyError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        return EXIT_USAGE, "", f"error: {msg}\n"
    except ArithmeticError as exc:
        return EXIT_FAIL, "", f"verification failed: {exc}\n"
    result.command = argv
    result.name = args.cmd
    if args.json:
        out = json.dumps(result.to_json(), indent=2, sort_keys=True)
    else:
        out = result.text
    return (EXIT_OK if result.ok else EXIT_FAIL), out + "\n", ""


def main(argv: Optional[list[str]] = None) -> int:
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
