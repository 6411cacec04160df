"""Command-line interface.

Every subcommand prints one JSON document on stdout.  Exit status is 0 on
success, 1 for a domain error (the document then carries ``error.code``)
and 2 for a usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import expr as ex
from .errors import GaussDiophError, ReservedName, SuiteFailed, UsageError
from .gadgets import (
    enumerate_pell,
    gaussian_pell_box_scan,
    integrality_counterexample_scan,
    make_integrality_witness,
    nonzero_witness,
    verify_integrality_witness,
    witness_from_json,
)
from .gaussian import GaussianInt
from .lucas import LucasParams, find_zero_index, lucas_pair, lucas_pair_mod
from .reduction import full_assignment, lift_witness, reduce_to_gaussian
from .suites import SUITES, run_suite


@dataclass
class CommandResult:
    status: str
    payload: dict
    human_summary: str
    verbose: bool = False

    @property
    def exit_code(self) -> int:
        if self.status == "ok":
            return 0
        return 2 if self.payload["error"]["code"] == UsageError.code else 1

    def to_text(self) -> str:
        return json.dumps(self.payload, indent=2, sort_keys=True) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise UsageError(message)


def _gi(n: int) -> dict:
    return GaussianInt(n).to_json()


def _read_poly(path: str) -> ex.Expr:
    return ex.parse(Path(path).read_text(encoding="utf-8"))


def _load_assignment(path: str) -> dict[str, GaussianInt]:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        raise ValueError("assignment file must hold a JSON object")
    if "i" in data:
        raise ReservedName("'i' is the imaginary unit and cannot be assigned")
    return {name: GaussianInt.from_json(value) for name, value in data.items()}


def cmd_lucas(args) -> tuple[dict, str]:
    params = LucasParams(args.A, args.B)
    pair = lucas_pair(params, args.n) if args.mod is None else lucas_pair_mod(params, args.n, args.mod)
    payload = {"A": str(args.A), "B": str(args.B), "n": args.n,
               "mod": None if args.mod is None else str(args.mod),
               "low": str(pair.low), "high": str(pair.high)}
    return payload, f"u_{args.n} = {pair.low}, u_{args.n + 1} = {pair.high}"


def cmd_lucas_index(args) -> tuple[dict, str]:
    j = find_zero_index(LucasParams(args.A, args.B), args.mod, require_unit_next=args.unit)
    return ({"A": str(args.A), "B": str(args.B), "mod": str(args.mod), "unit": args.unit, "index": j},
            f"smallest index: {j}")


def cmd_witness(args) -> tuple[dict, str]:
    wit = make_integrality_witness(args.z)
    return wit.to_json(), f"witness for z={args.z}: n={wit.n}, v={wit.v}"


def cmd_verify(args) -> tuple[dict, str]:
    data = json.loads(Path(args.file).read_text(encoding="utf-8"))
    z = verify_integrality_witness(*witness_from_json(data))
    return {"verified": True, "z": _gi(z)}, f"verified: z = {z} is a rational integer"


def cmd_nonzero(args) -> tuple[dict, str]:
    s, t = nonzero_witness(args.m)
    return {"m": str(args.m), "s": str(s), "t": str(t)}, f"{args.m} = (2*{s}+1)*(3*{t}+1)"


def cmd_pell(args) -> tuple[dict, str]:
    sols = enumerate_pell(args.A, args.bound)
    rows = [{"x": str(s.x), "y": str(s.y), "index": s.index} for s in sols]
    return {"A": str(args.A), "bound": str(args.bound), "solutions": rows}, f"{len(rows)} solutions"


def cmd_scan_pell_gaussian(args) -> tuple[dict, str]:
    pairs = gaussian_pell_box_scan(args.bound, workers=args.workers)
    payload = {
        "bound": args.bound,
        "pairs": [[x.to_json(), y.to_json()] for x, y in pairs],
        "all_real": all(x.is_rational and y.is_rational for x, y in pairs),
    }
    return payload, f"{len(pairs)} pairs, all real: {payload['all_real']}"


def cmd_scan_counterexample(args) -> tuple[dict, str]:
    hit = integrality_counterexample_scan(args.bound, workers=args.workers)
    found = None if hit is None else dict(zip("vwxyz", (g.to_json() for g in hit)))
    return {"bound": args.bound, "counterexample": found}, "no counterexample" if hit is None else "COUNTEREXAMPLE"


def cmd_eval(args) -> tuple[dict, str]:
    value = ex.evaluate(_read_poly(args.input), _load_assignment(args.assign))
    return {"value": value.to_json()}, f"value = {value}"


def cmd_expand(args) -> tuple[dict, str]:
    poly = ex.expand(_read_poly(args.input), args.limit)
    return poly.to_json(), f"{len(poly.terms)} terms"


def cmd_reduce(args) -> tuple[dict, str]:
    out = reduce_to_gaussian(_read_poly(args.input), per_k_nonzero=args.per_k_nonzero)
    Path(args.out).write_text(ex.render(out.P) + "\n", encoding="utf-8")
    manifest = out.manifest()
    if args.manifest:
        Path(args.manifest).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n",
                                       encoding="utf-8")
    return manifest, f"{len(out.unknowns)} unknowns, wrote {args.out}"


def cmd_lift(args) -> tuple[dict, str]:
    f = _read_poly(args.input)
    try:
        zvals = [int(part) for part in args.z.split(",")]
    except ValueError:
        raise UsageError(f"--z expects comma-separated integers, got {args.z!r}") from None
    assignment = lift_witness(f, args.a, zvals, per_k_nonzero=args.per_k_nonzero)
    P = reduce_to_gaussian(f, per_k_nonzero=args.per_k_nonzero).P
    value = ex.evaluate(P, full_assignment(assignment, args.a))
    payload = {
        "a": str(args.a),
        "assignment": {name: g.to_json() for name, g in assignment.items()},
        "P_value": value.to_json(),
    }
    return payload, f"lifted {len(assignment)} unknowns; P = {value}"


def cmd_check(args) -> tuple[dict, str]:
    report = run_suite(args.suite, args.scale, workers=args.workers)
    passed = sum(t.passed for t in report.checks.values())
    return report.to_json(), f"suite {args.suite}: {passed} checks passed"


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gaussdioph", description=__doc__.splitlines()[0])
    parser.add_argument("--verbose", action="store_true", help="print a human summary on stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("lucas", help="u_n and u_(n+1) of a Lucas sequence")
    p.add_argument("--A", type=int, required=True)
    p.add_argument("--B", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mod", type=int)
    p.set_defaults(func=cmd_lucas)

    p = sub.add_parser("lucas-index", help="smallest j >= 1 with u_j = 0 mod M")
    p.add_argument("--A", type=int, required=True)
    p.add_argument("--B", type=int, required=True)
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--unit", action="store_true", help="also require u_(j+1) = 1 mod M")
    p.set_defaults(func=cmd_lucas_index)

    p = sub.add_parser("witness", help="integrality witness for an integer z")
    p.add_argument("--z", type=int, required=True)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="verify a witness JSON file")
    p.add_argument("--file", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("nonzero", help="write m as (2s+1)(3t+1)")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_nonzero)

    p = sub.add_parser("pell", help="solutions of x^2 - Axy + y^2 = 1")
    p.add_argument("--A", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(func=cmd_pell)

    for name, func in (("scan-pell-gaussian", cmd_scan_pell_gaussian),
                       ("scan-counterexample", cmd_scan_counterexample)):
        p = sub.add_parser(name)
        p.add_argument("--bound", type=int, required=True)
        p.add_argument("--workers", type=int, default=1)
        p.set_defaults(func=func)

    p = sub.add_parser("eval", help="evaluate a .poly file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--assign", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("expand", help="expand a .poly file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--limit", type=int, required=True)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("reduce", help="compile f in z0..z10 to the 52-unknown P")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--manifest")
    p.add_argument("--per-k-nonzero", action="store_true",
                   help="encode each v_k != 0 separately (72 unknowns)")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("lift", help="lift an integer solution of f to a solution of P")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--z", required=True, help="z1,...,z10")
    p.add_argument("--per-k-nonzero", action="store_true")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("check", help="run an invariant suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--scale", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_check)
    return parser


def _error(exc: BaseException, code: str) -> CommandResult:
    err = {"code": code, "message": str(exc)}
    if isinstance(exc, SuiteFailed):
        err["counterexample"] = exc.counterexample
    return CommandResult("error", {"error": err}, f"error [{code}]: {exc}")


def dispatch(argv: Sequence[str]) -> CommandResult:
    # argparse writes its own usage text to stderr; keep that out of results
    try:
        with contextlib.redirect_stderr(io.StringIO()):
            args = build_parser().parse_args(list(argv))
    except UsageError as exc:
        return _error(exc, UsageError.code)
    try:
        payload, summary = args.func(args)
    except GaussDiophError as exc:
        return _error(exc, exc.code)
    except (OSError, ValueError) as exc:
        return _error(exc, "BadInput")
    return CommandResult("ok", payload, summary, verbose=args.verbose)


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    result = dispatch(argv)
    sys.stdout.write(result.to_text())
    if result.status != "ok" or result.verbose:
        print(result.human_summary, file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
