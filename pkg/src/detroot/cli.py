"""Command line front end.

Exit codes: 0 when an answer was produced (a composite verdict included),
1 when the mathematics refused (the error code names why), 2 for usage
errors. ``--json`` prints one document with every integer as a decimal
string; ``--trace`` adds the algorithm's internal choices.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .bigring import Ring
from .errors import DetrootError, PrecondViolated
from .periods import Precision, build_tower, eval_mod_p_traced, tower_document
from .proth import Prime, prove
from .roots import cube_root
from .selftest import run_suites, scaling_bench
from .sqrt_engine import STRATEGIES, SqrtConfig, classify_case, factor_qminus1, resolve_zeta, sqrt_mod

__all__ = ["OutputDoc", "build_parser", "main", "run"]


@dataclass
class OutputDoc:
    command: str
    inputs: dict
    result: dict | None = None
    error: dict | None = None
    trace: dict | None = None
    lines: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "error" if self.error is not None else "ok"

    def as_dict(self) -> dict:
        doc = {"command": self.command, "inputs": self.inputs, "status": self.status}
        if self.error is not None:
            doc["error"] = self.error
        else:
            doc["result"] = self.result
        if self.trace is not None:
            doc["trace"] = self.trace
        return doc

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2)


def _str_ints(obj):
    """Render every integer as a decimal string, recursively."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _str_ints(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_str_ints(v) for v in obj]
    return obj


def _trace_lines(trace: dict) -> list[str]:
    return [f"trace: {key}={value}" for key, value in trace.items()]


def cmd_sqrt(args, doc: OutputDoc) -> None:
    ring = Ring(args.modulus)
    config = SqrtConfig(bound=args.bound, zeta_strategy=args.strategy)
    res = sqrt_mod(ring, args.beta, config)
    roots = [r.value for r in res.roots]
    doc.result = {"roots": [str(x) for x in roots]}
    doc.lines.append(f"roots: {roots[0]} {roots[1]}")
    trace = res.trace.as_dict()
    if ring.modulus >= 5:
        trace["case"] = classify_case(ring.modulus, factor_qminus1(ring.modulus, args.bound)).value
    doc.trace = trace


def _has_order(z: int, order: int, m: int) -> bool:
    if order == 4:
        return z * z % m == m - 1
    return z != 1 and pow(z, order, m) == 1


def cmd_zeta(args, doc: OutputDoc) -> None:
    ring = Ring(args.modulus)
    zeta, used = resolve_zeta(ring, args.order, SqrtConfig(zeta_strategy=args.strategy))
    if not _has_order(zeta.value, args.order, ring.modulus):
        raise PrecondViolated(f"{zeta.value} does not have order {args.order} mod {ring.modulus}")
    doc.result = {"zeta": str(zeta.value), "order": str(args.order)}
    doc.trace = {"strategy": used}
    doc.lines += [f"zeta: {zeta.value}", f"order: {args.order}"]


def cmd_cuberoot(args, doc: OutputDoc) -> None:
    ring = Ring(args.modulus)
    c = cube_root(ring, args.value).value
    doc.result = {"cuberoot": str(c)}
    doc.lines.append(f"cuberoot: {c}")


def cmd_proth(args, doc: OutputDoc) -> None:
    verdict = prove(args.N)
    if isinstance(verdict, Prime):
        witness = verdict.certificate.witness
        doc.result = {"verdict": "prime", "witness": str(witness)}
        doc.lines.append(f"prime, witness {witness}" if args.certificate else "prime")
        doc.trace = {"chain": [str(a) for a in verdict.chain]}
    else:
        doc.result = {"verdict": "composite", "step": verdict.step, "reason": verdict.reason}
        if verdict.factor is not None:
            doc.result["factor"] = str(verdict.factor)
        doc.lines.append("composite")
        doc.trace = {"step": verdict.step, "reason": verdict.reason}


def _tower_lines(tower) -> list[str]:
    lines = [f"q: {tower.q}", f"n: {tower.n}", f"sigma_base: {tower.sigma_base}"]
    for m, level in enumerate(tower.levels):
        lines.append(f"level {m} (anchor {level.anchor}):")
        for i, node in enumerate(level.nodes):
            refs = [node.sum, *node.cube_args, *node.anchor_terms]
            shown = [f"#{r}" if isinstance(r, int) else str(r) for r in refs]
            lines.append(
                f"  {i}: sum {shown[0]}; cubes {shown[1]}, {shown[2]}; anchor terms {shown[3]}, {shown[4]}"
            )
    for r in tower.relations:
        lines.append(f"relation: g({r.left}) h({r.right}) = {r.product}")
    return lines


def cmd_periods(args, doc: OutputDoc) -> None:
    prec = Precision(args.precision) if args.precision else Precision()
    tower = build_tower(args.q, prec)
    doc.result = {"tower": tower_document(tower)}
    doc.lines += _tower_lines(tower)
    if args.modulus is not None:
        z, choices = eval_mod_p_traced(tower, Ring(args.modulus))
        doc.result["zeta"] = str(z.value)
        doc.trace = {"cube_root_choices": [str(k) for k in choices]}
        doc.lines.append(f"zeta: {z.value}")


def cmd_selftest(args, doc: OutputDoc) -> None:
    results = run_suites(args.max_prime, args.max_proth)
    failed = [r.name for r in results if not r.passed]
    doc.result = {
        "suites": [
            {
                "name": r.name,
                "passed": r.passed,
                "cases": str(r.cases),
                "seconds": f"{r.seconds:.3f}",
                "detail": r.detail,
            }
            for r in results
        ],
        "passed": not failed,
    }
    doc.lines += [r.line() for r in results]
    if args.bench:
        bench = scaling_bench()
        doc.result["bench"] = {
            "points": [{"bits": str(b), "seconds": f"{s:.6f}"} for b, s in bench.points],
            "slope": None if bench.slope is None else f"{bench.slope:.3f}",
        }
        doc.lines += ["scaling bench (informational):", *bench.lines()]
    if failed:
        doc.lines.append(f"FAILED: {', '.join(failed)}")
    else:
        doc.lines.append("all suites passed")


COMMANDS = {
    "sqrt": cmd_sqrt,
    "zeta": cmd_zeta,
    "cuberoot": cmd_cuberoot,
    "proth": cmd_proth,
    "periods": cmd_periods,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    # Global flags are accepted before or after the subcommand.
    common = argparse.ArgumentParser(add_help=False)
    flag = dict(action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--json", help="print a JSON document", **flag)
    common.add_argument("--trace", help="include the algorithm trace", **flag)

    parser = argparse.ArgumentParser(prog="detroot", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sqrt", parents=[common], help="square roots modulo a prime")
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--beta", type=int, required=True)
    p.add_argument("--bound", type=int, default=10**6, help="trial-division bound for q - 1")
    p.add_argument("--strategy", choices=STRATEGIES, default="search", help="how roots of unity are obtained")

    p = sub.add_parser("zeta", parents=[common], help="primitive root of unity of order 4 or an odd prime")
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--strategy", choices=STRATEGIES, default="search")

    p = sub.add_parser("cuberoot", parents=[common], help="cube root for p = 1 mod 4, p = 4 or 7 mod 9")
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--value", type=int, required=True)

    p = sub.add_parser("proth", parents=[common], help="prove N = 2^e t + 1 (2^e > t) prime or composite")
    p.add_argument("N", type=int)
    p.add_argument("--certificate", action="store_true", help="print the witness")

    p = sub.add_parser(
        "periods", parents=[common], help="nested cube roots for roots of unity of order 2*3^n + 1"
    )
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--modulus", type=int, help="also reduce modulo this prime")
    p.add_argument("--precision", type=int, help="starting precision in bits (default 256)")

    p = sub.add_parser("selftest", parents=[common], help="run the acceptance suites")
    p.add_argument("--max-prime", type=int, default=5000)
    p.add_argument("--max-proth", type=int, default=10**6)
    p.add_argument("--bench", action="store_true", help="also run the informational scaling bench")
    return parser


def _inputs(args) -> dict:
    skip = {"command", "json", "trace"}
    return _str_ints({k: v for k, v in vars(args).items() if k not in skip and v is not None})


def run(args) -> tuple[OutputDoc, int]:
    doc = OutputDoc(args.command, _inputs(args))
    try:
        COMMANDS[args.command](args, doc)
    except DetrootError as exc:
        doc.error = {"code": exc.code, "message": str(exc)}
        doc.result = None
        doc.trace = None
        return doc, 1
    if args.command == "selftest" and not doc.result["passed"]:
        return doc, 1
    return doc, 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    use_json = getattr(args, "json", False)
    want_trace = getattr(args, "trace", False)
    doc, code = run(args)
    if not want_trace:
        doc.trace = None
    if use_json:
        print(doc.to_json())
    elif doc.error is not None:
        print(f"error: {doc.error['code']}: {doc.error['message']}", file=sys.stderr)
    else:
        print("\n".join(doc.lines))
        if doc.trace:
            print("\n".join(_trace_lines(doc.trace)))
    return code


if __name__ == "__main__":
    sys.exit(main())
