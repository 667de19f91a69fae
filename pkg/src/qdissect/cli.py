"""Command-line front end.

    qdissect expand b --precision 20
    qdissect dissect --steps 4 --mod 2187
    qdissect verify th1.1 --precision 20000
    qdissect reproduce-paper --format json --out report.json
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

from . import lab
from .claims import REGISTRY, run_claim
from .dissector import dissect_chain, normalize_display, rep_for_b
from .errors import QSeriesError, UnknownClaim
from .theta import TAGS, ThetaName, make_theta

SERIES = ("b", "a", "p") + TAGS


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _series(name: str, precision: int, modulus: Optional[int], power: int):
    if name in ("a", "b", "p"):
        gen = {"a": lab.gen_a, "b": lab.gen_b, "p": lab.gen_p}[name]
        s = gen(-(-precision // power), modulus)
        return s.substitute_power(power).truncate(precision) if power > 1 else s
    return make_theta(ThetaName(name, power), precision, modulus)


def cmd_expand(args) -> int:
    precision = args.precision or 20
    s = _series(args.name, precision, args.mod, args.power)
    if args.format == "json":
        _emit(json.dumps(s.to_json()), args.out)
    else:
        lo = min(s.valuation, 0)
        lines = [f"{args.name}(q^{args.power})" + (f" mod {args.mod}" if args.mod else "")]
        lines += [f"{n:>6}  {s.coefficient(n)}" for n in range(lo, s.precision)]
        _emit("\n".join(lines), args.out)
    return 0


def cmd_dissect(args) -> int:
    steps = args.steps
    if steps < 0:
        print("error: --steps must be nonnegative", file=sys.stderr)
        return 2
    try:
        chain = dissect_chain(rep_for_b(), steps, args.mod)
        final = chain.final if chain.steps else rep_for_b()
        if args.mod is not None and not chain.steps:
            final = final.reduce_mod(args.mod)
        disp = normalize_display(final, args.mod)
    except QSeriesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        payload = {
            "progression": list(chain.progression),
            "ells": list(chain.ells),
            "display": disp.to_json(),
        }
        _emit(json.dumps(payload, indent=2), args.out)
    else:
        m, r = chain.progression
        head = f"progression ({m}, {r}); alpha={disp.alpha}, E={disp.two_exponent}, beta={disp.beta}"
        _emit(head + "\n" + disp.to_text(chain.progression), args.out)
    return 0


def _run(item):
    cid, rng, mutate = item
    return run_claim(cid, rng, mutate)


def _report_text(reports) -> str:
    lines = [r.summary() for r in reports]
    failed = sum(not r.passed for r in reports)
    lines.append(f"{len(reports) - failed}/{len(reports)} claims pass")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    try:
        report = run_claim(args.claim, args.precision)
    except UnknownClaim:
        print(f"error: unknown claim {args.claim!r}; known: {', '.join(REGISTRY)}", file=sys.stderr)
        return 2
    if args.format == "json":
        _emit(json.dumps(report.to_json(), indent=2), args.out)
    else:
        _emit(report.summary(), args.out)
    return 0 if report.passed else 1


def cmd_reproduce(args) -> int:
    mutate = set(args.mutate or ())
    unknown = mutate - set(REGISTRY)
    if unknown:
        print(f"error: unknown claim(s) {sorted(unknown)}", file=sys.stderr)
        return 2
    work = [(cid, None, cid in mutate) for cid in REGISTRY]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            reports = list(pool.map(_run, work))
    else:
        reports = [_run(w) for w in work]
    if args.format == "json":
        _emit(json.dumps([r.to_json() for r in reports], indent=2), args.out)
    else:
        _emit(_report_text(reports), args.out)
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=None,
                        help="number of coefficients / checked range (claim default if omitted)")
    common.add_argument("--mod", type=int, default=None, help="reduce modulo M")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", default=None, help="write output to PATH instead of stdout")

    parser = argparse.ArgumentParser(prog="qdissect", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="expand a named series")
    p.add_argument("name", choices=SERIES)
    p.add_argument("--power", type=int, default=1, help="evaluate at q^POWER")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("dissect", parents=[common], help="run the 3-dissection chain for b(n)")
    p.add_argument("--steps", type=int, default=1)
    p.set_defaults(func=cmd_dissect)

    p = sub.add_parser("verify", parents=[common], help="check one registered claim")
    p.add_argument("claim")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reproduce-paper", parents=[common], help="check every registered claim")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--mutate", action="append", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_reproduce)

    sub.add_parser("claims", help="list registered claims").set_defaults(
        func=lambda a: print("\n".join(f"{c.id:<16} {c.description}" for c in REGISTRY.values())) or 0)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
