"""Command-line entry point.

Exit codes: 0 yes/success, 1 no, 2 usage or parse error, 3 search cap
exceeded.  Reports go to stdout as JSON, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field

from . import encodings, oracle
from .errors import CapExceeded, ProgramSyntaxError, ReservedNameError
from .families import FAMILIES
from .formula import to_json
from .lsm import solve_lsm
from .program import format_program, is_stable, parse_program
from .ssm import solve_ssm

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


@dataclass
class RunReport:
    subcommand: str
    answer: str
    model: list | None = None
    size: int | None = None
    rules: int | None = None
    stats: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)


class _Timer:
    def __init__(self):
        self.timings = {}

    def phase(self, name):
        timer = self

        class _Phase:
            def __enter__(self):
                self.start = time.perf_counter()

            def __exit__(self, *exc):
                timer.timings[name] = max(0.0, time.perf_counter() - self.start)

        return _Phase()


def _stats(program):
    return {"n": len(program.atoms), "m": program.size, "rules": len(program), "neg": len(program.neg_atoms)}


def _load(path, timer, **kw):
    with timer.phase("parse"):
        with open(path, encoding="utf-8") as fh:
            return parse_program(fh.read(), **kw)


def _answer_report(sub, program, ok, witness, timer, **extra):
    model = program.names_of(witness) if witness is not None else None
    return RunReport(
        subcommand=sub,
        answer="yes" if ok else "no",
        model=model,
        size=len(witness) if witness is not None else None,
        rules=len(program),
        stats={**_stats(program), **extra},
        timings=timer.timings,
    )


def cmd_check(args, timer):
    program = _load(args.file, timer, allow_reserved=True)
    names = [s.strip() for s in args.model.split(",") if s.strip()]
    model = program.atoms_of(names)
    with timer.phase("check"):
        ok = is_stable(program, model)
    return _answer_report("check", program, ok, model, timer)


def cmd_enumerate(args, timer):
    program = _load(args.file, timer, allow_reserved=True)
    with timer.phase("enumerate"):
        models = oracle.enumerate_stable_models(program, cap=args.cap)
    return {
        "subcommand": "enumerate",
        "answer": "yes" if models else "no",
        "models": [program.names_of(m) for m in models],
        "count": len(models),
        "stats": _stats(program),
        "timings": timer.timings,
    }, EXIT_YES


def cmd_solve_ssm(args, timer):
    program = _load(args.file, timer, allow_reserved=True)
    with timer.phase("solve"):
        ans = solve_ssm(program, args.k, mode=args.mode)
    report = _answer_report("solve-ssm", program, ans.answer, ans.witness, timer, k=args.k, mode=args.mode)
    out = asdict(report)
    out["bases_examined"] = ans.bases_examined
    return out, EXIT_YES if ans.answer else EXIT_NO


def cmd_solve_lsm(args, timer):
    program = _load(args.file, timer, allow_reserved=True)
    with timer.phase("solve"):
        ans = solve_lsm(program, args.k)
    return _answer_report(
        "solve-lsm", program, ans.answer, ans.witness, timer,
        k=args.k, neg_qk=ans.neg_size, subsets_tried=ans.subsets_tried,
    )


def cmd_encode(args, timer):
    with open(args.file, encoding="utf-8") as fh:
        text = fh.read()
    if args.kind == "pc":
        with timer.phase("parse"):
            clauses = encodings.parse_dimacs(text)
        program = encodings.encode_PC(clauses, args.k)
        return format_program(program), EXIT_YES
    with timer.phase("parse"):
        program = parse_program(text)
    encode = encodings.encode_T if args.kind == "t" else encodings.encode_Tc
    with timer.phase("encode"):
        formula = encode(program, args.k)
    return {
        "formula": to_json(formula),
        "weight_bound": encodings.weight_bound(args.k),
        "atoms": encodings.atom_count(len(program.atoms), args.k),
    }, EXIT_YES


def bench_family(kind: str, sizes, k: int, solver: str = "lsm") -> list:
    """Time ``solver`` on generated instances of ``kind``, one report per size."""
    make = FAMILIES[kind]
    solve = solve_lsm if solver == "lsm" else solve_ssm
    reports = []
    for n in sizes:
        program = make(n)
        timer = _Timer()
        with timer.phase("solve"):
            ans = solve(program, k)
        report = _answer_report(f"bench-{solver}", program, ans.answer, ans.witness, timer, family=kind, size=n, k=k)
        reports.append(report)
    return reports


def cmd_bench(args, timer):
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    reports = bench_family(args.family, sizes, args.k, args.solver)
    return {"subcommand": "bench", "reports": [asdict(r) for r in reports]}, EXIT_YES


def _nonneg(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="indent JSON output")

    parser = argparse.ArgumentParser(prog="kstable", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="test whether a set of atoms is a stable model")
    p.add_argument("file")
    p.add_argument("--model", required=True, help="comma-separated atom names")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("enumerate", parents=[common], help="list all stable models by brute force")
    p.add_argument("file")
    p.add_argument("--cap", type=_nonneg, default=oracle.DEFAULT_CAP)
    p.set_defaults(run=cmd_enumerate)

    p = sub.add_parser("solve-ssm", parents=[common], help="stable model with at most k atoms")
    p.add_argument("file")
    p.add_argument("--k", type=_nonneg, required=True)
    p.add_argument("--mode", choices=["optimized", "literal"], default="optimized")
    p.set_defaults(run=cmd_solve_ssm)

    p = sub.add_parser("solve-lsm", parents=[common], help="stable model with at least |P|-k atoms")
    p.add_argument("file")
    p.add_argument("--k", type=_nonneg, required=True)
    p.set_defaults(run=cmd_solve_lsm)

    p = sub.add_parser("encode", parents=[common], help="emit T(P), T^c(P) or P^C")
    p.add_argument("kind", choices=["t", "tc", "pc"])
    p.add_argument("--k", type=_nonneg, required=True)
    p.add_argument("file")
    p.set_defaults(run=cmd_encode)

    p = sub.add_parser("bench", parents=[common], help="time a solver on a generated family")
    p.add_argument("solver", choices=["ssm", "lsm"])
    p.add_argument("--k", type=_nonneg, required=True)
    p.add_argument("--family", choices=sorted(FAMILIES), required=True)
    p.add_argument("--sizes", required=True, help="comma-separated sizes")
    p.set_defaults(run=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    timer = _Timer()
    try:
        result = args.run(args, timer)
    except CapExceeded as exc:
        print(f"kstable: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ProgramSyntaxError, ReservedNameError, ValueError, OSError) as exc:
        print(f"kstable: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if isinstance(result, RunReport):
        result = (asdict(result), EXIT_YES if result.answer == "yes" else EXIT_NO)
    payload, code = result
    if isinstance(payload, str):
        sys.stdout.write(payload)
    else:
        json.dump(payload, sys.stdout, indent=2 if args.pretty else None, sort_keys=False)
        sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
