"""Command-line front end.

Exit codes: 0 every asserted property holds, 1 an assertion failed, 2 the
input is invalid. Analyses outside their supported class are reported as
skipped and only fail the run under ``--strict``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import builders, formats, hopf, locality, series, structure
from .errors import (
    AxiomFailure,
    ConstraintViolation,
    HopfLabError,
    InvalidInput,
    PreconditionError,
    UnsupportedClass,
)
from .report import VerificationReport

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2
JSON_SCHEMA = "hopflab.cli/1"

EXAMPLES = ["A", "B", "heisenberg", "witt-line", "truncated-line", "divided-line",
            "cyclic-group", "smash-demo"]


def seed() -> int:
    return int(os.environ.get("HOPFLAB_SEED", "0"))


class Outcome:
    def __init__(self, command: str):
        self.command = command
        self.reports: list[VerificationReport] = []
        self.skipped: list[str] = []
        self.data: dict = {}
        self.text: list[str] = []

    def code(self, strict: bool) -> int:
        if any(not r.overall for r in self.reports):
            return EXIT_FAIL
        if strict and self.skipped:
            return EXIT_FAIL
        return EXIT_OK

    def emit(self, as_json: bool, strict: bool, out) -> int:
        code = self.code(strict)
        if as_json:
            doc = {
                "schema": JSON_SCHEMA,
                "command": self.command,
                "data": self.data,
                "reports": [r.to_dict() for r in self.reports],
                "skipped": self.skipped,
                "exit_code": code,
            }
            out.write(json.dumps(doc, sort_keys=True, indent=2, default=str) + "\n")
        else:
            for line in self.text:
                out.write(line + "\n")
            for r in self.reports:
                out.write(r.summary() + "\n")
            for s in self.skipped:
                out.write(f"skipped: {s}\n")
        return code


def _read(path: str):
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return formats.loads(text)


def _verified(H, out: Outcome) -> bool:
    rep = hopf.verify_axioms(H)
    if not rep.overall:
        out.reports.append(rep)
        return False
    return True


def _write(text: str, dest: str | None) -> None:
    if dest in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(dest, "w", encoding="utf-8") as fh:
            fh.write(text)


# ---------------------------------------------------------------- commands


def cmd_check(args, out: Outcome) -> None:
    H = _read(args.file)
    out.reports.append(hopf.verify_axioms(H))


def cmd_analyze(args, out: Outcome) -> None:
    H = _read(args.file)
    a = locality.analyze(H)
    out.data = a.to_dict()
    out.reports.extend(a.reports.values())
    out.skipped.extend(a.skipped)
    out.text.extend(f"{k}: {v}" for k, v in a.data.items())


def cmd_dual(args, out: Outcome) -> None:
    H = _read(args.file)
    if not _verified(H, out):
        return
    _write(formats.dumps(hopf.dual(H)), args.output)
    out.command = "dual"


def build_example(args):
    p = args.p
    name = args.name
    if name == "A":
        builders.example_A_presentation(p, args.sigma, args.lambda_, args.mu)  # constraint check
        return formats.family_doc("A", p, args.sigma, args.lambda_, args.mu)
    if name == "B":
        return formats.family_doc("B", p, args.sigma)
    if name == "heisenberg":
        return builders.heisenberg(p)
    if name == "witt-line":
        return builders.witt_line(p)
    if name == "truncated-line":
        return builders.truncated_line(p)
    if name == "divided-line":
        return builders.divided_line(p)
    if name == "cyclic-group":
        if args.n is None:
            raise InvalidInput("cyclic-group needs an order N")
        return builders.group_algebra(builders.cyclic_group(args.n), p)
    if name == "smash-demo":
        return builders.smash_demo(p) if p != 2 else builders.smash_trivial_demo()
    raise InvalidInput(f"unknown example {name!r}")


def cmd_example(args, out: Outcome) -> None:
    obj = build_example(args)
    if isinstance(obj, dict):
        text = formats.canonical_json(obj) if args.presentation else formats.dumps(formats.loads(json.dumps(obj)))
    else:
        text = formats.dumps(obj)
    _write(text, args.output)


def cmd_coradical(args, out: Outcome) -> None:
    H = _read(args.file)
    if not _verified(H, out):
        return
    try:
        chain = structure.coradical_filtration_dual(H)
    except UnsupportedClass as e:
        out.skipped.append(f"coradical filtration: {e}")
        return
    out.data = {
        "dims": list(chain.dims),
        "bases": [[[int(x) for x in row] for row in t.basis] for t in chain.terms],
    }
    out.text.append(f"coradical filtration dims: {list(chain.dims)}")
    for n, t in enumerate(chain.terms):
        out.text.append(f"H_{n}: " + ", ".join(_fmt(H, row) for row in t.basis))


def _fmt(H, row) -> str:
    terms = []
    for i, c in enumerate(row):
        if c:
            terms.append(H.labels[i] if c == 1 else f"{int(c)}*{H.labels[i]}")
    return " + ".join(terms) or "0"


def cmd_series(args, out: Outcome) -> None:
    H = _read(args.file)
    if not _verified(H, out):
        return
    try:
        if args.kind == "upper":
            ch = series.upper_power_series(H)
        else:
            ch = series.lower_power_series(H)
    except (UnsupportedClass, PreconditionError, ValueError) as e:
        out.skipped.append(f"{args.kind} series: {e}")
        return
    out.data = {"kind": ch.kind, "dims": list(ch.dims), "stabilized_at": ch.stabilized_at}
    out.text.append(f"{ch.kind} power series dims: {list(ch.dims)} (stable from {ch.stabilized_at})")


def cmd_verify(args, out: Outcome) -> None:
    H = _read(args.file)
    if not _verified(H, out):
        return
    what = args.what
    try:
        if what == "theorem-a":
            ta = locality.theorem_a_check(H)
            out.data = ta.to_dict()
            out.reports.append(ta.to_report())
        elif what == "corollary-b":
            out.reports.append(locality.corollary_b_check(H))
        elif what == "duality":
            out.reports.append(series.verify_duality(H))
        elif what == "radical-lemmas":
            out.reports.append(series.verify_radical_lemmas(H))
        elif what == "factors":
            out.reports.append(series.verify_factor_dims(H))
            out.reports.append(series.verify_factor_equivalences(H))
        elif what == "pointed":
            out.reports.append(locality.pointed_decomposition_check(H))
        elif what == "subalgebras":
            out.reports.append(locality.subalgebra_locality_check(H, args.trials, seed()))
    except (UnsupportedClass, PreconditionError) as e:
        out.skipped.append(f"{what}: {e}")


# ---------------------------------------------------------------- parser


def parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hopflab", description="Finite-dimensional Hopf algebras over GF(p).")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, file=True):
        if file:
            sp.add_argument("file", nargs="?", default="-",
                            help="hsc/1 or hpres/1 document, '-' or omitted for stdin")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--strict", action="store_true", help="treat skipped analyses as failures")

    common(sub.add_parser("check", help="verify the Hopf axioms"))
    common(sub.add_parser("analyze", help="full structural analysis"))
    sp = sub.add_parser("dual", help="write the dual Hopf algebra")
    common(sp)
    sp.add_argument("-o", "--output")
    sp = sub.add_parser("example", help="generate a shipped fixture")
    sp.add_argument("name", choices=EXAMPLES)
    sp.add_argument("n", nargs="?", type=int, help="group order for cyclic-group")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--sigma", type=int, default=0)
    sp.add_argument("--lambda", dest="lambda_", type=int, default=0)
    sp.add_argument("--mu", type=int, default=0)
    sp.add_argument("--presentation", action="store_true", help="emit hpres/1 for A and B")
    sp.add_argument("-o", "--output")
    sp.set_defaults(json=False, strict=False)
    common(sub.add_parser("coradical", help="coradical filtration"))
    sp = sub.add_parser("series", help="upper or lower power series")
    sp.add_argument("kind", choices=["upper", "lower"])
    common(sp)
    sp = sub.add_parser("verify", help="check a structural statement")
    sp.add_argument("what", choices=["theorem-a", "corollary-b", "duality", "radical-lemmas",
                                     "factors", "pointed", "subalgebras"])
    common(sp)
    sp.add_argument("--trials", type=int, default=20)
    return ap


COMMANDS = {
    "check": cmd_check,
    "analyze": cmd_analyze,
    "dual": cmd_dual,
    "example": cmd_example,
    "coradical": cmd_coradical,
    "series": cmd_series,
    "verify": cmd_verify,
}


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_INVALID if e.code else EXIT_OK
    out = Outcome(args.command)
    try:
        COMMANDS[args.command](args, out)
    except AxiomFailure as e:
        if e.report is not None:
            out.reports.append(e.report)
        else:
            sys.stderr.write(f"error: {e}\n")
            return EXIT_FAIL
    except (InvalidInput, ConstraintViolation, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INVALID
    except HopfLabError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_FAIL
    if args.command in ("example", "dual") and not out.reports:
        return EXIT_OK
    return out.emit(args.json, args.strict, stdout)


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
