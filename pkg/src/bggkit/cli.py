"""``bggkit`` command-line front end.

Exit codes: 0 when every check passes, 1 when a mathematical verdict is
negative, 2 for usage, I/O and parse errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .bggx import BGGXError, emit_bggx
from .complexes import ComplexError
from .generators import FIXTURES, bggx_kinds, generate
from .reports import COMMANDS, ReportError, build_report, render

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2 already; keep the message short
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"bggkit: error: {message}\n")


def _degree_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty degree range {text!r}")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bggkit", description="Exact cohomology of two-row diagrams of complexes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, needs_input=True):
        if needs_input:
            sp.add_argument("--input", "-i", required=True, help="BGGX file, or - for stdin")
        sp.add_argument("--output", "-o", default="-", help="write here instead of stdout")
        sp.add_argument("--format", choices=("text", "machine"), default="text")
        sp.add_argument("--degree-range", type=_degree_range, metavar="LO:HI",
                        help="restrict the degree tables in the report")
        sp.add_argument("--seed", type=int, default=0)

    helps = {
        "validate": "check d∘d = 0 (and the commuting square for diagrams)",
        "cohomology": "Betti numbers with Euler and prime-field cross-checks",
        "cone": "mapping cone, flatness and the splitting under zero induced map",
        "les": "short and long exact sequences of the cone",
        "bgg-pattern": "rank-pattern certificate, output complex and merged sequence",
        "bgg-reduce": "pseudoinverse reduction and its quasi-isomorphism certificate",
        "spectral": "both spectral sequences, knight moves and convergence",
    }
    for name in COMMANDS:
        common(sub.add_parser(name, help=helps[name]))
    g = sub.add_parser("generate", help="emit a seeded instance as BGGX")
    g.add_argument("--kind", choices=bggx_kinds(), required=True)
    g.add_argument("--name", choices=tuple(FIXTURES), default="CIRCLE3")
    g.add_argument("--mult", type=int, default=2)
    common(g, needs_input=False)
    common(sub.add_parser("selftest", help="run the acceptance suite"), needs_input=False)
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _selftest(args) -> tuple[str, int]:
    from .acceptance import run_all   # heavy; imported only when asked for

    verdicts = run_all()
    report = {
        "command": "bggkit selftest",
        "results": {v.name: {"passed": v.passed, "detail": v.detail} for v in verdicts},
        "status": "ok" if all(v.passed for v in verdicts) else "failed",
    }
    return render(report, args.format), EXIT_OK if report["status"] == "ok" else EXIT_FAILED


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        if args.command == "generate":
            out, code = emit_bggx(generate(args.kind, args.seed, args.name, args.mult)), EXIT_OK
        elif args.command == "selftest":
            out, code = _selftest(args)
        else:
            text = _read(args.input)
            report = build_report(args.command, text, argv=argv, degree_range=args.degree_range)
            out = render(report, args.format)
            code = EXIT_OK if report["status"] == "ok" else EXIT_FAILED
        _write(args.output, out)
        return code
    except (OSError, BGGXError, ReportError, ComplexError) as exc:
        sys.stderr.write(f"bggkit: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
