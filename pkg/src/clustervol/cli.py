"""Command-line front end ``cvol``.

Exit codes: 0 success, 2 invalid input, 3 no geometric solution,
4 internal inconsistency (non-integral flattening, residual failure).
"""

from __future__ import annotations

import argparse
import re
import sys
from typing import Sequence

from .dilog import Flattening, bloch_wigner, li2, rogers_hat
from .errors import ClusterVolError, DegenerateError, InvalidInput, NoGeometricSolution, WrongFamily
from .report import VolumeReport, bridge_report, torus_report
from .solver import RootSearchConfig
from .torus import parse_torus_word, solve_torus
from .twobridge import continued_fraction, is_double_twist, solve_two_bridge, spec_from_cf

__all__ = ["main", "run", "parse_complex", "build_parser"]

EXIT_OK, EXIT_INPUT, EXIT_NO_GEOMETRIC, EXIT_INCONSISTENT = 0, 2, 3, 4

# residuals above this mean the reported numbers cannot be trusted
RESIDUAL_LIMIT = 1e-8

_COMPLEX = re.compile(r"^\s*[-+]?[\d.]")


def parse_complex(text: str) -> complex:
    """Parse literals such as ``0.5+0.866i``, ``-1``, ``2i`` or ``1-2j``."""
    s = text.strip().replace(" ", "").replace("I", "i").replace("i", "j")
    if s in ("j", "+j", "-j"):
        s = s.replace("j", "1j")
    try:
        return complex(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid complex number {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.add_argument("--tol", type=float, default=1e-12, help="residual tolerance of the root search")
    p.add_argument("--max-iter", type=int, default=200, help="iteration cap per Newton run")
    p.add_argument("--starts", type=int, default=64, help="number of multistart points")
    p.add_argument("--seed", type=int, default=0, help="seed for start points")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cvol", description="Complex volumes from cluster patterns.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("torus", help="once-punctured torus bundle with monodromy word in R, L")
    t.add_argument("word")
    t.add_argument("--unoriented", action="store_true", help="unsigned moduli, CS modulo pi^2/6")
    _solver_flags(t)

    b = sub.add_parser("twobridge", help="two-bridge link K(q/p)")
    b.add_argument("p", nargs="?", type=int)
    b.add_argument("q", nargs="?", type=int)
    b.add_argument("--cf", help="continued fraction a1,a2,... instead of P Q")
    b.add_argument(
        "--unoriented",
        action="store_true",
        help="use the general path (CS modulo pi^2/6) even for [a+1,2]",
    )
    _solver_flags(b)

    d = sub.add_parser("dilog", help="evaluate a dilogarithm")
    d.add_argument("function", choices=("d", "li2", "lhat"))
    d.add_argument("z", type=parse_complex)
    d.add_argument("--p", type=int, default=0)
    d.add_argument("--q", type=int, default=0)
    return parser


def _protect_negative_literals(argv: Sequence[str]) -> list[str]:
    # a leading space stops argparse from reading "-0.5+1i" as an option
    out = []
    for a in argv:
        if a.startswith("-") and _COMPLEX.match(a) and not a.startswith("--"):
            try:
                parse_complex(a)
                a = " " + a
            except argparse.ArgumentTypeError:
                pass
        out.append(a)
    return out


def _format_value(v: complex | float) -> str:
    if isinstance(v, complex):
        if v.imag == 0:
            return f"{v.real:.12g}"
        sign = "-" if v.imag < 0 else "+"
        return f"{v.real:.12g}{sign}{abs(v.imag):.12g}i"
    return f"{v:.12g}"


def _dilog(args) -> int:
    z = args.z
    try:
        if args.function == "d":
            value = bloch_wigner(z)
        elif args.function == "li2":
            value = li2(z)
        else:
            value = rogers_hat(Flattening(z, args.p, args.q))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(_format_value(value))
    return EXIT_OK


def _config(args) -> RootSearchConfig:
    try:
        return RootSearchConfig(max_iter=args.max_iter, tol=args.tol, starts=args.starts, seed=args.seed)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from None


def _report(args) -> VolumeReport:
    cfg = _config(args)
    if args.command == "torus":
        pat = solve_torus(parse_torus_word(args.word), cfg)
        return torus_report(pat, unoriented=args.unoriented, seed=args.seed)
    if args.cf is not None:
        if args.p is not None:
            raise InvalidInput("give either P Q or --cf, not both")
        try:
            entries = [int(v) for v in args.cf.split(",")]
        except ValueError:
            raise InvalidInput(f"invalid continued fraction {args.cf!r}") from None
        spec = spec_from_cf(entries)
    else:
        if args.p is None or args.q is None:
            raise InvalidInput("twobridge needs P and Q (or --cf)")
        spec = continued_fraction(args.p, args.q)
    pat = solve_two_bridge(spec, cfg)
    oriented = is_double_twist(spec) and not args.unoriented
    return bridge_report(pat, oriented=oriented, seed=args.seed)


def run(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return the exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_protect_negative_literals(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "dilog":
        return _dilog(args)
    try:
        report = _report(args)
    except (InvalidInput, WrongFamily) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NoGeometricSolution as exc:
        print(f"error: no geometric solution: {exc}", file=sys.stderr)
        return EXIT_NO_GEOMETRIC
    except (ClusterVolError, DegenerateError) as exc:
        print(f"error: inconsistent pattern: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    failed = {k: v for k, v in report.residuals.items() if not v <= RESIDUAL_LIMIT}
    print(report.to_json() if args.json else report.to_text())
    if failed:
        names = ", ".join(f"{k} = {v:.3g}" for k, v in failed.items())
        print(f"error: residual check failed: {names}", file=sys.stderr)
        return EXIT_INCONSISTENT
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
