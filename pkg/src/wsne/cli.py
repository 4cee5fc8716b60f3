"""Command-line interface.

Commands: ``solve`` (run the full algorithm), ``verify`` (check a profile
against an epsilon bound), ``analyze`` (bad-row and matching-pennies
diagnostics for a profile), ``prove-witness`` (the exact certificate grid
search), ``generate`` (emit fixture or random games).

Every emitted number carries the exact rational and an informative decimal;
the rational is authoritative.  Exit codes: 0 success / bound met, 1 bound
exceeded, 2 usage error, 3 internal anomaly.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import algorithm, analysis, gamefile, generators, prooflab
from .errors import InternalError
from .game import BimatrixGame, Profile, WsneCertificate, epsilon_wsne
from .rational import as_rational, format_decimal, format_exact
from .zerosum import ks_zero_sum

EXIT_OK = 0
EXIT_BOUND_EXCEEDED = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

DEFAULT_BOUND = Fraction(2, 3) - prooflab.WITNESS_Z


class _Formatter:
    def __init__(self, mode: str):
        self.mode = mode

    def __call__(self, value: Fraction) -> str:
        if self.mode == "exact":
            return format_exact(value)
        if self.mode == "decimal":
            return format_decimal(value)
        return f"{format_exact(value)} ({format_decimal(value)})"

    def vector(self, values) -> str:
        return " ".join(format_exact(v) for v in values)


def _rational_arg(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _load_game(args) -> BimatrixGame:
    return gamefile.parse_game(_read_text(args.game),
                               normalize=getattr(args, "normalize", False))


def _load_profile(args, game: BimatrixGame) -> Profile:
    given_strings = args.row is not None or args.col is not None
    if args.profile and given_strings:
        raise ValueError("pass either --profile or --row/--col, not both")
    if args.profile:
        return gamefile.parse_profile(_read_text(args.profile), game)
    if args.row is not None and args.col is not None:
        return Profile(gamefile.parse_strategy(args.row, game.rows),
                       gamefile.parse_strategy(args.col, game.cols))
    if getattr(args, "ks", False):
        zs = ks_zero_sum(game)
        return Profile(zs.x, zs.y)
    raise ValueError("a profile is required: --profile FILE or --row/--col")


def _emit_certificate(cert: WsneCertificate, fmt: _Formatter, out,
                      extra: list[tuple[str, str]] = ()):
    profile = cert.profile
    print("wsne-certificate v1", file=out)
    print(f"source: {cert.source.value}", file=out)
    print(f"epsilon: {fmt(cert.epsilon)}", file=out)
    print(f"row-strategy: {fmt.vector(profile.row_strategy.probs)}", file=out)
    print(f"col-strategy: {fmt.vector(profile.col_strategy.probs)}", file=out)
    print(f"row-support: {' '.join(map(str, profile.row_strategy.support))}",
          file=out)
    print(f"row-regrets: {fmt.vector(cert.row_regrets)}", file=out)
    print(f"col-support: {' '.join(map(str, profile.col_strategy.support))}",
          file=out)
    print(f"col-regrets: {fmt.vector(cert.col_regrets)}", file=out)
    for key, value in extra:
        print(f"{key}: {value}", file=out)


def cmd_solve(args, out) -> int:
    game = _load_game(args)
    report = algorithm.solve_detailed(game, jobs=args.jobs)
    fmt = _Formatter(args.format)
    extra = [("epsilon-pure", fmt(report.pure.epsilon)),
             ("epsilon-2x2", fmt(report.two_by_two.epsilon)
              if report.two_by_two.applicable else "inapplicable"),
             ("epsilon-ks-improved", fmt(report.ks_improved.epsilon)),
             ("guarantee", fmt(algorithm.GUARANTEE))]
    _emit_certificate(report.best, fmt, out, extra)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    game = _load_game(args)
    profile = _load_profile(args, game)
    cert = epsilon_wsne(game, profile)
    fmt = _Formatter(args.format)
    bound = args.bound
    ok = cert.epsilon <= bound
    _emit_certificate(cert, fmt, out,
                      [("bound", fmt(bound)),
                       ("within-bound", "yes" if ok else "no")])
    return EXIT_OK if ok else EXIT_BOUND_EXCEEDED


def cmd_analyze(args, out) -> int:
    game = _load_game(args)
    profile = _load_profile(args, game)
    z = args.z
    fmt = _Formatter(args.format)
    y = profile.col_strategy
    print("wsne-analysis v1", file=out)
    print(f"z: {fmt(z)}", file=out)
    violations = analysis.good_pure_cells(game, z)
    print(f"good-pure-cells: {' '.join(f'{i},{j}' for i, j in violations) or 'none'}",
          file=out)
    quad = analysis.find_matching_pennies(game, z)
    print(f"matching-pennies: {','.join(map(str, quad)) if quad else 'none'}",
          file=out)
    ibar = analysis.worst_bad_row(game, y)
    print(f"worst-bad-row: {ibar}", file=out)
    for i in range(game.rows):
        report = analysis.bad_row_report(game, i, y, z)
        part = report.partition
        print(f"row {i}:", file=out)
        print(f"  badness: {fmt(report.badness)}", file=out)
        print(f"  bad: {'yes' if report.is_bad else 'no'}", file=out)
        print(f"  big-columns: {' '.join(map(str, sorted(part.big))) or '-'}",
              file=out)
        print(f"  small-columns: {' '.join(map(str, sorted(part.small))) or '-'}",
              file=out)
        print(f"  other-columns: {' '.join(map(str, sorted(part.other))) or '-'}",
              file=out)
        print(f"  mass-big: {fmt(report.mass_big)}", file=out)
        print(f"  mass-small: {fmt(report.mass_small)}", file=out)
        print(f"  mass-other: {fmt(report.mass_other)}", file=out)
        if violations:
            print("  bounds: skipped (good pure cell exists)", file=out)
            continue
        audit = analysis.check_bad_row_bounds(game, i, y, z)
        mb = audit.mass_bounds
        print(f"  cell-sum-bound: {'holds' if audit.cell_sum_ok else 'fails'}",
              file=out)
        print(f"  mass-bounds: {'hold' if mb.holds else 'fail'} "
              f"(other {fmt(mb.other_slack)}; big {fmt(mb.big_slack)}; "
              f"small {fmt(mb.small_slack)})", file=out)
    return EXIT_OK


def cmd_prove_witness(args, out) -> int:
    report = prooflab.find_witness(z_lo=args.z_lo, z_hi=args.z_hi,
                                   z_step=args.z_step, t_max=args.t_max,
                                   t_step=args.t_step, jobs=args.jobs)
    fmt = _Formatter(args.format)
    print("wsne-witness v1", file=out)
    if report is None:
        print("witness: none", file=out)
        return EXIT_BOUND_EXCEEDED
    print(f"z: {fmt(report.z)}", file=out)
    print(f"t-bs-pinned: {fmt(report.t0)}", file=out)
    print(f"t-sb-pinned: {fmt(report.t1)}", file=out)
    print(f"value-bs-pinned: {fmt(report.sol_k0)}", file=out)
    print(f"value-sb-pinned: {fmt(report.sol_k1)}", file=out)
    print(f"bound: {fmt(Fraction(2, 3) - report.z)}", file=out)
    print(f"verified: {'yes' if report.verified else 'no'}", file=out)
    return EXIT_OK


def cmd_generate(args, out) -> int:
    if args.kind == "ks-worst-2x2":
        game = generators.ks_worst_case_2x2(args.delta, args.padded_rows)
    elif args.kind == "ks-worst-3x2":
        game = generators.ks_worst_case_3x2()
    else:
        kind = {"grid": generators.GameKind.RANDOM_RATIONAL_GRID,
                "uniform": generators.GameKind.RANDOM_UNIFORM,
                "pure-ne": generators.GameKind.PURE_NE_PLANTED,
                "matching-pennies": generators.GameKind.MATCHING_PENNIES_PLANTED,
                }[args.kind]
        spec = generators.GameSpecSeed(kind=kind, dims=(args.rows, args.cols),
                                       seed=args.seed,
                                       grid_denominator=args.denominator)
        game = generators.random_game(spec)
    out.write(f"# kind={args.kind} seed={args.seed}\n")
    out.write(gamefile.serialize_game(game))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wsne",
        description="Well-supported approximate Nash equilibria of bimatrix "
                    "games in exact rational arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("exact", "decimal", "both"),
                       default="both", help="number rendering (default both)")

    p_solve = sub.add_parser("solve", help="run the full solver on a game file")
    p_solve.add_argument("game", help="game file path, or - for stdin")
    p_solve.add_argument("--normalize", action="store_true",
                         help="affinely rescale payoffs onto [0, 1] first")
    p_solve.add_argument("--jobs", type=int, default=1,
                         help="parallel workers for the 2x2 enumeration")
    add_format(p_solve)
    p_solve.set_defaults(func=cmd_solve)

    p_verify = sub.add_parser("verify",
                              help="exact epsilon of a profile vs a bound")
    p_verify.add_argument("game")
    p_verify.add_argument("--normalize", action="store_true")
    p_verify.add_argument("--profile", help="file: row strategy line, column "
                                            "strategy line")
    p_verify.add_argument("--row", help="row strategy entries, e.g. '1/2 1/2 0'")
    p_verify.add_argument("--col", help="column strategy entries")
    p_verify.add_argument("--bound", type=_rational_arg, default=DEFAULT_BOUND,
                          help="epsilon bound (default 2/3 - 5913759/10^9)")
    add_format(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_analyze = sub.add_parser("analyze",
                               help="bad-row diagnostics for a profile")
    p_analyze.add_argument("game")
    p_analyze.add_argument("--normalize", action="store_true")
    p_analyze.add_argument("--profile")
    p_analyze.add_argument("--row")
    p_analyze.add_argument("--col")
    p_analyze.add_argument("--ks", action="store_true",
                           help="analyze the zero-sum profile of the game")
    p_analyze.add_argument("--z", type=_rational_arg, default=prooflab.WITNESS_Z,
                           help="threshold parameter (default 5913759/10^9)")
    add_format(p_analyze)
    p_analyze.set_defaults(func=cmd_analyze)

    p_witness = sub.add_parser("prove-witness",
                               help="reproduce the certificate grid search")
    p_witness.add_argument("--z-lo", type=_rational_arg,
                           default=prooflab.DEFAULT_Z_LO)
    p_witness.add_argument("--z-hi", type=_rational_arg,
                           default=prooflab.DEFAULT_Z_HI)
    p_witness.add_argument("--z-step", type=_rational_arg,
                           default=prooflab.DEFAULT_Z_STEP)
    p_witness.add_argument("--t-step", type=_rational_arg,
                           default=prooflab.DEFAULT_T_STEP)
    p_witness.add_argument("--t-max", type=_rational_arg,
                           default=prooflab.DEFAULT_T_MAX)
    p_witness.add_argument("--jobs", type=int, default=1)
    add_format(p_witness)
    p_witness.set_defaults(func=cmd_prove_witness)

    p_gen = sub.add_parser("generate", help="emit a game file")
    p_gen.add_argument("--kind", required=True,
                       choices=("ks-worst-2x2", "ks-worst-3x2", "grid",
                                "uniform", "pure-ne", "matching-pennies"))
    p_gen.add_argument("--rows", type=int, default=3)
    p_gen.add_argument("--cols", type=int, default=3)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--denominator", type=int, default=12)
    p_gen.add_argument("--delta", type=_rational_arg, default=Fraction(0),
                       help="perturbation for ks-worst-2x2")
    p_gen.add_argument("--padded-rows", type=int, default=0,
                       help="all-zero rows appended to ks-worst-2x2")
    p_gen.set_defaults(func=cmd_generate)
    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValueError, TypeError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
