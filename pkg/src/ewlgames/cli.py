"""Command-line front end.

Subcommands: extend, classify, solve, isocheck, sweep, verify-oracle,
reproduce.  Exit codes: 0 success, 1 reference-suite failure, 2 malformed
input, 3 domain error (angle out of range, wrong game shape, or solving a
float-built game without opting in).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from .ewl import UnitaryParams, parse_angle, params_from_angles
from .extension import build_extension, classify, empirical_invariance, extended_to_json_dict
from .games import BimatrixGame, find_isomorphism, game_from_json_dict, snapped
from .nash import EquilibriumReport, report_to_json_dict, support_enumeration
from .selfcheck import max_oracle_deviation, run_reference_suite

EXIT_OK = 0
EXIT_SUITE_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_DOMAIN = 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_BAD_INPUT) from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"{path} is not valid JSON: {exc}", EXIT_BAD_INPUT) from exc


def _load_game(path: str) -> tuple[BimatrixGame, dict]:
    data = _load_json(path)
    try:
        return game_from_json_dict(data), data
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise CliError(f"{path} is not a valid game file: {exc}", EXIT_BAD_INPUT) from exc


def _params_from_args(args) -> UnitaryParams:
    try:
        angles = [parse_angle(tok) for tok in (args.theta, args.alpha, args.beta)]
    except ValueError as exc:
        raise CliError(str(exc), EXIT_BAD_INPUT) from exc
    try:
        return params_from_angles(*angles)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_DOMAIN) from exc


def _fmt(value: Fraction, exact: bool) -> str:
    return str(value) if exact else format(float(value), ".12g")


def _print_game_table(game: BimatrixGame, exact: bool) -> None:
    header = [""] + list(game.col_labels)
    rows = [header]
    for i, label in enumerate(game.row_labels):
        cells = [
            f"({_fmt(a, exact)}, {_fmt(b, exact)})" for a, b in game.payoffs[i]
        ]
        rows.append([label] + cells)
    widths = [max(len(r[c]) for r in rows) for c in range(len(header))]
    for row in rows:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())


def _print_report(report: EquilibriumReport, game: BimatrixGame, exact: bool) -> None:
    print("pure equilibria:")
    if not report.pure:
        print("  none")
    for i, j, pay in report.pure:
        print(
            f"  ({game.row_labels[i]}, {game.col_labels[j]})  "
            f"payoff ({_fmt(pay[0], exact)}, {_fmt(pay[1], exact)})"
        )
    print("mixed equilibria:")
    if not report.mixed:
        print("  none")
    for prof, pay in report.mixed:
        p1 = ", ".join(_fmt(p, exact) for p in prof.p1)
        p2 = ", ".join(_fmt(p, exact) for p in prof.p2)
        print(
            f"  p1=({p1})  p2=({p2})  "
            f"payoff ({_fmt(pay[0], exact)}, {_fmt(pay[1], exact)})"
        )
    print(f"degenerate: {'yes' if report.degenerate else 'no'}")


def _class_line(params: UnitaryParams) -> str:
    cls = classify(params)
    if cls.witness is None:
        return f"class: {cls.kind.value}"
    k, l = cls.witness
    return f"class: {cls.kind.value} (k={k}, l={l})"


def cmd_extend(args) -> int:
    game, _ = _load_game(args.game)
    params = _params_from_args(args)
    try:
        ext = build_extension(game, params)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_DOMAIN) from exc
    _print_game_table(ext.game, ext.exact)
    print(f"{_class_line(params)}  exact: {'true' if ext.exact else 'false'}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            json.dump(extended_to_json_dict(ext), handle, indent=2)
            handle.write("\n")
    return EXIT_OK


def cmd_classify(args) -> int:
    params = _params_from_args(args)
    print(_class_line(params))
    return EXIT_OK


def cmd_solve(args) -> int:
    game, data = _load_game(args.game)
    exact = bool(data.get("exact", True))
    if not exact and not args.allow_float_solve:
        raise CliError(
            "refusing to solve a float-built extension exactly; "
            "pass --allow-float-solve to snap payoffs and solve",
            EXIT_DOMAIN,
        )
    if not exact:
        game = snapped(game)
    report = support_enumeration(game)
    _print_report(report, game, exact)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            json.dump(report_to_json_dict(report, game), handle, indent=2)
            handle.write("\n")
    return EXIT_OK


def cmd_isocheck(args) -> int:
    game_a, _ = _load_game(args.game_a)
    game_b, _ = _load_game(args.game_b)
    bijection = find_isomorphism(game_a, game_b, tol=args.tol)
    if bijection is None:
        searched = 1
        for n in range(2, game_a.n_rows + 1):
            searched *= n
        for m in range(2, game_a.n_cols + 1):
            searched *= m
        if game_a.shape != game_b.shape:
            print("isomorphic: no (shapes differ)")
        else:
            print(f"isomorphic: no (searched {searched} bijection pairs)")
    else:
        print("isomorphic: yes")
        print("  rows: " + ", ".join(f"{x} -> {y}" for x, y in bijection.row_map))
        print("  cols: " + ", ".join(f"{x} -> {y}" for x, y in bijection.col_map))
    if all(tok is not None for tok in (args.theta, args.alpha, args.beta)):
        params = _params_from_args(args)
        try:
            invariant = empirical_invariance(game_a, params)
        except ValueError as exc:
            raise CliError(str(exc), EXIT_DOMAIN) from exc
        print(f"extension of {args.game_a} invariant under relabelings: "
              f"{'yes' if invariant else 'no'}")
    return EXIT_OK


def _angle_list(raw: str) -> list[str]:
    return [tok for tok in raw.split(",") if tok.strip()]


def cmd_sweep(args) -> int:
    game, _ = _load_game(args.game)
    if game.shape != (2, 2):
        raise CliError(f"sweep needs a 2x2 game, got {game.shape}", EXIT_DOMAIN)
    combos = []
    for t_tok in _angle_list(args.thetas):
        for a_tok in _angle_list(args.alphas):
            for b_tok in _angle_list(args.betas):
                combos.append((t_tok, a_tok, b_tok))

    out = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        writer = csv.writer(out)
        writer.writerow(
            ["theta", "alpha", "beta", "class", "n_pure", "n_mixed", "payoff1", "payoff2"]
        )
        for t_tok, a_tok, b_tok in combos:
            try:
                angles = [parse_angle(tok) for tok in (t_tok, a_tok, b_tok)]
            except ValueError as exc:
                raise CliError(str(exc), EXIT_BAD_INPUT) from exc
            try:
                params = params_from_angles(*angles)
            except ValueError as exc:
                raise CliError(str(exc), EXIT_DOMAIN) from exc
            ext = build_extension(game, params)
            cls = classify(params)
            if ext.exact or args.allow_float_solve:
                target = ext.game if ext.exact else snapped(ext.game)
                report = support_enumeration(target)
                first = None
                if report.pure:
                    first = report.pure[0][2]
                elif report.mixed:
                    first = report.mixed[0][1]
                pay1 = _fmt(first[0], ext.exact) if first else ""
                pay2 = _fmt(first[1], ext.exact) if first else ""
                counts = [str(len(report.pure)), str(len(report.mixed))]
            else:
                pay1 = pay2 = ""
                counts = ["", ""]
            writer.writerow([t_tok, a_tok, b_tok, cls.kind.value, *counts, pay1, pay2])
    finally:
        if args.out:
            out.close()
    return EXIT_OK


def cmd_verify_oracle(args) -> int:
    worst = max_oracle_deviation(samples=args.samples, seed=args.seed, n_games=args.games)
    print(
        f"max |closed-form - statevector| over {args.games} games x "
        f"{args.samples} samples (seed {args.seed}): {worst:.3e}"
    )
    if worst > args.tol:
        print(f"FAIL: deviation exceeds {args.tol:g}")
        return EXIT_SUITE_FAILED
    print(f"OK: within {args.tol:g}")
    return EXIT_OK


def cmd_reproduce(args) -> int:
    pd = None
    if args.pd_file:
        pd, _ = _load_game(args.pd_file)
        if pd.shape != (2, 2):
            raise CliError("--pd-file must hold a 2x2 game", EXIT_DOMAIN)
    claims = run_reference_suite(pd)
    all_ok = all(c.ok for c in claims)
    if args.json:
        print(
            json.dumps(
                {
                    "claims": [
                        {
                            "name": c.name,
                            "pass": c.ok,
                            "expected": c.expected,
                            "actual": c.actual,
                        }
                        for c in claims
                    ],
                    "all_pass": all_ok,
                },
                indent=2,
            )
        )
    else:
        for c in claims:
            print(f"{'PASS' if c.ok else 'FAIL'}  {c.name}")
            if not c.ok:
                print(f"      expected: {c.expected}")
                print(f"      actual:   {c.actual}")
        n_ok = sum(1 for c in claims if c.ok)
        print(f"{n_ok}/{len(claims)} claims pass")
    return EXIT_OK if all_ok else EXIT_SUITE_FAILED


def _add_angle_options(parser, required=True) -> None:
    parser.add_argument("--theta", required=required, help='angle, e.g. "1/2pi" or radians')
    parser.add_argument("--alpha", required=required, help='angle, e.g. "1/2pi" or radians')
    parser.add_argument("--beta", required=required, help='angle, e.g. "0" or radians')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ewlgames",
        description="Quantum one-unitary extensions of 2x2 games, exactly.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extend", help="build the 3x3 extension of a 2x2 game")
    p.add_argument("game", help="game JSON file")
    _add_angle_options(p)
    p.add_argument("-o", "--out", help="write the extended game JSON here")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("classify", help="invariance family of an operator")
    _add_angle_options(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("solve", help="all Nash equilibria of a game file")
    p.add_argument("game", help="game JSON file (plain or extended)")
    p.add_argument("--allow-float-solve", action="store_true",
                   help="solve float-built extensions after snapping payoffs")
    p.add_argument("-o", "--out", help="write the equilibrium report JSON here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("isocheck", help="strong isomorphism between two game files")
    p.add_argument("game_a")
    p.add_argument("game_b")
    p.add_argument("--tol", type=float, default=0.0,
                   help="payoff comparison tolerance (default exact)")
    _add_angle_options(p, required=False)
    p.set_defaults(func=cmd_isocheck)

    p = sub.add_parser("sweep", help="classify/solve extensions over an angle grid (CSV)")
    p.add_argument("game", help="2x2 game JSON file")
    p.add_argument("--thetas", required=True, help="comma-separated angles")
    p.add_argument("--alphas", required=True, help="comma-separated angles")
    p.add_argument("--betas", required=True, help="comma-separated angles")
    p.add_argument("--allow-float-solve", action="store_true")
    p.add_argument("-o", "--out", help="CSV output path (default stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify-oracle",
                       help="compare the closed-form and statevector payoff routes")
    p.add_argument("--samples", type=int, default=1000, help="strategy pairs per game")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--games", type=int, default=5, help="number of random games")
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=cmd_verify_oracle)

    p = sub.add_parser("reproduce", help="run the reference-results suite")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("--pd-file", help="use this 2x2 game instead of the canonical one")
    p.set_defaults(func=cmd_reproduce)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
