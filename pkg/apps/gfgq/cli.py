"""
Command-line front end: `gfgq <verb> [options] FILE`.

Verbs: parse, canon, sat, mc, oracle, game, witness.
Exit codes: 0 YES/true, 1 NO/false, 2 usage, parse or domain error,
3 resource guard tripped. Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations
import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from rich.console import Console
from rich.table import Table

from core.config import settings
from core.errors import GfgqError, GuardExceededError, WitnessUnavailableError
from core.models import AlternationFlag, CheckMode, DecisionMode, Player, Verdict
from automata.hoa import write_hoa
from decision.nodes import verdict_of
from decision.procedures import model_check, run_decision, sat_behavioral, sat_vanilla
from decision.witness import Transducer, check_witness
from games.export import to_dot
from logic.formula import Formula, classify
from logic.parser import parse_file
from logic.prefix import canonize
from oracle.assignments import check_horizon
from oracle.hyperassignment import Hyperassignment, evolve
from oracle.semantics import decide_sentence
from structures.kripke import read_kripke

EXIT_YES = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_GUARD = 3

console = Console(highlight=False)
errors = Console(stderr=True, highlight=False)

logger = logging.getLogger(__name__)


def out(text: str) -> None:
    console.print(text, markup=False, soft_wrap=True)


def _exit(holds: bool) -> int:
    return EXIT_YES if holds else EXIT_NO


def _print_report(verdict: Verdict) -> None:
    for line in verdict.to_report():
        out(line)


def _witness_table(t: Transducer) -> Table:
    table = Table(title=f"witness ({t.size} states)")
    for column in ("state", "input", "output", "next"):
        table.add_column(column)
    for row in t.table():
        table.add_row(*row)
    return table


def cmd_parse(args: argparse.Namespace) -> int:
    f = parse_file(args.file)
    out(f.render())
    for line in classify(f).to_lines():
        out(line)
    return EXIT_YES


def cmd_canon(args: argparse.Namespace) -> int:
    f = parse_file(args.file)
    canonical = canonize(f.prefix, AlternationFlag(args.form))
    out(Formula(canonical, f.matrix).render())
    return EXIT_YES


def cmd_sat(args: argparse.Namespace) -> int:
    f = parse_file(args.file)
    if args.vanilla:
        verdict = sat_vanilla(f, args.budget)
    else:
        verdict = sat_behavioral(f, witness=bool(args.witness), budget=args.budget)
    out("SAT" if verdict.holds else "UNSAT")
    if args.report:
        _print_report(verdict)
    if args.witness and verdict.witness is not None:
        Path(args.witness).write_text(verdict.witness.render_table() + "\n")
        logger.info(f"Wrote witness table to {args.witness}")
    return _exit(verdict.holds)


def cmd_mc(args: argparse.Namespace) -> int:
    k = read_kripke(args.kripke)
    f = parse_file(args.file)
    verdict = model_check(k, f, CheckMode(args.mode), args.budget)
    out("YES" if verdict.holds else "NO")
    if args.report:
        _print_report(verdict)
    return _exit(verdict.holds)


def cmd_oracle(args: argparse.Namespace) -> int:
    f = parse_file(args.file)
    horizon = check_horizon(args.horizon or settings.default_horizon)
    alpha = AlternationFlag(args.alt)
    result = decide_sentence(f, horizon, alpha)
    out("TRUE" if result.holds else "FALSE")
    out(f"exact={'yes' if result.exact else 'no'}")
    if args.dump:
        out(evolve(Hyperassignment.trivial(horizon), f.prefix, alpha, reduce=True).dump())
    return _exit(result.holds)


def cmd_game(args: argparse.Namespace) -> int:
    f = parse_file(args.file)
    if args.kripke:
        state = run_decision(DecisionMode.MC_UNIVERSAL, f, kripke=read_kripke(args.kripke), budget=args.budget)
    else:
        state = run_decision(DecisionMode.SAT_BEHAVIORAL, f, budget=args.budget)
    game, solution = state["game"], state["solution"]
    winner = solution.winner(game.initial)
    out(f"positions={game.size}")
    out(f"observables={len(game.observables)}")
    out(f"priorities={len(set(game.priority))}")
    out(f"winner={winner.name.lower()}")
    if args.dump:
        out(solution.dump(game))
    if args.dot:
        Path(args.dot).write_text(to_dot(game, solution) + "\n")
        logger.info(f"Wrote game DOT to {args.dot}")
    if args.hoa:
        write_hoa(state["dpa"], args.hoa)
    if args.report:
        _print_report(verdict_of(state))
    return _exit(winner is Player.ELOISE)


def cmd_witness(args: argparse.Namespace) -> int:
    f = parse_file(args.file)
    verdict = sat_behavioral(f, witness=True, budget=args.budget)
    if verdict.witness is None:
        raise WitnessUnavailableError("formula is not satisfiable: no witness to extract")
    t: Transducer = verdict.witness
    console.print(_witness_table(t))
    if args.witness:
        Path(args.witness).write_text(t.render_table() + "\n")
    if not args.check:
        return EXIT_YES
    failing = check_witness(f, t, args.check, args.seed)
    if failing is None:
        out(f"check=passed samples={args.check} seed={args.seed}")
        return EXIT_YES
    out(f"check=failed adversary={failing.render()}")
    return EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gfgq", description="GFG-QPTL decision toolkit")
    parser.add_argument("-v", "--verbose", action="store_true", help="log pipeline stages (INFO)")
    verbs = parser.add_subparsers(dest="verb", required=True)

    def verb(name: str, handler, help_text: str) -> argparse.ArgumentParser:
        p = verbs.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        return p

    def budgeted(p: argparse.ArgumentParser) -> None:
        p.add_argument("--budget", type=int, default=None, help="automaton state budget for this run")
        p.add_argument("--report", action="store_true", help="print key=value report lines")

    p = verb("parse", cmd_parse, "parse a formula and print its classification")
    p.add_argument("file")

    p = verb("canon", cmd_canon, "print a canonical form of a behavioral sentence")
    p.add_argument("--form", choices=[a.value for a in AlternationFlag], default=AlternationFlag.EA.value)
    p.add_argument("file")

    p = verb("sat", cmd_sat, "decide satisfiability")
    p.add_argument("--vanilla", action="store_true", help="vanilla QPTL via quantifier elimination")
    p.add_argument("--witness", metavar="FILE", help="write the witness table of a YES verdict")
    budgeted(p)
    p.add_argument("file")

    p = verb("mc", cmd_mc, "model check a formula against a Kripke structure")
    p.add_argument("--mode", choices=[m.value for m in CheckMode], default=CheckMode.UNIVERSAL.value)
    budgeted(p)
    p.add_argument("kripke")
    p.add_argument("file")

    p = verb("oracle", cmd_oracle, "bounded-horizon alternating semantics")
    p.add_argument("--horizon", type=int, default=None)
    p.add_argument("--alt", choices=[a.value for a in AlternationFlag], default=AlternationFlag.AE.value)
    p.add_argument("--dump", action="store_true", help="print the evolved hyperassignment")
    p.add_argument("file")

    p = verb("game", cmd_game, "build and solve the quantification game")
    p.add_argument("--kripke", metavar="FILE", help="model-checking game against this structure")
    p.add_argument("--dot", metavar="FILE", help="write the solved game as DOT")
    p.add_argument("--hoa", metavar="FILE", help="write the game automaton as HOA")
    p.add_argument("--dump", action="store_true", help="print winner and strategy per position")
    budgeted(p)
    p.add_argument("file")

    p = verb("witness", cmd_witness, "extract a witness transducer")
    p.add_argument("--witness", metavar="FILE", help="write the table to FILE")
    p.add_argument("--check", type=int, default=0, metavar="N", help="validate on N random adversaries")
    p.add_argument("--seed", type=int, default=0, metavar="S")
    budgeted(p)
    p.add_argument("file")
    return parser


def configure_logging(verbose: bool = False) -> None:
    level = logging.INFO if verbose else getattr(logging, settings.log_level.upper())
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    logging.getLogger().setLevel(level)


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command line; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_YES
    configure_logging(args.verbose)
    try:
        return args.handler(args)
    except GuardExceededError as e:
        errors.print(f"error: {e}", markup=False, soft_wrap=True)
        return EXIT_GUARD
    except (GfgqError, OSError, ValueError) as e:
        errors.print(f"error: {e}", markup=False, soft_wrap=True)
        return EXIT_USAGE


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
