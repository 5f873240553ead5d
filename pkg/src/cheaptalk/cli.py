"""Command-line surface binding the library into reproducible runs.

Every subcommand prints a single JSON run report: the command echo, sha256
digests of the input files, the payload, and the elapsed time.  Identical
inputs and flags produce byte-identical reports except for the elapsedMs
field.  All numbers in reports and documents are canonical rational strings.

Exit codes: 0 success (for `verify`: the profile is an equilibrium),
1 semantic negative (`verify` on a non-equilibrium profile), 2 usage or
validation errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import documents as docs
from .errors import CheapTalkError
from .game import (
    INDEX_ORDER,
    SENDER_FAVOR,
    babbling_equilibrium,
    profile_values,
    verify_equilibrium,
)
from .gadget import build_instance, certificate_sender_value, construct_equilibrium
from .rationals import format_rational, rational
from .sat import PartialAssignment, max_var_3sat_bruteforce, parse_dimacs
from .solvers import (
    solve_binary_action,
    solve_enumeration,
    solve_persuasion_lp,
)
from .support import reduce_support

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


def _digest(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _read_game(path: str):
    return docs.game_from_dict(docs.load_json(path))


def _read_profile(path: str):
    return docs.profile_from_dict(docs.load_json(path))


def _solve_result_payload(result) -> dict:
    return {
        "method": result.method,
        "value": format_rational(result.value),
        "diagnostics": dict(result.diagnostics),
        "profile": docs.profile_to_dict(result.profile),
    }


def cmd_verify(args) -> tuple:
    game = _read_game(args.game)
    profile = _read_profile(args.profile)
    verdict = verify_equilibrium(game, profile)
    payload = {
        "verdict": docs.verdict_to_dict(verdict),
        "values": docs.values_to_dict(profile_values(game, profile)),
    }
    return (EXIT_OK if verdict.is_equilibrium else EXIT_NEGATIVE), payload


def cmd_solve(args) -> tuple:
    game = _read_game(args.game)
    if args.method == "binary":
        result = solve_binary_action(game)
    elif args.method == "enum":
        result = solve_enumeration(
            game,
            objective=args.objective,
            signal_budget=args.budget,
            override_guard=args.force,
        )
    else:
        result = solve_persuasion_lp(game)
    payload = {"objective": args.objective, **_solve_result_payload(result)}
    if args.out:
        docs.save_json(args.out, docs.profile_to_dict(result.profile))
        payload["profilePath"] = args.out
    return EXIT_OK, payload


def cmd_reduce(args) -> tuple:
    formula = parse_dimacs(Path(args.cnf).read_text(encoding="utf-8"))
    alpha = None if args.babbling_gap is None else rational(args.babbling_gap)
    game, meta = build_instance(
        formula, normalize=args.normalize, babbling_gap_alpha=alpha
    )
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    game_path = out_dir / "game.json"
    meta_path = out_dir / "meta.json"
    docs.save_json(game_path, docs.game_to_dict(game))
    docs.save_json(meta_path, docs.metadata_to_dict(meta))
    payload = {
        "d": meta.d,
        "states": game.n,
        "actions": game.m,
        "pools": len(meta.pools),
        "epsilon": format_rational(meta.epsilon),
        "digest": meta.formula_digest,
        "normalization": meta.normalization,
        "gamePath": str(game_path),
        "metaPath": str(meta_path),
    }
    return EXIT_OK, payload


def cmd_construct_eq(args) -> tuple:
    meta = docs.metadata_from_dict(docs.load_json(args.meta))
    assignment = PartialAssignment.build(
        docs.parse_assignment_doc(docs.load_json(args.assignment))
    )
    profile = construct_equilibrium(meta, assignment)
    payload = {
        "assignedVariables": assignment.size,
        "signals": len(profile.policy.signals),
        "senderValue": format_rational(
            certificate_sender_value(meta, assignment.size)
        ),
        "profile": docs.profile_to_dict(profile),
    }
    if args.out:
        docs.save_json(args.out, docs.profile_to_dict(profile))
        payload["profilePath"] = args.out
    return EXIT_OK, payload


def cmd_reduce_signals(args) -> tuple:
    game = _read_game(args.game)
    profile = _read_profile(args.profile)
    objective = args.objective
    reduced = reduce_support(game, profile, objective)
    payload = {
        "objective": objective,
        "signalsBefore": len(profile.policy.signals),
        "signalsAfter": len(reduced.policy.signals),
        "values": docs.values_to_dict(profile_values(game, reduced)),
        "profile": docs.profile_to_dict(reduced),
    }
    if args.out:
        docs.save_json(args.out, docs.profile_to_dict(reduced))
        payload["profilePath"] = args.out
    return EXIT_OK, payload


def cmd_maxvar3sat(args) -> tuple:
    formula = parse_dimacs(Path(args.cnf).read_text(encoding="utf-8"))
    result = max_var_3sat_bruteforce(formula, override_guard=args.force)
    payload = {
        "k": result.k,
        "witness": docs.assignment_to_dict(result.witness.as_dict()),
    }
    return EXIT_OK, payload


def cmd_babbling(args) -> tuple:
    game = _read_game(args.game)
    tie_break = SENDER_FAVOR if args.tie_break == "sender-favor" else INDEX_ORDER
    profile = babbling_equilibrium(game, tie_break)
    payload = {
        "tieBreak": args.tie_break,
        "values": docs.values_to_dict(profile_values(game, profile)),
        "profile": docs.profile_to_dict(profile),
    }
    if args.out:
        docs.save_json(args.out, docs.profile_to_dict(profile))
        payload["profilePath"] = args.out
    return EXIT_OK, payload


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cheaptalk",
        description="Exact-rational cheap talk toolkit: verify equilibria, "
        "solve tractable cases, reduce signal supports, compile 3CNF "
        "formulas into gadget instances.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check a profile for equilibrium")
    p.add_argument("game")
    p.add_argument("profile")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("solve", help="compute an optimal equilibrium or the persuasion benchmark")
    p.add_argument("game")
    p.add_argument("--method", choices=["binary", "enum", "persuasion"], required=True)
    p.add_argument("--objective", choices=["sender", "receiver", "welfare"], default="sender")
    p.add_argument("--budget", type=int, default=None, help="signal budget for enum")
    p.add_argument("--force", action="store_true", help="override the enum size guard")
    p.add_argument("--out", default=None, help="write the profile document here")
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("reduce", help="compile a d-regular 3CNF into a game instance")
    p.add_argument("cnf")
    p.add_argument("--normalize", action="store_true", help="map sender utilities into [0,1]")
    p.add_argument("--babbling-gap", default=None, metavar="ALPHA",
                   help="add the prior pool and a constant-alpha action")
    p.add_argument("--out", default=".", help="output directory")
    p.set_defaults(handler=cmd_reduce)

    p = sub.add_parser("construct-eq", help="certificate equilibrium from a partial assignment")
    p.add_argument("meta")
    p.add_argument("assignment", help='JSON file like {"1": true, "3": false}')
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_construct_eq)

    p = sub.add_parser("reduce-signals", help="shrink an equilibrium's signal support")
    p.add_argument("game")
    p.add_argument("profile")
    p.add_argument("--objective", choices=["sender", "receiver", "welfare"], default="sender")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_reduce_signals)

    p = sub.add_parser("maxvar3sat", help="largest non-contradictory partial assignment")
    p.add_argument("cnf")
    p.add_argument("--force", action="store_true", help="override the size guard")
    p.set_defaults(handler=cmd_maxvar3sat)

    p = sub.add_parser("babbling", help="no-revelation equilibrium")
    p.add_argument("game")
    p.add_argument("--tie-break", choices=["sender-favor", "index-order"],
                   default="sender-favor")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_babbling)

    return parser


INPUT_ARGS = ("game", "profile", "cnf", "meta", "assignment")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    command = ["cheaptalk"] + (argv if argv is not None else sys.argv[1:])
    try:
        inputs = {
            getattr(args, name): _digest(getattr(args, name))
            for name in INPUT_ARGS
            if getattr(args, name, None)
        }
        code, payload = args.handler(args)
    except CheapTalkError as exc:
        report = {
            "command": command,
            "error": {"type": type(exc).__name__, "message": str(exc)},
        }
        print(json.dumps(report, indent=2))
        return EXIT_ERROR
    except OSError as exc:
        print(json.dumps({"command": command, "error": {"type": "OSError", "message": str(exc)}}, indent=2))
        return EXIT_ERROR
    report = {
        "command": command,
        "inputs": inputs,
        **payload,
        "elapsedMs": int((time.perf_counter() - started) * 1000),
    }
    print(json.dumps(report, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
