"""JSON document formats: games, profiles, verdicts, solver results.

All numeric fields are canonical rational strings ("a" or "a/b", b > 0);
no floats appear in any document.  Serialization key order is fixed, so a
write-then-read round trip is the identity and repeated runs are
byte-identical.

Game document:    {"states": [...], "actions": [...], "prior": ["1/2", ...],
                   "u_S": [[...]], "u_R": [[...]]}
Profile document: {"signals": [...], "pi": [[one row per state]],
                   "s": [[one row per signal]]}
"""

from __future__ import annotations

import json

from .errors import ValidationError
from .gadget import Pool, ReductionMetadata
from .game import (
    Game,
    Profile,
    ProfileValues,
    ReceiverStrategy,
    SignalingPolicy,
    Verdict,
)
from .rationals import format_rational, rational
from .sat import CnfFormula


def _fmt_row(row):
    return [format_rational(v) for v in row]


def game_to_dict(game: Game) -> dict:
    return {
        "states": list(game.states),
        "actions": list(game.actions),
        "prior": _fmt_row(game.prior),
        "u_S": [_fmt_row(row) for row in game.sender_utility],
        "u_R": [_fmt_row(row) for row in game.receiver_utility],
    }


def game_from_dict(doc: dict) -> Game:
    try:
        return Game.build(
            doc["states"], doc["actions"], doc["prior"], doc["u_S"], doc["u_R"]
        )
    except KeyError as exc:
        raise ValidationError(f"game document missing key {exc}") from None


def profile_to_dict(profile: Profile) -> dict:
    return {
        "signals": list(profile.policy.signals),
        "pi": [_fmt_row(row) for row in profile.policy.rows],
        "s": [_fmt_row(row) for row in profile.response.rows],
    }


def profile_from_dict(doc: dict) -> Profile:
    try:
        policy = SignalingPolicy.build(doc["signals"], doc["pi"])
        rows = doc["s"]
    except KeyError as exc:
        raise ValidationError(f"profile document missing key {exc}") from None
    if not rows:
        raise ValidationError("profile document has no response rows")
    response = ReceiverStrategy.build(rows, len(rows[0]))
    return Profile(policy, response)


def verdict_to_dict(verdict: Verdict) -> dict:
    return {
        "isEquilibrium": verdict.is_equilibrium,
        "violations": [
            {
                "kind": v.kind,
                "where": v.where,
                "used": v.used,
                "better": v.better,
                "gap": format_rational(v.gap),
            }
            for v in verdict.violations
        ],
    }


def values_to_dict(values: ProfileValues) -> dict:
    return {
        "sender": format_rational(values.sender),
        "receiver": format_rational(values.receiver),
        "welfare": format_rational(values.welfare),
    }


def metadata_to_dict(meta: ReductionMetadata) -> dict:
    """Reduction metadata document.

    Pool posteriors are omitted: they are uniform over the listed members
    (the prior itself for the Prior pool) and storing them would be
    quadratic in the instance size.
    """
    return {
        "digest": meta.formula_digest,
        "d": meta.d,
        "numVariables": meta.num_variables,
        "numClauses": meta.num_clauses,
        "formula": {
            "numVariables": meta.formula.num_variables,
            "clauses": [list(clause) for clause in meta.formula.clauses],
        },
        "states": list(meta.states),
        "stateIndex": {s: i for i, s in enumerate(meta.states)},
        "pools": [
            {"kind": pool.kind, "name": pool.name, "members": list(pool.members)}
            for pool in meta.pools
        ],
        "epsilon": format_rational(meta.epsilon),
        "normalization": meta.normalization,
        "babblingGapAlpha": (
            None
            if meta.babbling_gap_alpha is None
            else format_rational(meta.babbling_gap_alpha)
        ),
    }


def metadata_from_dict(doc: dict) -> ReductionMetadata:
    try:
        formula = CnfFormula.build(
            doc["formula"]["numVariables"], doc["formula"]["clauses"]
        )
        pools = tuple(
            Pool(p["kind"], p["name"], tuple(p["members"])) for p in doc["pools"]
        )
        alpha = doc["babblingGapAlpha"]
        return ReductionMetadata(
            formula=formula,
            formula_digest=doc["digest"],
            d=int(doc["d"]),
            num_variables=int(doc["numVariables"]),
            num_clauses=int(doc["numClauses"]),
            states=tuple(doc["states"]),
            pools=pools,
            epsilon=rational(doc["epsilon"]),
            normalization=doc["normalization"],
            babbling_gap_alpha=None if alpha is None else rational(alpha),
        )
    except KeyError as exc:
        raise ValidationError(f"metadata document missing key {exc}") from None


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def save_json(path, doc: dict):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))


def load_json(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def parse_assignment_doc(doc: dict) -> dict:
    """Assignment document {"1": true, ...} -> {variable index: bool}."""
    out = {}
    for key, val in doc.items():
        name = key[1:] if key.startswith("x") else key
        if not str(name).lstrip("-").isdigit():
            raise ValidationError(f"bad variable key {key!r}")
        var = int(name)
        if var <= 0:
            raise ValidationError(f"variable indices are positive: {key!r}")
        if not isinstance(val, bool):
            raise ValidationError(f"assignment value for {key!r} must be a boolean")
        out[var] = val
    return out


def assignment_to_dict(assigned: dict) -> dict:
    return {str(var): bool(val) for var, val in sorted(assigned.items())}


def rational_field(doc, key):
    try:
        return rational(doc[key])
    except KeyError:
        raise ValidationError(f"document missing key {key!r}") from None
