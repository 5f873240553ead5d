"""Signal-support compression of equilibria via constructive Carathéodory.

An equilibrium's posteriors form a split of the prior.  Eliminating affine
dependencies among the split points (plain posteriors for the sender
objective, posteriors tagged with a per-signal objective value for receiver,
welfare, or custom linear objectives) shrinks the support to at most n
signals (sender) or n + 1 signals (tagged objectives) while preserving the
chosen objective exactly.  The receiver's strategy rows are carried over
unchanged for surviving signals, and the policy is rebuilt from the reduced
split via pi'(sigma|omega) = nu(sigma) * p_sigma(omega) / mu(omega).

Elimination is deterministic: duplicate split points are merged onto the
lowest-indexed signal first; each round moves weight along the affine
dependency in whichever direction zeroes the lowest-indexed point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import NotAnEquilibrium, ValidationError
from .game import Game, Profile, SignalingPolicy, bayes_posteriors, verify_equilibrium
from .linalg import find_affine_dependency
from .rationals import Q, qsum, rational

SENDER, RECEIVER, WELFARE = "sender", "receiver", "welfare"


@dataclass(frozen=True)
class SplitPoint:
    """One point of a prior split: posterior, weight, optional objective tag."""

    posterior: tuple
    weight: Q
    tag: Optional[Q] = None


def _objective_table(game: Game, objective):
    """Per-(state, action) coefficients for the tagged reduction, or None."""
    if objective == SENDER:
        return None
    if objective == RECEIVER:
        return game.receiver_utility
    if objective == WELFARE:
        return tuple(
            tuple(s + r for s, r in zip(srow, rrow))
            for srow, rrow in zip(game.sender_utility, game.receiver_utility)
        )
    table = tuple(tuple(rational(v) for v in row) for row in objective)
    if len(table) != game.n or any(len(row) != game.m for row in table):
        raise ValidationError("custom objective must be a states x actions table")
    return table


def signal_objective_value(game: Game, profile: Profile, k: int, table, posterior):
    """Expected objective of signal k's response at its posterior."""
    row = profile.response.rows[k]
    return qsum(
        posterior[i] * qsum(row[a] * table[i][a] for a in range(game.m))
        for i in range(game.n)
    )


def equilibrium_split(game: Game, profile: Profile, objective=SENDER) -> tuple:
    """The prior split induced by a profile, one SplitPoint per signal.

    Tags carry the per-signal objective value for the lifted (receiver,
    welfare, custom) reductions and are None for the sender objective.
    Weighted posteriors always average back to the prior.
    """
    table = _objective_table(game, objective)
    posteriors = bayes_posteriors(game, profile.policy)
    points = []
    for k, signal in enumerate(profile.policy.signals):
        post = posteriors[signal]
        tag = (
            None
            if table is None
            else signal_objective_value(game, profile, k, table, post.distribution)
        )
        points.append(SplitPoint(post.distribution, post.marginal, tag))
    return tuple(points)


def reduce_support(game: Game, profile: Profile, objective=SENDER) -> Profile:
    """Equilibrium-preserving support reduction.

    Returns an equilibrium profile over at most n signals (objective
    "sender") or n + 1 signals ("receiver", "welfare", or a custom
    states x actions coefficient table), with the chosen objective's expected
    value preserved exactly.  Raises NotAnEquilibrium for non-equilibrium
    input: the guarantee only holds at equilibria.
    """
    verdict = verify_equilibrium(game, profile)
    if not verdict.is_equilibrium:
        raise NotAnEquilibrium(
            "support reduction requires an equilibrium profile", verdict
        )
    lifted = objective != SENDER
    bound = game.n + 1 if lifted else game.n

    split = equilibrium_split(game, profile, objective)
    points = [
        [k, point.posterior, point.weight, point.tag]
        for k, point in enumerate(split)
    ]

    # Merge duplicates onto the lowest-indexed signal; a point's identity is
    # its posterior (sender) or posterior-plus-tag (tagged objectives).
    merged = []
    seen = {}
    for entry in points:
        key = entry[1] if not lifted else (entry[1], entry[3])
        if key in seen:
            merged[seen[key]][2] += entry[2]
        else:
            seen[key] = len(merged)
            merged.append(entry)
    points = merged

    while len(points) > bound:
        if lifted:
            coords = [entry[1] + (entry[3],) for entry in points]
        else:
            coords = [entry[1] for entry in points]
        lam = find_affine_dependency(coords)
        if lam is None:  # cannot happen above the Carathéodory bound
            raise AssertionError("dependency must exist above the support bound")

        def first_zeroed(direction):
            step = None
            index = None
            for i, entry in enumerate(points):
                d = direction[i]
                if d > 0:
                    ratio = entry[2] / d
                    if step is None or ratio < step:
                        step, index = ratio, i
            return step, index

        t_pos, i_pos = first_zeroed(lam)
        t_neg, i_neg = first_zeroed([-v for v in lam])
        if i_pos <= i_neg:
            step, direction = t_pos, lam
        else:
            step, direction = t_neg, [-v for v in lam]
        for i, entry in enumerate(points):
            entry[2] -= step * direction[i]
        points = [entry for entry in points if entry[2] != 0]

    survivors = sorted(points, key=lambda entry: entry[0])
    signals = tuple(profile.policy.signals[entry[0]] for entry in survivors)
    rows = []
    for i in range(game.n):
        mu = game.prior[i]
        rows.append(
            tuple(entry[2] * entry[1][i] / mu for entry in survivors)
        )
    policy = SignalingPolicy(signals, tuple(rows))
    response = type(profile.response)(
        tuple(profile.response.rows[entry[0]] for entry in survivors)
    )
    return Profile(policy, response)
