"""Finite cheap talk games: model, posterior updates, best responses, verification.

A game couples a finite state space (with a strictly positive prior) and a
finite action space with exact-rational utility tables for the two players.
A profile pairs a sender signaling policy (per-state distribution over a
finite signal list, every signal sent with positive unconditional
probability) with a receiver strategy (per-signal distribution over actions).

The verifier checks the two mutual best-response conditions exactly:
receiver mixes only over exact argmax actions at every on-path posterior,
and the sender mixes only over exact argmax signals in every state, with
deviations restricted to the policy's support.  Off-path beliefs are never
represented or evaluated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict

from .errors import ValidationError
from .rationals import ONE, ZERO, Q, qsum, rational

SENDER_DEVIATION = "SenderDeviation"
RECEIVER_SUBOPTIMAL = "ReceiverSuboptimal"

SENDER_FAVOR = "senderFavor"
INDEX_ORDER = "indexOrder"


@dataclass(frozen=True)
class Game:
    states: tuple
    actions: tuple
    prior: tuple
    sender_utility: tuple  # n x m rows of rationals
    receiver_utility: tuple  # n x m

    @staticmethod
    def build(states, actions, prior, sender_utility, receiver_utility) -> "Game":
        states = tuple(str(s) for s in states)
        actions = tuple(str(a) for a in actions)
        if not states or not actions:
            raise ValidationError("a game needs at least one state and one action")
        if len(set(states)) != len(states):
            raise ValidationError("state labels must be unique")
        if len(set(actions)) != len(actions):
            raise ValidationError("action labels must be unique")
        prior = tuple(rational(v) for v in prior)
        if len(prior) != len(states):
            raise ValidationError("prior length must match the state count")
        if any(p <= 0 for p in prior):
            raise ValidationError("prior entries must be strictly positive")
        if qsum(prior) != 1:
            raise ValidationError("prior must sum to exactly 1")
        u_s = _utility_table(sender_utility, len(states), len(actions), "sender")
        u_r = _utility_table(receiver_utility, len(states), len(actions), "receiver")
        return Game(states, actions, prior, u_s, u_r)

    @property
    def n(self) -> int:
        return len(self.states)

    @property
    def m(self) -> int:
        return len(self.actions)

    def state_index(self, label) -> int:
        try:
            return self.states.index(label)
        except ValueError:
            raise ValidationError(f"unknown state {label!r}") from None

    def action_index(self, label) -> int:
        try:
            return self.actions.index(label)
        except ValueError:
            raise ValidationError(f"unknown action {label!r}") from None


def _utility_table(rows, n, m, who):
    table = tuple(tuple(rational(v) for v in row) for row in rows)
    if len(table) != n or any(len(row) != m for row in table):
        raise ValidationError(f"{who} utility table must be {n}x{m}")
    return table


@dataclass(frozen=True)
class SignalingPolicy:
    signals: tuple
    rows: tuple  # one distribution over signals per state

    @staticmethod
    def build(signals, rows) -> "SignalingPolicy":
        signals = tuple(str(s) for s in signals)
        if not signals:
            raise ValidationError("a policy needs at least one signal")
        if len(set(signals)) != len(signals):
            raise ValidationError("signal labels must be unique")
        out = []
        for row in rows:
            row = tuple(rational(v) for v in row)
            if len(row) != len(signals):
                raise ValidationError("policy row width must match the signal count")
            if any(v < 0 for v in row):
                raise ValidationError("policy probabilities must be nonnegative")
            if qsum(row) != 1:
                raise ValidationError("each policy row must sum to exactly 1")
            out.append(row)
        return SignalingPolicy(signals, tuple(out))


@dataclass(frozen=True)
class ReceiverStrategy:
    rows: tuple  # one distribution over actions per signal, in policy order

    @staticmethod
    def build(rows, num_actions) -> "ReceiverStrategy":
        out = []
        for row in rows:
            row = tuple(rational(v) for v in row)
            if len(row) != num_actions:
                raise ValidationError("response row width must match the action count")
            if any(v < 0 for v in row):
                raise ValidationError("response probabilities must be nonnegative")
            if qsum(row) != 1:
                raise ValidationError("each response row must sum to exactly 1")
            out.append(row)
        return ReceiverStrategy(tuple(out))


@dataclass(frozen=True)
class Profile:
    policy: SignalingPolicy
    response: ReceiverStrategy


@dataclass(frozen=True)
class Posterior:
    distribution: tuple
    marginal: Q


@dataclass(frozen=True)
class Violation:
    kind: str  # SenderDeviation | ReceiverSuboptimal
    where: str  # state label (sender) or signal label (receiver)
    used: str  # signal/action played with positive probability
    better: str  # a strictly better signal/action
    gap: Q  # exact utility improvement available


@dataclass(frozen=True)
class Verdict:
    is_equilibrium: bool
    violations: tuple


@dataclass(frozen=True)
class ProfileValues:
    sender: Q
    receiver: Q
    welfare: Q


def validate_policy(game: Game, policy: SignalingPolicy):
    """Check a policy against a game; zero-marginal signals are rejected."""
    if len(policy.rows) != game.n:
        raise ValidationError("policy must have one row per game state")
    for k in range(len(policy.signals)):
        marginal = qsum(game.prior[i] * policy.rows[i][k] for i in range(game.n))
        if marginal <= 0:
            raise ValidationError(
                f"signal {policy.signals[k]!r} has zero unconditional probability"
            )


def validate_profile(game: Game, profile: Profile):
    validate_policy(game, profile.policy)
    if len(profile.response.rows) != len(profile.policy.signals):
        raise ValidationError("response must cover exactly the policy's signals")
    for row in profile.response.rows:
        if len(row) != game.m:
            raise ValidationError("response row width must match the action count")


def bayes_posteriors(game: Game, policy: SignalingPolicy) -> Dict[str, Posterior]:
    """Posterior belief and marginal probability for every signal."""
    validate_policy(game, policy)
    out = {}
    for k, signal in enumerate(policy.signals):
        joint = [game.prior[i] * policy.rows[i][k] for i in range(game.n)]
        marginal = qsum(joint)
        out[signal] = Posterior(tuple(v / marginal for v in joint), marginal)
    return out


def receiver_action_values(game: Game, posterior) -> list:
    """Expected receiver utility of each action under a posterior."""
    posterior = tuple(rational(v) for v in posterior)
    if len(posterior) != game.n:
        raise ValidationError("posterior length must match the state count")
    if any(v < 0 for v in posterior) or qsum(posterior) != 1:
        raise ValidationError("posterior must be a distribution")
    u_r = game.receiver_utility
    return [
        qsum(posterior[i] * u_r[i][a] for i in range(game.n)) for a in range(game.m)
    ]


def receiver_best_responses(game: Game, posterior) -> tuple:
    """Exact argmax action set at a posterior, in action order."""
    values = receiver_action_values(game, posterior)
    best = max(values)
    return tuple(game.actions[a] for a in range(game.m) if values[a] == best)


def signal_values_for_state(game: Game, state_idx: int, profile: Profile) -> list:
    """Expected sender utility of each signal in a state, given the response."""
    u_s = game.sender_utility[state_idx]
    return [
        qsum(row[a] * u_s[a] for a in range(game.m)) for row in profile.response.rows
    ]


def sender_best_signals(game: Game, state, profile: Profile) -> tuple:
    """Exact argmax signal set for a state; deviations stay inside the support."""
    validate_profile(game, profile)
    idx = game.state_index(state)
    values = signal_values_for_state(game, idx, profile)
    best = max(values)
    return tuple(
        profile.policy.signals[k]
        for k in range(len(values))
        if values[k] == best
    )


def profile_values(game: Game, profile: Profile) -> ProfileValues:
    """Exact expected sender/receiver utilities and their sum."""
    validate_profile(game, profile)
    sender = ZERO
    receiver = ZERO
    for i in range(game.n):
        for k in range(len(profile.policy.signals)):
            w = game.prior[i] * profile.policy.rows[i][k]
            if w == 0:
                continue
            srow = profile.response.rows[k]
            sender += w * qsum(
                srow[a] * game.sender_utility[i][a] for a in range(game.m)
            )
            receiver += w * qsum(
                srow[a] * game.receiver_utility[i][a] for a in range(game.m)
            )
    return ProfileValues(sender, receiver, sender + receiver)


def verify_equilibrium(game: Game, profile: Profile) -> Verdict:
    """Exact perfect Bayesian (cheap talk) equilibrium check.

    Collects every violation rather than stopping at the first: receiver
    mixing over a non-best-response action at an on-path signal, or sender
    mixing over a non-best signal in some state.
    """
    validate_profile(game, profile)
    violations = []

    posteriors = bayes_posteriors(game, profile.policy)
    for k, signal in enumerate(profile.policy.signals):
        values = receiver_action_values(game, posteriors[signal].distribution)
        best = max(values)
        best_label = game.actions[values.index(best)]
        for a in range(game.m):
            if profile.response.rows[k][a] > 0 and values[a] < best:
                violations.append(
                    Violation(
                        RECEIVER_SUBOPTIMAL,
                        where=signal,
                        used=game.actions[a],
                        better=best_label,
                        gap=best - values[a],
                    )
                )

    for i, state in enumerate(game.states):
        values = signal_values_for_state(game, i, profile)
        best = max(values)
        best_label = profile.policy.signals[values.index(best)]
        for k in range(len(values)):
            if profile.policy.rows[i][k] > 0 and values[k] < best:
                violations.append(
                    Violation(
                        SENDER_DEVIATION,
                        where=state,
                        used=profile.policy.signals[k],
                        better=best_label,
                        gap=best - values[k],
                    )
                )

    return Verdict(not violations, tuple(violations))


def babbling_equilibrium(game: Game, tie_break: str = SENDER_FAVOR) -> Profile:
    """No-revelation equilibrium: one signal, receiver best-responds to the prior.

    Under senderFavor the receiver picks, among his best responses to the
    prior, an action maximizing the sender's prior-expected utility (ties
    then by action index); under indexOrder simply the lowest-index best
    response.
    """
    if tie_break not in (SENDER_FAVOR, INDEX_ORDER):
        raise ValidationError(f"unknown tie break {tie_break!r}")
    values = receiver_action_values(game, game.prior)
    best = max(values)
    candidates = [a for a in range(game.m) if values[a] == best]
    if tie_break == SENDER_FAVOR and len(candidates) > 1:
        sender_values = [
            qsum(game.prior[i] * game.sender_utility[i][a] for i in range(game.n))
            for a in candidates
        ]
        top = max(sender_values)
        candidates = [a for a, v in zip(candidates, sender_values) if v == top]
    chosen = candidates[0]
    policy = SignalingPolicy(("s1",), tuple((ONE,) for _ in range(game.n)))
    response_row = tuple(ONE if a == chosen else ZERO for a in range(game.m))
    return Profile(policy, ReceiverStrategy((response_row,)))
