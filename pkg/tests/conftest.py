"""Shared fixtures: the binary-state worked example and random generators."""

import random

import pytest

from cheaptalk.game import Game, Profile, ReceiverStrategy, SignalingPolicy
from cheaptalk.rationals import Q, qsum


@pytest.fixture
def table1() -> Game:
    """Two states, uniform prior, four actions; the repo's worked example.

    Receiver action values as a function of p = P(w1) are 3-8p, 2-4p,
    -2+4p, -5+8p, so the best-response regions split at 1/4, 1/2, 3/4.
    """
    return Game.build(
        states=["w0", "w1"],
        actions=["a1", "a2", "a3", "a4"],
        prior=["1/2", "1/2"],
        sender_utility=[[-1, 2, -2, 3], [3, -2, 2, -1]],
        receiver_utility=[[3, 2, -2, -5], [-5, -2, 2, 3]],
    )


@pytest.fixture
def table1_mixed_profile() -> Profile:
    """The sender-optimal equilibrium: posteriors 1/4 and 3/4, receiver
    mixing a1/a2 and a3/a4 half-half."""
    policy = SignalingPolicy.build(
        ["sL", "sH"], [["3/4", "1/4"], ["1/4", "3/4"]]
    )
    response = ReceiverStrategy.build(
        [["1/2", "1/2", 0, 0], [0, 0, "1/2", "1/2"]], 4
    )
    return Profile(policy, response)


@pytest.fixture
def table1_persuasion_profile() -> Profile:
    """The commitment outcome: same split, receiver plays a2/a3 deterministically.
    Not a cheap talk equilibrium."""
    policy = SignalingPolicy.build(
        ["sL", "sH"], [["3/4", "1/4"], ["1/4", "3/4"]]
    )
    response = ReceiverStrategy.build([[0, 1, 0, 0], [0, 0, 1, 0]], 4)
    return Profile(policy, response)


GRID = sorted({Q(k, q) for q in range(1, 5) for k in range(-3 * q, 3 * q + 1)})


def random_rational(rng: random.Random) -> Q:
    """Uniform over the rationals in [-3, 3] with denominator at most 4."""
    return rng.choice(GRID)


def random_prior(rng: random.Random, n: int):
    weights = [Q(rng.randint(1, 6)) for _ in range(n)]
    total = qsum(weights)
    return [w / total for w in weights]


def random_game(rng: random.Random, n: int, m: int) -> Game:
    return Game.build(
        states=[f"w{i}" for i in range(n)],
        actions=[f"a{j}" for j in range(m)],
        prior=random_prior(rng, n),
        sender_utility=[[random_rational(rng) for _ in range(m)] for _ in range(n)],
        receiver_utility=[[random_rational(rng) for _ in range(m)] for _ in range(n)],
    )


def random_policy(rng: random.Random, n: int, num_signals: int) -> SignalingPolicy:
    """Random valid policy; retries until every signal has positive marginal."""
    while True:
        rows = []
        for _ in range(n):
            weights = [Q(rng.randint(0, 4)) for _ in range(num_signals)]
            if qsum(weights) == 0:
                weights[rng.randrange(num_signals)] = Q(1)
            total = qsum(weights)
            rows.append([w / total for w in weights])
        used = [
            any(row[k] > 0 for row in rows) for k in range(num_signals)
        ]
        if all(used):
            return SignalingPolicy.build(
                [f"s{k + 1}" for k in range(num_signals)], rows
            )


def random_posterior(rng: random.Random, n: int):
    weights = [Q(rng.randint(0, 5)) for _ in range(n)]
    if qsum(weights) == 0:
        weights[0] = Q(1)
    total = qsum(weights)
    return tuple(w / total for w in weights)
