"""The two-action dichotomy: greedy recommendations or babbling, nothing else.

With two receiver actions, a sender-optimal equilibrium has a remarkably
rigid shape.  Sort states by the sender's strict preference; she must send
one fixed signal wherever she prefers a1 and another wherever she prefers
a2 (deviating toward the friendlier signal is otherwise profitable), so the
only candidate beyond babbling is the greedy recommendation policy.  It is
an equilibrium exactly when the receiver is willing to obey both
recommendations, i.e. when the prior-weighted normalized receiver utility
is nonnegative over the recommend-a1 states and nonpositive over the rest.
When obedience fails, the receiver ignores all signals and babbling is
already optimal.

The script walks three hand-sized games (obedience boundary, obedience
failure, aligned preferences) and then cross-checks the linear-time solver
against exhaustive support enumeration on a batch of random games.
"""

import random

from cheaptalk import Game, profile_values, verify_equilibrium
from cheaptalk.rationals import Q, format_rational, qsum
from cheaptalk.solvers import partition_states, solve_binary_action, solve_enumeration


def show(title, game):
    result = solve_binary_action(game)
    part = partition_states(game)
    print(f"{title}")
    print(f"  partition: prefers-a1 {list(part.omega1)}, prefers-a2 {list(part.omega2)}, "
          f"indifferent {list(part.omega12_1 + part.omega12_2)}")
    print(f"  method: {result.method}, sender value {format_rational(result.value)}, "
          f"verifies: {verify_equilibrium(game, result.profile).is_equilibrium}")


show(
    "Obedience holds on the boundary (both sums exactly zero):",
    Game.build(["w1", "w2"], ["a1", "a2"], ["1/2", "1/2"],
               [[1, 0], [1, 0]], [[1, 0], [-1, 0]]),
)
show(
    "\nObedience fails (receiver refuses a1 given the -3 state):",
    Game.build(["w1", "w2"], ["a1", "a2"], ["1/2", "1/2"],
               [[1, 0], [1, 0]], [[1, 0], [-3, 0]]),
)
show(
    "\nAligned preferences (greedy = full revelation):",
    Game.build(["w1", "w2"], ["a1", "a2"], ["1/2", "1/2"],
               [[1, 0], [0, 1]], [[1, 0], [0, 1]]),
)

print("\nCross-check against support enumeration on random games:")
GRID = sorted({Q(k, q) for q in range(1, 5) for k in range(-3 * q, 3 * q + 1)})
rng = random.Random(7)
agreements = 0
for trial in range(25):
    n = rng.randint(1, 3)
    weights = [Q(rng.randint(1, 5)) for _ in range(n)]
    total = qsum(weights)
    game = Game.build(
        states=[f"w{i}" for i in range(n)],
        actions=["a1", "a2"],
        prior=[w / total for w in weights],
        sender_utility=[[rng.choice(GRID) for _ in range(2)] for _ in range(n)],
        receiver_utility=[[rng.choice(GRID) for _ in range(2)] for _ in range(n)],
    )
    fast = solve_binary_action(game)
    slow = solve_enumeration(game, "sender")
    assert fast.value == slow.value
    assert profile_values(game, fast.profile).sender == fast.value
    agreements += 1
print(f"  {agreements}/25 games: linear-time value == enumeration value, exactly")
