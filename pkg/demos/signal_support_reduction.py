"""Compressing equilibrium signal supports without moving the value.

An equilibrium's posteriors, weighted by their signal probabilities,
average back to the prior.  Whenever more signals are in play than states,
those weighted posteriors are affinely dependent, and shifting weight along
a dependency until a signal's weight hits zero removes it while keeping the
average (and, by the sender's equilibrium indifference, her value) intact.
Tagging each posterior with its expected receiver utility and eliminating
in the lifted space does the same for the receiver at the cost of one more
signal; the same trick covers welfare or any linear objective.

The script inflates the worked example's two-signal equilibrium into five
duplicated signals and reduces it back under each objective, checking the
bounds (state count for the sender objective, one more otherwise) and exact
value preservation.
"""

from cheaptalk import (
    Game,
    Profile,
    ReceiverStrategy,
    SignalingPolicy,
    profile_values,
    verify_equilibrium,
)
from cheaptalk.rationals import Q, format_rational
from cheaptalk.support import equilibrium_split, reduce_support

game = Game.build(
    states=["w0", "w1"],
    actions=["a1", "a2", "a3", "a4"],
    prior=["1/2", "1/2"],
    sender_utility=[[-1, 2, -2, 3], [3, -2, 2, -1]],
    receiver_utility=[[3, 2, -2, -5], [-5, -2, 2, 3]],
)
base = Profile(
    SignalingPolicy.build(["sL", "sH"], [["3/4", "1/4"], ["1/4", "3/4"]]),
    ReceiverStrategy.build([["1/2", "1/2", 0, 0], [0, 0, "1/2", "1/2"]], 4),
)


def duplicate(profile, k, t):
    signals = list(profile.policy.signals)
    signals.insert(k + 1, signals[k] + "'")
    rows = []
    for row in profile.policy.rows:
        row = list(row)
        mass = row[k]
        row[k] = mass * t
        row.insert(k + 1, mass * (1 - t))
        rows.append(row)
    responses = list(profile.response.rows)
    responses.insert(k + 1, responses[k])
    return Profile(
        SignalingPolicy.build(signals, rows),
        ReceiverStrategy.build(responses, 4),
    )


inflated = duplicate(duplicate(duplicate(base, 0, Q(1, 3)), 2, Q(2, 7)), 1, Q(1, 2))
print(f"Inflated equilibrium: {len(inflated.policy.signals)} signals "
      f"({', '.join(inflated.policy.signals)})")
print(f"  still verifies: {verify_equilibrium(game, inflated).is_equilibrium}")

split = equilibrium_split(game, inflated, "receiver")
print("  split of the prior (posterior of w1, weight, receiver tag):")
for point in split:
    print(f"    {format_rational(point.posterior[1]):>4}  "
          f"{format_rational(point.weight):>5}  {format_rational(point.tag)}")

before = profile_values(game, inflated)
for objective in ("sender", "receiver", "welfare"):
    reduced = reduce_support(game, inflated, objective)
    after = profile_values(game, reduced)
    bound = game.n if objective == "sender" else game.n + 1
    print(f"\nObjective {objective}: {len(inflated.policy.signals)} -> "
          f"{len(reduced.policy.signals)} signals (bound {bound})")
    print(f"  value {format_rational(getattr(before, objective))} -> "
          f"{format_rational(getattr(after, objective))} (preserved exactly)")
    print(f"  verifies: {verify_equilibrium(game, reduced).is_equilibrium}")
