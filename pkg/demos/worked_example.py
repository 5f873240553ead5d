"""A binary-state tour: why commitment outcomes fail without commitment,
and how receiver mixing restores them.

The running example has two equally likely states and four receiver
actions.  As a function of the posterior probability p of the high state,
the receiver's four actions earn 3-8p, 2-4p, -2+4p, -5+8p, so his best
response walks a1 -> a2 -> a3 -> a4 as p crosses 1/4, 1/2, 3/4.

With commitment, the sender would split the uniform prior into posteriors
1/4 and 3/4 and enjoy value 1 (the receiver, breaking ties her way, plays
a2/a3).  Without commitment that profile unravels: in the low state she
strictly prefers the signal inducing posterior 1/4 and would abandon the
mix.  But at posterior 1/4 the receiver is exactly indifferent between a1
and a2 (and at 3/4 between a3 and a4); letting him mix half-half makes the
sender indifferent across her signals in both states, and the same split
becomes a genuine equilibrium worth 1/2 -- the sender optimum, as exhaustive
support enumeration confirms.
"""

from cheaptalk import (
    Game,
    Profile,
    ReceiverStrategy,
    SignalingPolicy,
    babbling_equilibrium,
    bayes_posteriors,
    profile_values,
    receiver_best_responses,
    verify_equilibrium,
)
from cheaptalk.rationals import Q, format_rational
from cheaptalk.solvers import solve_enumeration, solve_persuasion_lp

game = Game.build(
    states=["w0", "w1"],
    actions=["a1", "a2", "a3", "a4"],
    prior=["1/2", "1/2"],
    sender_utility=[[-1, 2, -2, 3], [3, -2, 2, -1]],
    receiver_utility=[[3, 2, -2, -5], [-5, -2, 2, 3]],
)

print("Receiver best responses along the posterior segment:")
for p in [Q(0), Q(1, 8), Q(1, 4), Q(1, 2), Q(3, 4), Q(1)]:
    best = receiver_best_responses(game, (1 - p, p))
    print(f"  p = {format_rational(p):>4}: {', '.join(best)}")

print("\nBabbling: one signal, receiver best-responds to the prior.")
babbling = babbling_equilibrium(game)
print(f"  verdict: {verify_equilibrium(game, babbling).is_equilibrium}, "
      f"sender value {format_rational(profile_values(game, babbling).sender)}")

split = SignalingPolicy.build(["sL", "sH"], [["3/4", "1/4"], ["1/4", "3/4"]])
posteriors = bayes_posteriors(game, split)
print("\nThe split both profiles below use:")
for signal, post in posteriors.items():
    print(f"  {signal}: posterior of w1 = {format_rational(post.distribution[1])}, "
          f"marginal {format_rational(post.marginal)}")

commitment = Profile(
    split, ReceiverStrategy.build([[0, 1, 0, 0], [0, 0, 1, 0]], 4)
)
verdict = verify_equilibrium(game, commitment)
print("\nCommitment outcome (receiver plays a2/a3 deterministically):")
print(f"  sender value {format_rational(profile_values(game, commitment).sender)}, "
      f"equilibrium: {verdict.is_equilibrium}")
for v in verdict.violations:
    print(f"  violation: {v.kind} at {v.where} -- {v.used} loses "
          f"{format_rational(v.gap)} against {v.better}")

mixed = Profile(
    split,
    ReceiverStrategy.build([["1/2", "1/2", 0, 0], [0, 0, "1/2", "1/2"]], 4),
)
print("\nSame split with receiver mixing at his indifference points:")
print(f"  equilibrium: {verify_equilibrium(game, mixed).is_equilibrium}, "
      f"sender value {format_rational(profile_values(game, mixed).sender)}")

best = solve_enumeration(game, "sender")
persuasion = solve_persuasion_lp(game)
print("\nSolvers agree on the picture:")
print(f"  sender-optimal equilibrium (support enumeration): "
      f"{format_rational(best.value)}")
print(f"  commitment benchmark (obedience LP):              "
      f"{format_rational(persuasion.value)}")
print(f"  babbling <= cheap talk <= persuasion: "
      f"0 <= {format_rational(best.value)} <= {format_rational(persuasion.value)}")
