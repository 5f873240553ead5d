"""From a 3CNF formula to a cheap talk game whose best equilibrium counts
assignable variables.

Given a d-regular formula (every variable in exactly d clauses, here d=2),
the compiler creates seven states per clause, a pool catalog (per-variable
pools, per-clause pools for each satisfying truth triple, singletons), and
utilities that reward the sender only when the receiver faces a variable
pool's posterior.  The receiver's utilities come from tangent planes of a
strictly convex function, so each pool's action is optimal exactly at its
pool posterior and penalty actions take over everywhere else.

Any non-contradictory partial assignment of k variables then turns into an
equilibrium worth exactly k*d/(7m): assigned variables contribute their
unused polarity's pool (value 1 per member state), every clause state hides
inside a clause pool (value 0), leftovers go to singletons (value 0).  The
script builds the instance, finds the best k by exhaustive search, verifies
the certificate equilibrium, and shows the babbling-gap variant where a
prior pool pins the babbling value at a chosen alpha.
"""

from cheaptalk import profile_values, verify_equilibrium
from cheaptalk.gadget import (
    attractive_variable_pools,
    build_instance,
    certificate_sender_value,
    construct_equilibrium,
    induced_assignment,
)
from cheaptalk.rationals import Q, format_rational
from cheaptalk.sat import (
    CnfFormula,
    contradictory_clauses,
    max_var_3sat_bruteforce,
    regularity,
)

formula = CnfFormula.build(3, [(1, 2, 3), (-1, -2, -3)])
print(f"Formula: (x1 v x2 v x3) & (~x1 v ~x2 v ~x3), d = {regularity(formula)}")

game, meta = build_instance(formula)
print(f"Instance: {game.n} states, {game.m} actions, "
      f"{len(meta.pools)} pools, epsilon = {format_rational(meta.epsilon)}")

search = max_var_3sat_bruteforce(formula)
print(f"\nLargest non-contradictory assignment: k = {search.k} "
      f"(witness {search.witness.as_dict()})")
assert contradictory_clauses(formula, search.witness) == []

profile = construct_equilibrium(meta, search.witness)
values = profile_values(game, profile)
print(f"Certificate equilibrium: {len(profile.policy.signals)} signals "
      f"({', '.join(profile.policy.signals)})")
print(f"  verifies: {verify_equilibrium(game, profile).is_equilibrium}")
print(f"  sender value {format_rational(values.sender)} "
      f"= k*d/(7m) = {format_rational(certificate_sender_value(meta, search.k))}")

attractive = attractive_variable_pools(game, meta, profile)
print(f"  attractive variable pools: {', '.join(attractive)}")
print(f"  induced assignment: {induced_assignment(meta, attractive).as_dict()}")

game_norm, meta_norm = build_instance(formula, normalize=True)
profile_norm = construct_equilibrium(meta_norm, search.witness)
print(f"\nNormalized instance (sender utilities in [0,1]): sender value "
      f"{format_rational(profile_values(game_norm, profile_norm).sender)} "
      f"= (k*d/(7m) + 7)/8")

alpha = Q(1, 5)
game_gap, meta_gap = build_instance(formula, babbling_gap_alpha=alpha)
profile_gap = construct_equilibrium(meta_gap, search.witness)
print(f"\nBabbling-gap variant (alpha = {format_rational(alpha)}): the prior joins "
      f"the pool catalog, action a0 pays alpha everywhere")
print(f"  {game_gap.m} actions now; certificate still verifies: "
      f"{verify_equilibrium(game_gap, profile_gap).is_equilibrium}, value "
      f"{format_rational(profile_values(game_gap, profile_gap).sender)}")
