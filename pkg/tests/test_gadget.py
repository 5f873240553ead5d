"""Formula-to-game compilation: pools, receiver design, certificate equilibria."""

import random

import pytest

from cheaptalk.errors import ReductionError, ValidationError
from cheaptalk.game import (
    profile_values,
    receiver_best_responses,
    verify_equilibrium,
)
from cheaptalk.gadget import (
    BABBLING_GAP_ACTION,
    attractive_variable_pools,
    build_instance,
    build_pools,
    certificate_sender_value,
    construct_equilibrium,
    design_receiver_utilities,
    induced_assignment,
    pool_action,
)
from cheaptalk.rationals import Q, dot, qsum
from cheaptalk.sat import CnfFormula, PartialAssignment, contradictory_clauses

D2_FORMULA = CnfFormula.build(3, [(1, 2, 3), (-1, -2, -3)])


class TestBuildPools:
    def test_d2_counts(self):
        states, pools, d = build_pools(D2_FORMULA)
        assert d == 2
        assert len(states) == 14
        assert len(pools) == 6 + 14 + 12  # 32

    def test_clause_pool_membership(self):
        _, pools, _ = build_pools(D2_FORMULA)
        by_name = {p.name: p for p in pools}
        # clause 1 = (x1 v x2 v x3) under the satisfying triple (T, T, F)
        assert set(by_name["C:1:TTF"].members) == {"c1", "x1@1", "x2@1", "~x3@1"}

    def test_falsifying_triple_has_no_pool(self):
        _, pools, _ = build_pools(D2_FORMULA)
        names = {p.name for p in pools}
        assert "C:1:FFF" not in names  # (F,F,F) falsifies clause 1
        assert "C:2:TTT" not in names  # (T,T,T) falsifies clause 2
        assert sum(1 for n in names if n.startswith("C:1:")) == 7
        assert sum(1 for n in names if n.startswith("C:2:")) == 7

    def test_variable_pools_have_d_members(self):
        _, pools, d = build_pools(D2_FORMULA)
        for pool in pools:
            if pool.name.startswith("V:"):
                assert len(pool.members) == d

    def test_irregular_rejected(self):
        bad = CnfFormula.build(4, [(1, 2, 3), (1, 2, 4)])
        with pytest.raises(ReductionError):
            build_pools(bad)

    def test_d1_rejected(self):
        with pytest.raises(ReductionError):
            build_pools(CnfFormula.build(3, [(1, 2, 3)]))


class TestDesignReceiverUtilities:
    def test_two_state_worked_example(self):
        eps, cols, facets = design_receiver_utilities(
            2, [(1, 0), (Q(1, 2), Q(1, 2))]
        )
        assert cols[0] == (Q(1), Q(-1))
        assert cols[1] == (Q(1, 2), Q(1, 2))
        assert eps == Q(1, 2)
        assert facets[1][0] == (Q(3, 4), Q(1, 4))

    def test_best_pool_action_at_pool_point(self):
        eps, cols, facets = design_receiver_utilities(
            2, [(1, 0), (Q(1, 2), Q(1, 2))]
        )
        y = (Q(1), Q(0))
        assert dot(y, cols[0]) == 1
        assert dot(y, cols[1]) == Q(1, 2)
        assert dot(y, facets[1][0]) == Q(3, 4)

    def test_off_catalog_posterior_dominated(self):
        eps, cols, facets = design_receiver_utilities(
            2, [(1, 0), (Q(1, 2), Q(1, 2))]
        )
        y = (Q(3, 4), Q(1, 4))
        plane = dot(y, cols[1])
        assert plane == Q(1, 2)
        assert max(dot(y, facets[1][w]) for w in range(2)) == Q(5, 8)

    def test_duplicate_points_rejected(self):
        with pytest.raises(ValidationError):
            design_receiver_utilities(2, [(1, 0), (1, 0)])

    def test_single_point_epsilon_default(self):
        eps, _, _ = design_receiver_utilities(2, [(Q(1, 2), Q(1, 2))])
        assert eps == 1


def random_catalog(rng: random.Random, num_states: int, count: int):
    points = set()
    while len(points) < count:
        weights = [Q(rng.randint(0, 4)) for _ in range(num_states)]
        if qsum(weights) == 0:
            continue
        total = qsum(weights)
        points.add(tuple(w / total for w in weights))
    return sorted(points)


def check_property_one(num_states, points, cols, facets):
    """At each catalog point, its own action is best and no other pool action is."""
    count = len(points)
    for p in range(count):
        y = points[p]
        values = [dot(y, cols[q]) for q in range(count)]
        facet_values = [
            dot(y, facets[q][w]) for q in range(count) for w in range(num_states)
        ]
        best = max(values + facet_values)
        assert values[p] == best
        for q in range(count):
            if q != p:
                assert values[q] < best


def check_property_two(num_states, points, cols, facets, rng, samples=100):
    """max_w tilted-plane value strictly beats the plane away from its point."""
    tested = [tuple(pt) for pt in points]
    for a in range(len(points)):
        for b in range(a + 1, len(points)):
            tested.append(
                tuple((x + y) / 2 for x, y in zip(points[a], points[b]))
            )
    for _ in range(samples):
        tested.append(random_catalog(rng, num_states, 1)[0])
    for p in range(len(points)):
        for y in tested:
            if y == tuple(points[p]):
                continue
            plane = dot(y, cols[p])
            tilted = max(dot(y, facets[p][w]) for w in range(num_states))
            assert tilted > plane


class TestReceiverDesignProperties:
    def test_random_catalogs(self):
        rng = random.Random(67)
        for _ in range(10):
            num_states = rng.randint(2, 4)
            count = rng.randint(1, 5)
            points = random_catalog(rng, num_states, count)
            eps, cols, facets = design_receiver_utilities(num_states, points)
            check_property_one(num_states, points, cols, facets)
            check_property_two(num_states, points, cols, facets, rng, samples=20)

    def test_epsilon_matches_definitional_minimum(self):
        rng = random.Random(71)
        for _ in range(10):
            num_states = rng.randint(2, 4)
            points = random_catalog(rng, num_states, rng.randint(2, 5))
            eps, cols, _ = design_receiver_utilities(num_states, points)
            definitional = None
            for p in range(len(points)):
                own = dot(points[p], cols[p])
                for q in range(len(points)):
                    if q == p:
                        continue
                    gap = own - dot(points[p], cols[q])
                    if definitional is None or gap < definitional:
                        definitional = gap
            assert eps == definitional


class TestBuildInstance:
    def test_d2_sizes_and_ranges(self):
        game, meta = build_instance(D2_FORMULA)
        assert game.n == 14
        assert game.m == 480  # 15 * 32
        assert meta.epsilon > 0
        sender_values = {v for row in game.sender_utility for v in row}
        assert sender_values == {Q(-7), Q(0), Q(1)}

    def test_normalized_values(self):
        game, meta = build_instance(D2_FORMULA, normalize=True)
        sender_values = {v for row in game.sender_utility for v in row}
        assert sender_values == {Q(0), Q(7, 8), Q(1)}

    def test_babbling_gap_variant(self):
        game, meta = build_instance(
            D2_FORMULA, normalize=True, babbling_gap_alpha=Q(7, 8)
        )
        assert len(meta.pools) == 33
        assert game.m == 15 * 33
        idx = game.action_index(BABBLING_GAP_ACTION)
        assert all(row[idx] == Q(7, 8) for row in game.sender_utility)

    def test_property_one_on_generated_catalog(self):
        game, meta = build_instance(D2_FORMULA)
        prior = game.prior
        for pool in meta.pools:
            posterior = pool.posterior(meta.states, prior)
            best = receiver_best_responses(game, posterior)
            assert pool_action(pool.name) in best
            for other in meta.pools:
                if other.name != pool.name:
                    assert pool_action(other.name) not in best


class TestConstructEquilibrium:
    def test_full_satisfying_assignment(self):
        game, meta = build_instance(D2_FORMULA)
        assignment = PartialAssignment.build({1: True, 2: True, 3: False})
        assert contradictory_clauses(D2_FORMULA, assignment) == []
        profile = construct_equilibrium(meta, assignment)
        assert len(profile.policy.signals) == 5  # 3 variable + 2 clause pools
        verdict = verify_equilibrium(game, profile)
        assert verdict.is_equilibrium
        values = profile_values(game, profile)
        assert values.sender == Q(3, 7)
        assert values.sender == certificate_sender_value(meta, 3)
        # constructed policies split the prior exactly
        from cheaptalk.game import bayes_posteriors

        posteriors = bayes_posteriors(game, profile.policy)
        for i in range(game.n):
            assert (
                qsum(p.marginal * p.distribution[i] for p in posteriors.values())
                == game.prior[i]
            )

    def test_empty_assignment(self):
        game, meta = build_instance(D2_FORMULA)
        profile = construct_equilibrium(meta, PartialAssignment.build({}))
        assert verify_equilibrium(game, profile).is_equilibrium
        assert profile_values(game, profile).sender == 0
        # clause pools take the clauses' own literal polarities
        assert "C:1:TTT" in profile.policy.signals
        assert "C:2:FFF" in profile.policy.signals

    def test_single_variable_assignment(self):
        game, meta = build_instance(D2_FORMULA)
        profile = construct_equilibrium(meta, PartialAssignment.build({1: True}))
        assert verify_equilibrium(game, profile).is_equilibrium
        assert profile_values(game, profile).sender == Q(1, 7)

    def test_contradictory_assignment_rejected(self):
        _, meta = build_instance(D2_FORMULA)
        falsifies_second = PartialAssignment.build({1: True, 2: True, 3: True})
        with pytest.raises(ValidationError):
            construct_equilibrium(meta, falsifies_second)

    def test_normalized_value(self):
        game, meta = build_instance(D2_FORMULA, normalize=True)
        assignment = PartialAssignment.build({1: True, 2: True, 3: False})
        profile = construct_equilibrium(meta, assignment)
        assert verify_equilibrium(game, profile).is_equilibrium
        assert profile_values(game, profile).sender == (Q(3, 7) + 7) / 8

    def test_normalization_preserves_verdicts(self):
        game_raw, meta_raw = build_instance(D2_FORMULA)
        game_norm, meta_norm = build_instance(D2_FORMULA, normalize=True)
        assignment = PartialAssignment.build({1: False})
        profile = construct_equilibrium(meta_raw, assignment)
        assert construct_equilibrium(meta_norm, assignment) == profile
        v_raw = verify_equilibrium(game_raw, profile)
        v_norm = verify_equilibrium(game_norm, profile)
        assert v_raw.is_equilibrium == v_norm.is_equilibrium

    def test_certificate_on_babbling_gap_instance(self):
        game, meta = build_instance(D2_FORMULA, babbling_gap_alpha=Q(1, 5))
        assignment = PartialAssignment.build({1: True, 2: True, 3: False})
        profile = construct_equilibrium(meta, assignment)
        assert verify_equilibrium(game, profile).is_equilibrium
        assert profile_values(game, profile).sender == Q(3, 7)

    def test_attractive_pools_and_induced_assignment(self):
        game, meta = build_instance(D2_FORMULA)
        assignment = PartialAssignment.build({1: True, 3: False})
        profile = construct_equilibrium(meta, assignment)
        attractive = attractive_variable_pools(game, meta, profile)
        assert set(attractive) == {"V:~x1", "V:x3"}
        # no contradicting pair is attractive, and the induced assignment is
        # exactly the input and contradicts nothing
        positives = {n for n in attractive if n.startswith("V:x")}
        negatives = {n[4:] for n in attractive if n.startswith("V:~x")}
        assert not {n[3:] for n in positives}.intersection(negatives)
        induced = induced_assignment(meta, attractive)
        assert induced == assignment
        assert contradictory_clauses(meta.formula, induced) == []
