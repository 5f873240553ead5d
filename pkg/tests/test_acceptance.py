"""Acceptance suite: one test per criterion, exact comparisons throughout.

Each criterion prints a single pass/fail line with its runtime against the
stated budget.  All value comparisons are exact rational equality; there are
no tolerances anywhere.  Run with `pytest tests/test_acceptance.py -v -s`.
"""

import itertools
import random
import time
from contextlib import contextmanager

from conftest import random_game, random_policy, random_posterior

from cheaptalk.game import (
    babbling_equilibrium,
    bayes_posteriors,
    profile_values,
    receiver_action_values,
    verify_equilibrium,
)
from cheaptalk.gadget import (
    build_instance,
    construct_equilibrium,
    design_receiver_utilities,
)
from cheaptalk.rationals import Q, dot, qsum
from cheaptalk.sat import (
    CnfFormula,
    PartialAssignment,
    contradictory_clauses,
    full_to_partial,
    max_var_3sat_bruteforce,
)
from cheaptalk.solvers import (
    solve_binary_action,
    solve_enumeration,
    solve_persuasion_lp,
)
from cheaptalk.support import reduce_support
from test_support import inflate

D2_FORMULA = CnfFormula.build(3, [(1, 2, 3), (-1, -2, -3)])


@contextmanager
def criterion(number, name, limit_seconds):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        print(
            f"\n[acceptance {number}] {name}: {'PASS' if ok else 'FAIL'} "
            f"({elapsed:.1f}s, limit {limit_seconds}s)"
        )
        if ok:
            assert elapsed < limit_seconds, (
                f"criterion {number} exceeded its runtime budget"
            )


def test_criterion_1_worked_example(table1, table1_mixed_profile):
    with criterion(1, "worked-example sender optimum", 60):
        result = solve_enumeration(table1, "sender")
        assert result.value == Q(1, 2)
        assert verify_equilibrium(table1, result.profile).is_equilibrium
        verdict = verify_equilibrium(table1, table1_mixed_profile)
        assert verdict.is_equilibrium
        assert profile_values(table1, table1_mixed_profile).sender == Q(1, 2)


def test_criterion_2_persuasion_baseline(table1):
    with criterion(2, "persuasion baseline and dominance chain", 1):
        persuasion = solve_persuasion_lp(table1)
        assert persuasion.value == 1
        babbling = profile_values(table1, babbling_equilibrium(table1)).sender
        cheap_talk = Q(1, 2)  # criterion 1's enumeration optimum
        assert babbling == 0
        assert babbling <= cheap_talk <= persuasion.value


def test_criterion_3_reduction_end_to_end():
    with criterion(3, "reduction pipeline on the d=2 formula", 60):
        game, meta = build_instance(D2_FORMULA)
        assert game.n == 14
        assert game.m == 480
        search = max_var_3sat_bruteforce(D2_FORMULA)
        assert search.k == 3
        profile = construct_equilibrium(meta, search.witness)
        assert verify_equilibrium(game, profile).is_equilibrium
        assert profile_values(game, profile).sender == Q(3, 7)

        game_norm, meta_norm = build_instance(D2_FORMULA, normalize=True)
        profile_norm = construct_equilibrium(meta_norm, search.witness)
        assert verify_equilibrium(game_norm, profile_norm).is_equilibrium
        assert profile_values(game_norm, profile_norm).sender == (Q(3, 7) + 7) / 8


def _distinct_rational_points(rng, dim, count):
    points = set()
    while len(points) < count:
        weights = [Q(rng.randint(0, 6)) for _ in range(dim)]
        total = qsum(weights)
        if total == 0:
            continue
        points.add(tuple(w / total for w in weights))
    return sorted(points)


def _check_catalog_properties(rng, dim, points, samples=100):
    epsilon, pool_cols, facet_cols = design_receiver_utilities(dim, points)
    count = len(points)
    # Property 1: at each catalog point, its action is a best response and no
    # other catalog action is.
    for p in range(count):
        y = points[p]
        pool_values = [dot(y, pool_cols[q]) for q in range(count)]
        best = max(
            max(pool_values),
            max(
                dot(y, facet_cols[q][w])
                for q in range(count)
                for w in range(dim)
            ),
        )
        assert pool_values[p] == best
        for q in range(count):
            if q != p:
                assert pool_values[q] < best
    # Property 2 (algebraic form): away from its point, every plane is
    # strictly beaten by one of its tilted copies.
    tested = list(points)
    for a in range(count):
        for b in range(a + 1, count):
            tested.append(tuple((x + y) / 2 for x, y in zip(points[a], points[b])))
    for _ in range(samples):
        tested.append(random_posterior(rng, dim))
    for p in range(count):
        for y in tested:
            if tuple(y) == tuple(points[p]):
                continue
            assert (
                max(dot(y, facet_cols[p][w]) for w in range(dim))
                > dot(y, pool_cols[p])
            )
    # epsilon: closed form equals the definitional minimum
    if count > 1:
        definitional = min(
            dot(points[p], pool_cols[p]) - dot(points[p], pool_cols[q])
            for p in range(count)
            for q in range(count)
            if q != p
        )
        assert epsilon == definitional


def test_criterion_4_receiver_design_properties():
    with criterion(4, "receiver-design property suite", 120):
        rng = random.Random(2024)
        for _ in range(50):
            dim = rng.randint(2, 6)
            count = rng.randint(1, 10)
            points = _distinct_rational_points(rng, dim, count)
            _check_catalog_properties(rng, dim, points, samples=100)
        # reduction-generated catalogs: plain and babbling-gap variants
        for alpha in (None, Q(7, 8)):
            game, meta = build_instance(D2_FORMULA, babbling_gap_alpha=alpha)
            prior = game.prior
            points = [pool.posterior(meta.states, prior) for pool in meta.pools]
            _check_catalog_properties(rng, game.n, points, samples=100)


def test_criterion_5_binary_oracle_equivalence():
    with criterion(5, "binary solver vs enumeration on 200 games", 600):
        rng = random.Random(1009)
        for trial in range(200):
            n = rng.randint(1, 4)
            game = random_game(rng, n, 2)
            fast = solve_binary_action(game)
            slow = solve_enumeration(game, "sender")
            assert fast.value == slow.value, (trial, fast.value, slow.value)
            assert verify_equilibrium(game, fast.profile).is_equilibrium
            assert verify_equilibrium(game, slow.profile).is_equilibrium


def test_criterion_6_support_reduction():
    with criterion(6, "support reduction on 100 inflated equilibria", 120):
        rng = random.Random(4242)
        objectives = itertools.cycle(["sender", "receiver", "welfare"])
        done = 0
        while done < 100:
            n = rng.randint(1, 4)
            game = random_game(rng, n, rng.randint(2, 4))
            base = babbling_equilibrium(game)
            profile = base
            for _ in range(rng.randint(1, n + 1)):
                k = rng.randrange(len(profile.policy.signals))
                profile = inflate(profile, k, Q(rng.randint(1, 4), 5))
            assert verify_equilibrium(game, profile).is_equilibrium
            objective = next(objectives)
            before = profile_values(game, profile)
            reduced = reduce_support(game, profile, objective)
            after = profile_values(game, reduced)
            bound = game.n if objective == "sender" else game.n + 1
            assert len(reduced.policy.signals) <= bound
            assert getattr(after, objective) == getattr(before, objective)
            assert verify_equilibrium(game, reduced).is_equilibrium
            done += 1


def test_criterion_7_max_var_3sat():
    with criterion(7, "Max-Var searches and assignment repair", 10):
        single = CnfFormula.build(3, [(1, 2, 3)])
        assert max_var_3sat_bruteforce(single).k == 3

        clauses = [
            tuple(v if s else -v for v, s in zip((1, 2, 3), signs))
            for signs in itertools.product((True, False), repeat=3)
        ]
        eight = CnfFormula.build(3, clauses)
        assert max_var_3sat_bruteforce(eight).k == 2

        all_true = PartialAssignment.build({1: True, 2: True, 3: True})
        repaired = full_to_partial(eight, all_true)
        assert repaired.size == 2
        assert contradictory_clauses(eight, repaired) == []


def test_criterion_8_universal_invariants():
    with criterion(8, "prior-split, babbling, convexity invariants", 120):
        rng = random.Random(8675309)
        for _ in range(500):
            n = rng.randint(1, 5)
            game = random_game(rng, n, rng.randint(1, 4))
            policy = random_policy(rng, n, rng.randint(1, n + 2))
            posteriors = bayes_posteriors(game, policy)
            for i in range(n):
                assert (
                    qsum(
                        p.marginal * p.distribution[i]
                        for p in posteriors.values()
                    )
                    == game.prior[i]
                )
            assert verify_equilibrium(
                game, babbling_equilibrium(game)
            ).is_equilibrium
        for _ in range(500):
            n = rng.randint(1, 5)
            game = random_game(rng, n, rng.randint(1, 4))
            q1 = random_posterior(rng, n)
            q2 = random_posterior(rng, n)
            mid = tuple((a + b) / 2 for a, b in zip(q1, q2))
            v1 = max(receiver_action_values(game, q1))
            v2 = max(receiver_action_values(game, q2))
            assert max(receiver_action_values(game, mid)) <= (v1 + v2) / 2
