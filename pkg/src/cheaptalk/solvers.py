"""Optimal-equilibrium solvers and the persuasion (commitment) baseline.

* solve_binary_action: two receiver actions; one pass over the states decides
  between the sender-greedy recommendation policy (when both obedience sums
  allow the receiver to comply) and a sender-favorable babbling equilibrium.
* solve_enumeration: exhaustive support testing over the induced two-player
  form for small state counts.  A support pattern assigns each state a
  nonempty set of signals (the sender's per-state mixing support) and each
  signal a nonempty set of actions (the receiver's response support).  For a
  fixed pattern the two equilibrium conditions decouple: the policy side is
  a feasibility/optimization LP (receiver ties and dominance at every
  signal's posterior, Bayes-consistent rows), and the response side is a
  feasibility/optimization LP (per-state sender value ties on the state's
  signal set, dominance over the rest).  Any pair of feasible points forms
  an equilibrium, so the objective decomposes: the sender's value lives on
  the response side and the receiver's on the policy side.
* solve_persuasion_lp: the commitment benchmark via the standard obedience
  LP; its recommendation outcome is not an equilibrium profile.

Enumeration determinism: signal counts ascending, response-support profiles
in lexicographic order (no two signals share an identical singleton support:
such signals are outcome-equivalent to one merged signal), per-state signal
sets in ascending bitmask order, states in game order.  The reported optimum
is the first pattern attaining the best value in this order; exact
branch-and-bound discards a subtree only when it provably cannot strictly
improve, which never changes the first-found optimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import List, Optional

from .errors import GuardExceeded, ValidationError
from .game import (
    Game,
    Profile,
    ReceiverStrategy,
    SENDER_FAVOR,
    SignalingPolicy,
    babbling_equilibrium,
    profile_values,
)
from .linalg import EQ, GE, LE, OPTIMAL, simplex
from .rationals import ONE, ZERO, Q, qsum

GREEDY = "greedy"
BABBLING = "babbling"
ENUMERATION = "enumeration"
PERSUASION_LP = "persuasionLP"

SENDER, RECEIVER, WELFARE = "sender", "receiver", "welfare"


@dataclass(frozen=True)
class SolveResult:
    value: Q
    profile: Profile
    method: str
    diagnostics: dict


@dataclass(frozen=True)
class StatePartition:
    """Binary-action state split by strict sender preference, with the
    sender-indifferent states subdivided by the receiver's preference."""

    omega1: tuple  # sender strictly prefers action 1
    omega2: tuple  # sender strictly prefers action 2
    omega12_1: tuple  # sender indifferent, receiver strictly prefers action 1
    omega12_2: tuple  # sender indifferent, receiver weakly prefers action 2
    doubly_indifferent: tuple  # both players indifferent (subset of omega12_2)


def partition_states(game: Game) -> StatePartition:
    if game.m != 2:
        raise ValidationError("state partition is defined for exactly 2 actions")
    omega1, omega2, omega12_1, omega12_2, doubly = [], [], [], [], []
    for i, state in enumerate(game.states):
        ds = game.sender_utility[i][0] - game.sender_utility[i][1]
        dr = game.receiver_utility[i][0] - game.receiver_utility[i][1]
        if ds > 0:
            omega1.append(state)
        elif ds < 0:
            omega2.append(state)
        elif dr > 0:
            omega12_1.append(state)
        else:
            omega12_2.append(state)
            if dr == 0:
                doubly.append(state)
    return StatePartition(
        tuple(omega1), tuple(omega2), tuple(omega12_1), tuple(omega12_2), tuple(doubly)
    )


def solve_binary_action(game: Game) -> SolveResult:
    """Sender-optimal equilibrium for a two-action receiver, in one pass.

    After normalizing the receiver's second-action utility to zero per
    state, the sender-greedy recommendation policy is an equilibrium iff the
    recommended-1 states carry nonnegative normalized receiver mass and the
    recommended-2 states nonpositive; otherwise no equilibrium beats
    babbling with sender-favorable tie-breaking.
    """
    if game.m != 2:
        raise ValidationError("solve_binary_action requires exactly 2 actions")
    part = partition_states(game)
    recommend1 = set(part.omega1) | set(part.omega12_1)
    sum1 = ZERO
    sum2 = ZERO
    for i, state in enumerate(game.states):
        normalized = game.receiver_utility[i][0] - game.receiver_utility[i][1]
        if state in recommend1:
            sum1 += normalized * game.prior[i]
        else:
            sum2 += normalized * game.prior[i]

    if sum1 >= 0 and sum2 <= 0:
        signals = []
        if recommend1:
            signals.append(game.actions[0])
        if len(recommend1) < game.n:
            signals.append(game.actions[1])
        rows = []
        for state in game.states:
            target = game.actions[0] if state in recommend1 else game.actions[1]
            rows.append(
                tuple(ONE if s == target else ZERO for s in signals)
            )
        responses = []
        for s in signals:
            a = game.actions.index(s)
            responses.append(tuple(ONE if j == a else ZERO for j in range(2)))
        profile = Profile(
            SignalingPolicy(tuple(signals), tuple(rows)),
            ReceiverStrategy(tuple(responses)),
        )
        value = qsum(
            game.prior[i]
            * game.sender_utility[i][0 if game.states[i] in recommend1 else 1]
            for i in range(game.n)
        )
        method = GREEDY
    else:
        profile = babbling_equilibrium(game, SENDER_FAVOR)
        value = profile_values(game, profile).sender
        method = BABBLING
    return SolveResult(value, profile, method, {"supports_examined": 0, "lps_solved": 0})


def solve_persuasion_lp(game: Game) -> SolveResult:
    """Commitment benchmark: the obedience LP over direct recommendations.

    Maximizes the sender's expected utility over joint recommendation
    policies x(state, action) subject to the receiver preferring each
    recommended action over every alternative.  Always at least the
    sender-optimal cheap talk value; the returned recommendation profile is
    the commitment outcome, not an equilibrium.
    """
    n, m = game.n, game.m
    nvars = n * m

    def var(i, a):
        return i * m + a

    rows, rels, rhs = [], [], []
    for i in range(n):
        row = [ZERO] * nvars
        for a in range(m):
            row[var(i, a)] = ONE
        rows.append(row)
        rels.append(EQ)
        rhs.append(ONE)
    for a in range(m):
        for b in range(m):
            if a == b:
                continue
            row = [ZERO] * nvars
            for i in range(n):
                row[var(i, a)] = game.prior[i] * (
                    game.receiver_utility[i][a] - game.receiver_utility[i][b]
                )
            rows.append(row)
            rels.append(GE)
            rhs.append(ZERO)
    objective = [ZERO] * nvars
    for i in range(n):
        for a in range(m):
            objective[var(i, a)] = game.prior[i] * game.sender_utility[i][a]

    status, value, x = simplex(objective, rows, rels, rhs)
    if status != OPTIMAL:  # the obedience polytope always contains babbling
        raise AssertionError(f"persuasion LP ended with status {status}")

    used = [
        a
        for a in range(m)
        if qsum(game.prior[i] * x[var(i, a)] for i in range(n)) > 0
    ]
    signals = tuple(game.actions[a] for a in used)
    policy_rows = tuple(
        tuple(x[var(i, a)] for a in used) for i in range(n)
    )
    responses = tuple(
        tuple(ONE if b == a else ZERO for b in range(m)) for a in used
    )
    profile = Profile(
        SignalingPolicy(signals, policy_rows), ReceiverStrategy(responses)
    )
    return SolveResult(
        value, profile, PERSUASION_LP, {"supports_examined": 0, "lps_solved": 1}
    )


# ---------------------------------------------------------------------------
# Support-testing enumeration
# ---------------------------------------------------------------------------


class _Enumerator:
    def __init__(self, game: Game, objective: str, budget: int):
        self.game = game
        self.objective = objective
        self.budget = budget
        self.n = game.n
        self.m = game.m
        self.mu = game.prior
        self.u_s = game.sender_utility
        self.u_r = game.receiver_utility
        self.lps_solved = 0
        self.leaves = 0
        self.best_value: Optional[Q] = None
        self.best_leaf = None

        # Response supports usable at some posterior: for each nonempty
        # action subset, is there a belief making all of it simultaneously
        # optimal?  Pruned subsets can never appear in an equilibrium.
        self.subsets: List[tuple] = []
        for mask in range(1, 1 << self.m):
            subset = tuple(a for a in range(self.m) if mask & (1 << a))
            if self._co_best_feasible(subset):
                self.subsets.append(subset)

    # -- small LP helpers ---------------------------------------------------

    def _solve(self, objective, rows, rels, rhs):
        self.lps_solved += 1
        return simplex(objective, rows, rels, rhs)

    def _co_best_feasible(self, subset) -> bool:
        n, m = self.n, self.m
        rows = [[ONE] * n]
        rels = [EQ]
        rhs = [ONE]
        rep = subset[0]
        inside = set(subset)
        for a in range(m):
            if a == rep:
                continue
            row = [self.u_r[i][a] - self.u_r[i][rep] for i in range(n)]
            rows.append(row)
            rels.append(EQ if a in inside else LE)
            rhs.append(ZERO)
        status, _, _ = self._solve([ZERO] * n, rows, rels, rhs)
        return status == OPTIMAL

    # -- response-side LP: sender values tie on T, dominate elsewhere -------

    def _response_lp(self, profile_subsets, t_sets, depth, maximize):
        """Feasibility/max of the sender part over response mixtures.

        States beyond `depth` are unconstrained; their best-case sender
        contribution (the largest utility any active support allows) is
        added to the returned bound, making it exact at leaves and an upper
        bound at interior nodes.
        """
        k_count = len(profile_subsets)
        offsets = []
        nvars = 0
        for subset in profile_subsets:
            offsets.append(nvars)
            nvars += len(subset) - 1
        rows, rels, rhs = [], [], []
        for k, subset in enumerate(profile_subsets):
            if len(subset) > 1:
                row = [ZERO] * nvars
                for t in range(len(subset) - 1):
                    row[offsets[k] + t] = ONE
                rows.append(row)
                rels.append(LE)
                rhs.append(ONE)

        def value_expr(k, i):
            # affine sender value of signal k's response in state i
            subset = profile_subsets[k]
            base = self.u_s[i][subset[0]]
            coeffs = {}
            for t, a in enumerate(subset[1:]):
                coeffs[offsets[k] + t] = self.u_s[i][a] - base
            return base, coeffs

        objective = [ZERO] * nvars
        constant = ZERO
        for i in range(depth):
            t_set = t_sets[i]
            first = t_set[0]
            base_f, coeffs_f = value_expr(first, i)
            for k in range(k_count):
                if k == first:
                    continue
                base_k, coeffs_k = value_expr(k, i)
                row = [ZERO] * nvars
                for idx, v in coeffs_f.items():
                    row[idx] += v
                for idx, v in coeffs_k.items():
                    row[idx] -= v
                rows.append(row)
                rels.append(EQ if k in t_set else GE)
                rhs.append(base_k - base_f)
            if maximize:
                constant += self.mu[i] * base_f
                for idx, v in coeffs_f.items():
                    objective[idx] += self.mu[i] * v
        if maximize:
            for i in range(depth, self.n):
                constant += self.mu[i] * max(
                    max(self.u_s[i][a] for a in subset)
                    for subset in profile_subsets
                )
        status, value, x = self._solve(objective, rows, rels, rhs)
        if status != OPTIMAL:
            return None, None
        return (value + constant if maximize else ZERO), x

    # -- policy-side LP: receiver ties/dominance at every signal ------------

    def _policy_lp(self, profile_subsets, t_sets, depth, maximize):
        """Feasibility/max of the receiver part over signaling policies.

        States beyond `depth` may mix freely over all signals.  Receiver
        optimality at a signal is enforced in marginal form (scaled by the
        signal's probability), which is linear and vacuous for unsent
        signals.  The receiver part of the objective prices each signal at
        its support's tied utility, so it is linear as well.
        """
        k_count = len(profile_subsets)
        full = tuple(range(k_count))
        supports = [t_sets[i] if i < depth else full for i in range(self.n)]
        offsets = []
        nvars = 0
        for i in range(self.n):
            offsets.append(nvars)
            nvars += len(supports[i]) - 1

        rows, rels, rhs = [], [], []
        for i in range(self.n):
            if len(supports[i]) > 1:
                row = [ZERO] * nvars
                for t in range(len(supports[i]) - 1):
                    row[offsets[i] + t] = ONE
                rows.append(row)
                rels.append(LE)
                rhs.append(ONE)

        def prob_expr(k, i):
            # (constant, {var: coeff}) for P(signal k | state i)
            sup = supports[i]
            if k not in sup:
                return ZERO, {}
            if k == sup[0]:
                coeffs = {offsets[i] + t: -ONE for t in range(len(sup) - 1)}
                return ONE, coeffs
            return ZERO, {offsets[i] + sup.index(k) - 1: ONE}

        objective = [ZERO] * nvars
        constant = ZERO
        for k, subset in enumerate(profile_subsets):
            rep = subset[0]
            for a in range(self.m):
                if a == rep:
                    continue
                row = [ZERO] * nvars
                const = ZERO
                for i in range(self.n):
                    weight = self.mu[i] * (self.u_r[i][a] - self.u_r[i][rep])
                    if weight == 0:
                        continue
                    base, coeffs = prob_expr(k, i)
                    const += weight * base
                    for idx, v in coeffs.items():
                        row[idx] += weight * v
                rows.append(row)
                rels.append(EQ if a in subset else LE)
                rhs.append(-const)
            if maximize:
                for i in range(self.n):
                    weight = self.mu[i] * self.u_r[i][rep]
                    if weight == 0:
                        continue
                    base, coeffs = prob_expr(k, i)
                    constant += weight * base
                    for idx, v in coeffs.items():
                        objective[idx] += weight * v
        status, value, x = self._solve(objective, rows, rels, rhs)
        if status != OPTIMAL:
            return None, None
        return (value + constant if maximize else ZERO), x

    # -- the search ----------------------------------------------------------

    def run(self):
        for k_count in range(1, self.budget + 1):
            for profile_subsets in combinations_with_replacement(
                self.subsets, k_count
            ):
                if self._duplicate_singletons(profile_subsets):
                    continue
                self._search_pattern(profile_subsets)
        return self.best_value, self.best_leaf

    @staticmethod
    def _duplicate_singletons(profile_subsets) -> bool:
        seen = set()
        for subset in profile_subsets:
            if len(subset) == 1:
                if subset in seen:
                    return True
                seen.add(subset)
        return False

    def _search_pattern(self, profile_subsets):
        k_count = len(profile_subsets)
        need_sender = self.objective in (SENDER, WELFARE)
        need_receiver = self.objective in (RECEIVER, WELFARE)
        # value ranges per (state, signal) for the cheap tie-window filter
        lo = [
            [min(self.u_s[i][a] for a in subset) for subset in profile_subsets]
            for i in range(self.n)
        ]
        hi = [
            [max(self.u_s[i][a] for a in subset) for subset in profile_subsets]
            for i in range(self.n)
        ]
        # per-state receiver prices: a signal's mass from a state is worth the
        # tied utility of its support representative
        r_price = [
            [self.u_r[i][subset[0]] for subset in profile_subsets]
            for i in range(self.n)
        ]
        # optimistic per-state contributions of the still-unassigned states
        s_suffix = [ZERO] * (self.n + 1)
        r_suffix = [ZERO] * (self.n + 1)
        for i in range(self.n - 1, -1, -1):
            s_suffix[i] = s_suffix[i + 1] + self.mu[i] * max(hi[i])
            r_suffix[i] = r_suffix[i + 1] + self.mu[i] * max(r_price[i])
        if self.best_value is not None:
            cap = ZERO
            if need_sender:
                cap += s_suffix[0]
            if need_receiver:
                cap += r_suffix[0]
            if cap <= self.best_value:
                return

        # groups of identical supports for symmetry canonicalization
        group_prev = [None] * k_count
        for k in range(k_count):
            for k2 in range(k - 1, -1, -1):
                if profile_subsets[k2] == profile_subsets[k]:
                    group_prev[k] = k2
                    break
        t_sets: List[tuple] = [()] * self.n
        masks = list(range(1, 1 << k_count))
        members = {
            mask: tuple(k for k in range(k_count) if mask & (1 << k))
            for mask in masks
        }

        full_mask = (1 << k_count) - 1

        def descend(depth, appeared, s_prefix, r_prefix):
            last = depth == self.n - 1
            for mask in masks:
                t_set = members[mask]
                # symmetry: a signal may first appear only after the previous
                # identical-support signal has appeared
                ok = True
                now = appeared | mask
                for k in t_set:
                    prev = group_prev[k]
                    if prev is not None and not (now & (1 << prev)):
                        ok = False
                        break
                if not ok:
                    continue
                window_lo = max(lo[depth][k] for k in t_set)
                window_hi = min(hi[depth][k] for k in t_set)
                if window_lo > window_hi:
                    continue
                s_next = s_prefix + self.mu[depth] * window_hi
                r_next = r_prefix + self.mu[depth] * max(
                    r_price[depth][k] for k in t_set
                )
                if self.best_value is not None:
                    bound = ZERO
                    if need_sender:
                        bound += s_next + s_suffix[depth + 1]
                    if need_receiver:
                        bound += r_next + r_suffix[depth + 1]
                    if bound <= self.best_value:
                        continue
                t_sets[depth] = t_set
                if last:
                    if now == full_mask:
                        self._evaluate_leaf(profile_subsets, t_sets)
                elif self._node_viable(profile_subsets, t_sets, depth + 1):
                    descend(depth + 1, now, s_next, r_next)

        descend(0, 0, ZERO, ZERO)

    def _node_viable(self, profile_subsets, t_sets, depth) -> bool:
        need_sender = self.objective in (SENDER, WELFARE)
        need_receiver = self.objective in (RECEIVER, WELFARE)
        s_bound, _ = self._response_lp(profile_subsets, t_sets, depth, need_sender)
        if s_bound is None:
            return False
        p_bound, _ = self._policy_lp(profile_subsets, t_sets, depth, need_receiver)
        if p_bound is None:
            return False
        if self.best_value is not None:
            bound = (s_bound if need_sender else ZERO) + (
                p_bound if need_receiver else ZERO
            )
            if bound <= self.best_value:
                return False
        return True

    def _evaluate_leaf(self, profile_subsets, t_sets):
        self.leaves += 1
        need_sender = self.objective in (SENDER, WELFARE)
        need_receiver = self.objective in (RECEIVER, WELFARE)
        s_value, s_point = self._response_lp(
            profile_subsets, t_sets, self.n, need_sender
        )
        if s_value is None:
            return
        if (
            self.objective == SENDER
            and self.best_value is not None
            and s_value <= self.best_value
        ):
            return  # cannot strictly improve; skip the policy-side solve
        p_value, p_point = self._policy_lp(
            profile_subsets, t_sets, self.n, need_receiver
        )
        if p_value is None:
            return
        value = (s_value if need_sender else ZERO) + (
            p_value if need_receiver else ZERO
        )
        if self.best_value is None or value > self.best_value:
            self.best_value = value
            self.best_leaf = (
                tuple(profile_subsets),
                tuple(t_sets),
                tuple(s_point),
                tuple(p_point),
            )

    def build_profile(self) -> Profile:
        profile_subsets, t_sets, s_point, p_point = self.best_leaf
        k_count = len(profile_subsets)

        s_rows = []
        offset = 0
        for subset in profile_subsets:
            tail = s_point[offset : offset + len(subset) - 1]
            offset += len(subset) - 1
            row = [ZERO] * self.m
            row[subset[0]] = ONE - qsum(tail)
            for t, a in enumerate(subset[1:]):
                row[a] = tail[t]
            s_rows.append(tuple(row))

        pi_rows = []
        offset = 0
        for i in range(self.n):
            sup = t_sets[i]
            tail = p_point[offset : offset + len(sup) - 1]
            offset += len(sup) - 1
            row = [ZERO] * k_count
            row[sup[0]] = ONE - qsum(tail)
            for t, k in enumerate(sup[1:]):
                row[k] = tail[t]
            pi_rows.append(row)

        marginals = [
            qsum(self.mu[i] * pi_rows[i][k] for i in range(self.n))
            for k in range(k_count)
        ]
        keep = [k for k in range(k_count) if marginals[k] > 0]
        signals = tuple(f"s{k + 1}" for k in keep)
        policy = SignalingPolicy(
            signals,
            tuple(tuple(pi_rows[i][k] for k in keep) for i in range(self.n)),
        )
        response = ReceiverStrategy(tuple(s_rows[k] for k in keep))
        return Profile(policy, response)


def solve_enumeration(
    game: Game,
    objective: str = SENDER,
    signal_budget: Optional[int] = None,
    guard: int = 4,
    override_guard: bool = False,
) -> SolveResult:
    """Best equilibrium value among supports of at most `signal_budget`
    signals.  The default budget (one signal per state) suffices for the
    exact sender optimum; receiver/welfare optima are reported within the
    same budget.

    Intended for small state counts; raises GuardExceeded beyond `guard`
    states unless override_guard is set.
    """
    if objective not in (SENDER, RECEIVER, WELFARE):
        raise ValidationError(f"unknown objective {objective!r}")
    if game.n > guard and not override_guard:
        raise GuardExceeded(
            f"{game.n} states exceeds the enumeration guard {guard}; "
            "pass override_guard=True to force"
        )
    budget = game.n if signal_budget is None else signal_budget
    if budget < 1:
        raise ValidationError("signal budget must be positive")

    worker = _Enumerator(game, objective, budget)
    value, leaf = worker.run()
    if leaf is None:  # babbling always exists, so this cannot happen
        raise AssertionError("enumeration found no equilibrium")
    profile = worker.build_profile()
    return SolveResult(
        value,
        profile,
        ENUMERATION,
        {"supports_examined": worker.leaves, "lps_solved": worker.lps_solved},
    )
