"""Compiler from d-regular 3CNF formulas to cheap talk gadget instances.

Construction overview (for a formula with n variables, m clauses, every
variable in exactly d clauses, 2 <= d <= 6):

* States: per clause j, six variable states (one per literal polarity of its
  three variables, labelled "x{i}@{j}" / "~x{i}@{j}") plus a clause state
  "c{j}" -- 7m states under the uniform prior.
* Pools (special posteriors, all uniform over their members): a pool over
  the d positive states of each variable and one over the d negative states;
  seven pools per clause, one for each truth-value triple of its variables
  that satisfies the clause, each pooling the clause state with the three
  matching variable states; a singleton pool per variable state (none for
  clause states).  The babbling-gap variant appends the prior itself.
* Receiver: tangent planes to f(y) = sum_i y_i^2 give one action per pool
  whose expected utility at posterior y equals the plane's value, making
  a_p the unique best pool action exactly at p.  Tilted copies of each plane
  (one per state, slope epsilon = the minimum squared distance between
  distinct pool points) dominate a_p everywhere else, so off-pool posteriors
  only admit penalty actions.
* Sender: facet actions pay -7 in every state; a variable pool's action
  pays 1 on its members, a clause or singleton pool's action pays 0 on its
  members, -7 elsewhere.  Optional normalization maps sender utilities
  through (u + 7)/8 into [0, 1].

From any non-contradictory partial assignment, construct_equilibrium pools
each assigned variable's unused polarity into its variable pool, pools every
clause state with the states matching the assignment (clause-literal
polarity for unassigned variables), makes singletons of the leftovers, and
lets the receiver play each pool's action deterministically.  The resulting
profile is an equilibrium with sender value k*d/(7m) for k assigned
variables ((k*d/(7m) + 7)/8 after normalization).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .errors import ReductionError, ValidationError
from .game import Game, Profile, ReceiverStrategy, SignalingPolicy
from .rationals import ONE, ZERO, Q, qsum, rational
from .sat import CnfFormula, PartialAssignment, contradictory_clauses, format_dimacs, regularity

VARIABLE = "Variable"
NEG_VARIABLE = "NegVariable"
CLAUSE = "Clause"
SINGLETON = "Singleton"
PRIOR = "Prior"

NORMALIZE_NONE = "none"
NORMALIZE_UNIT = "unitInterval"

PENALTY = Q(-7)

MIN_DEGREE, MAX_DEGREE = 2, 6


@dataclass(frozen=True)
class Pool:
    kind: str
    name: str
    members: tuple  # state labels; posterior is uniform over these

    def posterior(self, states: tuple, prior: Optional[tuple] = None) -> tuple:
        if self.kind == PRIOR:
            return tuple(prior)
        member_set = set(self.members)
        share = Q(1, len(self.members))
        return tuple(share if s in member_set else ZERO for s in states)


@dataclass(frozen=True)
class ReductionMetadata:
    formula: CnfFormula
    formula_digest: str
    d: int
    num_variables: int
    num_clauses: int
    states: tuple
    pools: tuple
    epsilon: Q
    normalization: str
    babbling_gap_alpha: Optional[Q]

    @property
    def state_index(self) -> Dict[str, int]:
        return {s: i for i, s in enumerate(self.states)}


def positive_state(i: int, j: int) -> str:
    return f"x{i}@{j}"


def negative_state(i: int, j: int) -> str:
    return f"~x{i}@{j}"


def clause_state(j: int) -> str:
    return f"c{j}"


def _check_formula(formula: CnfFormula) -> int:
    d = regularity(formula)
    if d is None:
        raise ReductionError("the formula must be d-regular")
    if not MIN_DEGREE <= d <= MAX_DEGREE:
        raise ReductionError(
            f"d={d} outside [{MIN_DEGREE}, {MAX_DEGREE}]: with d=1 a variable pool "
            "would coincide with a singleton pool, and d>6 breaks the construction"
        )
    return d


def build_pools(formula: CnfFormula):
    """States and pool catalog for a d-regular formula; returns (states, pools, d).

    State order: per clause, the three variables' positive/negative states in
    literal order, then the clause state.  Pool order: variable pools
    (positive then negative, by variable), clause pools (by clause, then by
    satisfying truth triple in binary order with False < True), singleton
    pools (by state order).
    """
    d = _check_formula(formula)
    n, m = formula.num_variables, formula.num_clauses

    states: List[str] = []
    for j, clause in enumerate(formula.clauses, start=1):
        for lit in clause:
            states.append(positive_state(abs(lit), j))
            states.append(negative_state(abs(lit), j))
        states.append(clause_state(j))

    by_var = formula.clauses_by_variable()
    pools: List[Pool] = []
    for i in range(1, n + 1):
        occurrences = [j + 1 for j in by_var[i]]
        pools.append(
            Pool(VARIABLE, f"V:x{i}", tuple(positive_state(i, j) for j in occurrences))
        )
        pools.append(
            Pool(
                NEG_VARIABLE,
                f"V:~x{i}",
                tuple(negative_state(i, j) for j in occurrences),
            )
        )
    for j, clause in enumerate(formula.clauses, start=1):
        falsifying = tuple(lit < 0 for lit in clause)
        for code in range(8):
            triple = (bool(code & 4), bool(code & 2), bool(code & 1))
            if triple == falsifying:
                continue
            members = [clause_state(j)]
            for lit, value in zip(clause, triple):
                i = abs(lit)
                members.append(positive_state(i, j) if value else negative_state(i, j))
            bits = "".join("T" if v else "F" for v in triple)
            pools.append(Pool(CLAUSE, f"C:{j}:{bits}", tuple(members)))
    for state in states:
        if not state.startswith("c"):
            pools.append(Pool(SINGLETON, f"S:{state}", (state,)))

    assert len(states) == 7 * m
    assert len(pools) == 2 * n + 7 * m + 6 * m
    return tuple(states), tuple(pools), d


def pool_action(pool_name: str) -> str:
    return f"a[{pool_name}]"

def facet_action(pool_name: str, state: str) -> str:
    return f"a[{pool_name}|{state}]"

BABBLING_GAP_ACTION = "a0"


def design_receiver_utilities(num_states: int, points):
    """Receiver utility columns for a catalog of distinct posterior points.

    Action a_p gets u_R(state_i, a_p) = 2*p_i - sum_j p_j^2, the tangent
    plane of f(y) = sum y_j^2 at p evaluated at the i-th vertex, so its
    expected utility at posterior y is the plane's value at y.  The tilted
    actions a_{p,w} add epsilon * (1[w = state] - p_w), with epsilon the
    minimum squared distance between distinct points (1 for a singleton
    catalog, where the minimum ranges over an empty set).

    Returns (epsilon, pool_columns, facet_columns) with facet_columns[p][w]
    the column of the w-tilted copy of point p.
    """
    pts = [tuple(rational(v) for v in p) for p in points]
    if not pts:
        raise ValidationError("at least one point is required")
    for p in pts:
        if len(p) != num_states:
            raise ValidationError("point dimension must match the state count")
        if any(v < 0 for v in p) or qsum(p) != 1:
            raise ValidationError("points must be distributions over the states")
    if len(set(pts)) != len(pts):
        raise ValidationError("points must be pairwise distinct")

    epsilon = None
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            dist = qsum((x - y) ** 2 for x, y in zip(pts[a], pts[b]))
            if epsilon is None or dist < epsilon:
                epsilon = dist
    if epsilon is None:
        epsilon = ONE

    pool_columns = []
    facet_columns = []
    for p in pts:
        norm = qsum(v * v for v in p)
        column = tuple(2 * p[i] - norm for i in range(num_states))
        pool_columns.append(column)
        tilts = []
        for w in range(num_states):
            tilts.append(
                tuple(
                    column[i] + epsilon * ((ONE if i == w else ZERO) - p[w])
                    for i in range(num_states)
                )
            )
        facet_columns.append(tuple(tilts))
    return epsilon, tuple(pool_columns), tuple(facet_columns)


def build_instance(
    formula: CnfFormula,
    normalize: bool = False,
    babbling_gap_alpha=None,
) -> Tuple[Game, ReductionMetadata]:
    """Compile a d-regular formula into a cheap talk instance plus metadata.

    With babbling_gap_alpha set, the prior joins the pool catalog and its
    pool action (labelled "a0") pays the sender alpha in every state; alpha
    is written verbatim on the emitted game's sender scale, normalization
    notwithstanding.
    """
    states, pools, d = build_pools(formula)
    n_states = len(states)
    prior = (Q(1, n_states),) * n_states

    alpha = None if babbling_gap_alpha is None else rational(babbling_gap_alpha)
    if alpha is not None:
        pools = pools + (Pool(PRIOR, "PRIOR", states),)

    points = [pool.posterior(states, prior) for pool in pools]
    epsilon, pool_columns, facet_columns = design_receiver_utilities(n_states, points)

    state_pos = {s: i for i, s in enumerate(states)}
    member_index = [
        {state_pos[member] for member in pool.members} for pool in pools
    ]

    actions: List[str] = []
    u_s_cols: List[tuple] = []
    u_r_cols: List[tuple] = []

    def sender_scale(value: Q) -> Q:
        return (value + 7) / 8 if normalize else value

    for p, pool in enumerate(pools):
        if pool.kind == PRIOR:
            actions.append(BABBLING_GAP_ACTION)
            u_s_cols.append((alpha,) * n_states)
        else:
            actions.append(pool_action(pool.name))
            if pool.kind in (VARIABLE, NEG_VARIABLE):
                inside = ONE
            else:
                inside = ZERO
            u_s_cols.append(
                tuple(
                    sender_scale(inside if i in member_index[p] else PENALTY)
                    for i in range(n_states)
                )
            )
        u_r_cols.append(pool_columns[p])
    penalty_col = (sender_scale(PENALTY),) * n_states
    for p, pool in enumerate(pools):
        for w in range(n_states):
            actions.append(facet_action(pool.name, states[w]))
            u_s_cols.append(penalty_col)
            u_r_cols.append(facet_columns[p][w])

    u_s = [[col[i] for col in u_s_cols] for i in range(n_states)]
    u_r = [[col[i] for col in u_r_cols] for i in range(n_states)]
    game = Game.build(states, actions, prior, u_s, u_r)

    meta = ReductionMetadata(
        formula=formula,
        formula_digest=hashlib.sha256(format_dimacs(formula).encode()).hexdigest(),
        d=d,
        num_variables=formula.num_variables,
        num_clauses=formula.num_clauses,
        states=states,
        pools=pools,
        epsilon=epsilon,
        normalization=NORMALIZE_UNIT if normalize else NORMALIZE_NONE,
        babbling_gap_alpha=alpha,
    )
    return game, meta


def construct_equilibrium(meta: ReductionMetadata, assignment: PartialAssignment) -> Profile:
    """Certificate equilibrium for a non-contradictory partial assignment.

    Deterministic pooling: a variable assigned True contributes its negated
    states' pool (the positive states go to clause pools), False the
    positive pool; each clause state is pooled with the assignment-consistent
    state of each of its variables, taking the clause's own literal polarity
    for unassigned variables; leftover variable states become singletons.
    The receiver plays each used pool's action deterministically.
    """
    formula = meta.formula
    bad = contradictory_clauses(formula, assignment)
    if bad:
        raise ValidationError(f"assignment contradicts clauses {bad}")
    values = assignment.as_dict()

    used_names = []
    for i in sorted(values):
        used_names.append(f"V:~x{i}" if values[i] else f"V:x{i}")
    for j, clause in enumerate(formula.clauses, start=1):
        bits = ""
        for lit in clause:
            i = abs(lit)
            value = values.get(i)
            if value is None:
                value = lit > 0  # the clause's own literal polarity
            bits += "T" if value else "F"
        used_names.append(f"C:{j}:{bits}")

    pool_by_name = {pool.name: pool for pool in meta.pools}
    for name in used_names:
        if name not in pool_by_name:
            raise AssertionError(f"constructed pool {name} missing from the catalog")

    covered = set()
    for name in used_names:
        members = pool_by_name[name].members
        overlap = covered.intersection(members)
        if overlap:
            raise AssertionError(f"state pooled twice: {sorted(overlap)}")
        covered.update(members)
    for state in meta.states:
        if state not in covered and not state.startswith("c"):
            used_names.append(f"S:{state}")
            covered.add(state)
    if len(covered) != len(meta.states):
        raise AssertionError("clause state left unpooled")

    # order signals by the pool catalog for reproducible artifacts
    catalog_pos = {pool.name: p for p, pool in enumerate(meta.pools)}
    used_names.sort(key=lambda name: catalog_pos[name])

    signal_of_state = {}
    for name in used_names:
        for state in pool_by_name[name].members:
            signal_of_state[state] = name

    signal_pos = {name: k for k, name in enumerate(used_names)}
    rows = []
    for state in meta.states:
        row = [ZERO] * len(used_names)
        row[signal_pos[signal_of_state[state]]] = ONE
        rows.append(tuple(row))

    num_actions = (len(meta.states) + 1) * len(meta.pools)
    action_index = {}
    for p, pool in enumerate(meta.pools):
        label = BABBLING_GAP_ACTION if pool.kind == PRIOR else pool_action(pool.name)
        action_index[pool.name] = p
    response_rows = []
    for name in used_names:
        row = [ZERO] * num_actions
        row[action_index[name]] = ONE
        response_rows.append(tuple(row))

    policy = SignalingPolicy(tuple(used_names), tuple(rows))
    return Profile(policy, ReceiverStrategy(tuple(response_rows)))


def certificate_sender_value(meta: ReductionMetadata, k: int) -> Q:
    """Expected sender value of a size-k certificate equilibrium."""
    raw = Q(k * meta.d, 7 * meta.num_clauses)
    if meta.normalization == NORMALIZE_UNIT:
        return (raw + 7) / 8
    return raw


def attractive_variable_pools(game: Game, meta: ReductionMetadata, profile: Profile) -> tuple:
    """Diagnostic: variable pools whose posterior is induced and whose pool
    action is played with probability strictly above 7/8."""
    from .game import bayes_posteriors

    posteriors = bayes_posteriors(game, profile.policy)
    prior = game.prior
    threshold = Q(7, 8)
    out = []
    for p, pool in enumerate(meta.pools):
        if pool.kind not in (VARIABLE, NEG_VARIABLE):
            continue
        target = pool.posterior(meta.states, prior)
        label = pool_action(pool.name)
        a_idx = game.action_index(label)
        for k, signal in enumerate(profile.policy.signals):
            post = posteriors[signal]
            if post.distribution == target and profile.response.rows[k][a_idx] > threshold:
                out.append(pool.name)
                break
    return tuple(out)


def induced_assignment(meta: ReductionMetadata, attractive: tuple) -> PartialAssignment:
    """Partial assignment read off the attractive variable pools."""
    values = {}
    for name in attractive:
        if name.startswith("V:~x"):
            values[int(name[4:])] = True
        elif name.startswith("V:x"):
            values[int(name[3:])] = False
    return PartialAssignment.build(values)
