"""3CNF infrastructure: DIMACS parsing, regularity, partial assignments,
contradiction detection, and exhaustive variable-maximization.

A partial assignment contradicts a clause when all three of the clause's
variables are assigned and the clause evaluates to False.  The
variable-maximization problem asks for the largest non-contradictory partial
assignment; the exhaustive search explores variables in ascending order with
the per-variable choice order unassigned < False < True, so the reported
witness is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .errors import DimacsError, GuardExceeded, ValidationError
from .rationals import Q

# Documented promise-gap constants for 4-regular instances (no hardness
# machinery is implemented; these only parameterize the threshold helper).
REGULAR4_CLAUSE_GRANULARITY = 1016
REGULAR4_PROMISE_HIGH = Q(30476, 30480)  # 3047.6/3048
REGULAR4_PROMISE_LOW = Q(30471, 30480)  # 3047.1/3048


def regular4_promise_thresholds(num_variables: int) -> Tuple[Q, Q]:
    """(high, low) assigned-variable thresholds of the 4-regular promise gap."""
    return (
        REGULAR4_PROMISE_HIGH * num_variables,
        REGULAR4_PROMISE_LOW * num_variables,
    )


@dataclass(frozen=True)
class CnfFormula:
    num_variables: int
    clauses: tuple  # tuples of 3 nonzero literals, no repeated variable

    @staticmethod
    def build(num_variables: int, clauses) -> "CnfFormula":
        if num_variables < 1:
            raise ValidationError("formula needs at least one variable")
        out = []
        for idx, clause in enumerate(clauses):
            clause = tuple(int(lit) for lit in clause)
            if len(clause) != 3:
                raise ValidationError(f"clause {idx} has width {len(clause)}, not 3")
            variables = [abs(lit) for lit in clause]
            if any(lit == 0 for lit in clause):
                raise ValidationError(f"clause {idx} contains literal 0")
            if any(v > num_variables for v in variables):
                raise ValidationError(f"clause {idx} references an unknown variable")
            if len(set(variables)) != 3:
                raise ValidationError(f"clause {idx} repeats a variable")
            out.append(clause)
        return CnfFormula(num_variables, tuple(out))

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def clauses_by_variable(self) -> Dict[int, List[int]]:
        by_var: Dict[int, List[int]] = {v: [] for v in range(1, self.num_variables + 1)}
        for j, clause in enumerate(self.clauses):
            for lit in clause:
                by_var[abs(lit)].append(j)
        return by_var


@dataclass(frozen=True)
class PartialAssignment:
    assigned: tuple  # sorted (variable, bool) pairs

    @staticmethod
    def build(mapping) -> "PartialAssignment":
        items = []
        for var, val in dict(mapping).items():
            var = int(var)
            if var < 1:
                raise ValidationError("variable indices are positive")
            if not isinstance(val, bool):
                raise ValidationError("assignment values must be booleans")
            items.append((var, val))
        return PartialAssignment(tuple(sorted(items)))

    def as_dict(self) -> Dict[int, bool]:
        return dict(self.assigned)

    @property
    def size(self) -> int:
        return len(self.assigned)


@dataclass(frozen=True)
class MaxVarResult:
    k: int
    witness: PartialAssignment


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF, enforcing 3-literal clauses with distinct variables.

    Raises DimacsError with a 1-based line number on malformed input.
    """
    num_vars = None
    num_clauses = None
    clauses = []
    pending: List[int] = []
    pending_line = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if num_vars is not None:
                raise DimacsError("duplicate problem line", lineno)
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"malformed problem line {line!r}", lineno)
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"malformed problem line {line!r}", lineno) from None
            if num_vars < 1 or num_clauses < 0:
                raise DimacsError("nonpositive sizes in problem line", lineno)
            continue
        if num_vars is None:
            raise DimacsError("clause before problem line", lineno)
        try:
            tokens = [int(tok) for tok in line.split()]
        except ValueError:
            raise DimacsError(f"non-integer token in {line!r}", lineno) from None
        for tok in tokens:
            if tok == 0:
                _check_clause(pending, num_vars, pending_line or lineno)
                clauses.append(tuple(pending))
                pending = []
                pending_line = None
            else:
                if not pending:
                    pending_line = lineno
                pending.append(tok)
    if pending:
        raise DimacsError("unterminated clause (missing 0)", pending_line)
    if num_vars is None:
        raise DimacsError("missing problem line", 1)
    if num_clauses != len(clauses):
        raise DimacsError(
            f"problem line declares {num_clauses} clauses, found {len(clauses)}", 1
        )
    return CnfFormula(num_vars, tuple(clauses))


def _check_clause(literals, num_vars, lineno):
    if len(literals) != 3:
        raise DimacsError(f"clause width {len(literals)} != 3", lineno)
    variables = [abs(lit) for lit in literals]
    if any(v > num_vars for v in variables):
        raise DimacsError("literal out of declared variable range", lineno)
    if len(set(variables)) != 3:
        raise DimacsError("repeated variable in clause", lineno)


def format_dimacs(formula: CnfFormula) -> str:
    lines = [f"p cnf {formula.num_variables} {formula.num_clauses}"]
    for clause in formula.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines) + "\n"


def regularity(formula: CnfFormula) -> Optional[int]:
    """d if every variable occurs in exactly d clauses, else None."""
    counts = [0] * (formula.num_variables + 1)
    for clause in formula.clauses:
        for lit in clause:
            counts[abs(lit)] += 1
    d = counts[1]
    if any(c != d for c in counts[1:]):
        return None
    assert 3 * formula.num_clauses == d * formula.num_variables
    return d


def contradictory_clauses(formula: CnfFormula, assignment: PartialAssignment) -> list:
    """Indices of clauses fully assigned and evaluating to False."""
    values = _domain_checked(formula, assignment)
    out = []
    for j, clause in enumerate(formula.clauses):
        verdict = _clause_state(clause, values)
        if verdict == "contradictory":
            out.append(j)
    return out


def _domain_checked(formula: CnfFormula, assignment: PartialAssignment):
    values = assignment.as_dict()
    for var in values:
        if var > formula.num_variables:
            raise ValidationError(f"assignment uses unknown variable {var}")
    return values


def _clause_state(clause, values) -> str:
    assigned = 0
    satisfied = False
    for lit in clause:
        val = values.get(abs(lit))
        if val is None:
            continue
        assigned += 1
        if val == (lit > 0):
            satisfied = True
    if satisfied:
        return "satisfied"
    return "contradictory" if assigned == 3 else "open"


def max_var_3sat_bruteforce(
    formula: CnfFormula, guard: int = 20, override_guard: bool = False
) -> MaxVarResult:
    """Largest non-contradictory partial assignment by exhaustive search.

    Deterministic order: variables ascending, per-variable choices
    unassigned < False < True; the witness is the first assignment of
    maximal size encountered.  Branches that cannot beat the incumbent are
    pruned, which never changes the first-found witness.
    """
    n = formula.num_variables
    if n > guard and not override_guard:
        raise GuardExceeded(
            f"{n} variables exceeds the guard {guard}; pass override_guard=True"
        )
    by_var = formula.clauses_by_variable()
    clauses = formula.clauses
    assigned_count = [0] * len(clauses)
    satisfied_count = [0] * len(clauses)
    values: Dict[int, bool] = {}
    best_k = -1
    best_witness: Dict[int, bool] = {}

    def assign(var, val) -> bool:
        values[var] = val
        ok = True
        for j in by_var[var]:
            assigned_count[j] += 1
            for lit in clauses[j]:
                if abs(lit) == var and val == (lit > 0):
                    satisfied_count[j] += 1
                    break
            if assigned_count[j] == 3 and satisfied_count[j] == 0:
                ok = False
        return ok

    def unassign(var, val):
        del values[var]
        for j in by_var[var]:
            assigned_count[j] -= 1
            for lit in clauses[j]:
                if abs(lit) == var and val == (lit > 0):
                    satisfied_count[j] -= 1
                    break

    def walk(var, count):
        nonlocal best_k, best_witness
        if var > n:
            if count > best_k:
                best_k = count
                best_witness = dict(values)
            return
        if count + (n - var + 1) <= best_k:
            return
        walk(var + 1, count)  # leave unassigned
        for val in (False, True):
            ok = assign(var, val)
            if ok:
                walk(var + 1, count + 1)
            unassign(var, val)

    walk(1, 0)
    return MaxVarResult(best_k, PartialAssignment.build(best_witness))


def full_to_partial(formula: CnfFormula, full: PartialAssignment) -> PartialAssignment:
    """Repair a full assignment into a non-contradictory partial one.

    Scans clauses in index order; whenever a clause is contradictory under
    the current values, its lowest-indexed still-assigned variable is
    unassigned.  The result is non-contradictory and keeps at least
    n - (#clauses unsatisfied by the input) variables.
    """
    values = _domain_checked(formula, full)
    if len(values) != formula.num_variables:
        raise ValidationError("full_to_partial requires a full assignment")
    for clause in formula.clauses:
        if _clause_state(clause, values) == "contradictory":
            victim = min(
                abs(lit) for lit in clause if abs(lit) in values
            )
            del values[victim]
    return PartialAssignment.build(values)
