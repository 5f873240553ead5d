"""Exact rational linear algebra: linear systems, affine dependencies, LP.

All arithmetic is exact.  Determinism contract:

* Gaussian elimination always takes the first nonzero pivot by row order.
* The simplex uses Bland's anti-cycling rule: the entering variable is the
  lowest-index column with a negative reduced cost, and the leaving row is
  chosen by the minimum ratio test with ties broken toward the lowest basic
  variable index.  Results are therefore reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import DimensionMismatch, ValidationError
from .rationals import ONE, ZERO, Q, rational

LE, EQ, GE = "<=", "=", ">="

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


# ---------------------------------------------------------------------------
# Linear systems
# ---------------------------------------------------------------------------


class NoSolution:
    """Marker result: the system A x = b is inconsistent."""

    def __repr__(self):
        return "NoSolution()"


@dataclass(frozen=True)
class UnderdeterminedSolution:
    """One particular solution plus a basis of the homogeneous null space."""

    particular: tuple
    null_basis: tuple  # tuple of vectors; empty never occurs here

    def __repr__(self):
        return (
            f"UnderdeterminedSolution(particular={self.particular}, "
            f"null_dim={len(self.null_basis)})"
        )


def _rref(matrix):
    """In-place reduced row echelon form; returns pivot column list.

    Pivot selection: scan columns left to right, take the first row (in
    order) with a nonzero entry.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot_row = None
        for i in range(r, rows):
            if matrix[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        matrix[r], matrix[pivot_row] = matrix[pivot_row], matrix[r]
        inv = ONE / matrix[r][c]
        if inv != 1:
            matrix[r] = [v * inv for v in matrix[r]]
        row_r = matrix[r]
        for i in range(rows):
            if i != r and matrix[i][c] != 0:
                f = matrix[i][c]
                row_i = matrix[i]
                matrix[i] = [row_i[j] - f * row_r[j] for j in range(cols)]
        pivots.append(c)
        r += 1
    return pivots


def solve_linear_system(matrix, rhs):
    """Solve A x = b exactly.

    Returns a tuple of rationals for a unique solution, NoSolution for an
    inconsistent system, or UnderdeterminedSolution (free variables set to
    zero in the particular solution) when the solution set is a positive-
    dimensional affine space.
    """
    a = [[rational(v) for v in row] for row in matrix]
    b = [rational(v) for v in rhs]
    nrows = len(a)
    if nrows != len(b):
        raise DimensionMismatch(f"{nrows} rows but {len(b)} right-hand sides")
    ncols = len(a[0]) if nrows else 0
    for row in a:
        if len(row) != ncols:
            raise DimensionMismatch("ragged matrix rows")

    aug = [a[i] + [b[i]] for i in range(nrows)]
    pivots = _rref(aug)
    if ncols in pivots:  # pivot in the rhs column: 0 = 1 row
        return NoSolution()

    pivot_of_col = {c: r for r, c in enumerate(pivots)}
    particular = [ZERO] * ncols
    for c, r in pivot_of_col.items():
        particular[c] = aug[r][ncols]
    if len(pivots) == ncols:
        return tuple(particular)

    free_cols = [c for c in range(ncols) if c not in pivot_of_col]
    basis = []
    for f in free_cols:
        vec = [ZERO] * ncols
        vec[f] = ONE
        for c, r in pivot_of_col.items():
            vec[c] = -aug[r][f]
        basis.append(tuple(vec))
    return UnderdeterminedSolution(tuple(particular), tuple(basis))


def find_affine_dependency(points):
    """Nonzero coefficients with sum 0 and weighted point-sum 0, or None.

    Given k points, solves the homogeneous system stacking the point
    coordinates with an all-ones row.  Returns None when the points are
    affinely independent; otherwise returns the null-space vector obtained by
    setting the first free variable to one, rescaled so that its first
    nonzero coordinate equals one.
    """
    pts = [tuple(rational(v) for v in p) for p in points]
    k = len(pts)
    if k < 2:
        raise ValidationError("affine dependency needs at least 2 points")
    dim = len(pts[0])
    for p in pts:
        if len(p) != dim:
            raise DimensionMismatch("points of unequal dimension")

    matrix = [[pts[j][i] for j in range(k)] for i in range(dim)]
    matrix.append([ONE] * k)
    pivots = _rref(matrix)
    if len(pivots) == k:
        return None
    pivot_of_col = {c: r for r, c in enumerate(pivots)}
    free = next(c for c in range(k) if c not in pivot_of_col)
    lam = [ZERO] * k
    lam[free] = ONE
    for c, r in pivot_of_col.items():
        lam[c] = -matrix[r][free]
    lead = next(v for v in lam if v != 0)
    if lead != 1:
        lam = [v / lead for v in lam]
    return tuple(lam)


# ---------------------------------------------------------------------------
# Linear programming
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearProgram:
    """max/min objective . x subject to rows; variables are free by default.

    constraints: sequence of (coefficients, relation, rhs) with relation in
    {"<=", "=", ">="}.  lower_bounds, when given, holds one entry per
    variable: a rational lower bound or None for a free variable.
    """

    objective: tuple
    constraints: tuple
    lower_bounds: Optional[tuple] = None

    @staticmethod
    def build(objective, constraints, lower_bounds=None) -> "LinearProgram":
        obj = tuple(rational(v) for v in objective)
        n = len(obj)
        rows = []
        for coeffs, rel, rhs in constraints:
            coeffs = tuple(rational(v) for v in coeffs)
            if len(coeffs) != n:
                raise DimensionMismatch(
                    f"constraint width {len(coeffs)} != objective width {n}"
                )
            if rel not in (LE, EQ, GE):
                raise ValidationError(f"unknown relation {rel!r}")
            rows.append((coeffs, rel, rational(rhs)))
        lb = None
        if lower_bounds is not None:
            if len(lower_bounds) != n:
                raise DimensionMismatch("one lower bound entry per variable required")
            lb = tuple(None if v is None else rational(v) for v in lower_bounds)
        return LinearProgram(obj, tuple(rows), lb)


@dataclass(frozen=True)
class LpResult:
    status: str
    value: Optional[Q] = None
    point: Optional[tuple] = None


def lp_optimize(lp: LinearProgram, sense: str = "max") -> LpResult:
    """Exact optimum of a LinearProgram via two-phase simplex (Bland's rule)."""
    if sense not in ("max", "min"):
        raise ValidationError(f"sense must be 'max' or 'min', got {sense!r}")
    n = len(lp.objective)
    lower = lp.lower_bounds if lp.lower_bounds is not None else (None,) * n

    # Map each variable to nonnegative kernel variables: shifted when it has
    # a lower bound, split into a difference of two otherwise.
    col_of = []  # var -> (kind, data)
    ncols = 0
    shift = [ZERO] * n
    for i in range(n):
        if lower[i] is None:
            col_of.append(("free", (ncols, ncols + 1)))
            ncols += 2
        else:
            shift[i] = lower[i]
            col_of.append(("shift", ncols))
            ncols += 1

    def expand(coeffs):
        row = [ZERO] * ncols
        for i, v in enumerate(coeffs):
            if v == 0:
                continue
            kind, data = col_of[i]
            if kind == "free":
                pos, neg = data
                row[pos] += v
                row[neg] -= v
            else:
                row[data] += v
        return row

    sign = ONE if sense == "max" else -ONE
    objective = [sign * v for v in expand(lp.objective)]
    rows, rels, rhs = [], [], []
    for coeffs, rel, b in lp.constraints:
        # substitute x = y + lower on bounded variables
        b_adj = b - sum((shift[i] * coeffs[i] for i in range(n)), ZERO)
        rows.append(expand(coeffs))
        rels.append(rel)
        rhs.append(b_adj)

    status, _, x = simplex(objective, rows, rels, rhs)
    if status != OPTIMAL:
        return LpResult(status)
    point = []
    for i in range(n):
        kind, data = col_of[i]
        if kind == "free":
            pos, neg = data
            point.append(x[pos] - x[neg])
        else:
            point.append(x[data] + shift[i])
    value = sum((lp.objective[i] * point[i] for i in range(n)), ZERO)
    return LpResult(OPTIMAL, value, tuple(point))


def simplex(objective, rows, rels, rhs):
    """max objective . x  s.t.  rows[i] . x (rels[i]) rhs[i],  x >= 0.

    Two-phase dense tableau simplex under Bland's rule.  Returns
    (status, value, x) with x a list over the structural variables.
    """
    m = len(rows)
    n = len(objective)
    # Orient every row to have a nonnegative right-hand side.
    work_rows, work_rels, work_rhs = [], [], []
    for i in range(m):
        row, rel, b = list(rows[i]), rels[i], rhs[i]
        if b < 0:
            row = [-v for v in row]
            b = -b
            rel = {LE: GE, GE: LE, EQ: EQ}[rel]
        work_rows.append(row)
        work_rels.append(rel)
        work_rhs.append(b)

    n_slack = sum(1 for r in work_rels if r != EQ)
    n_art = sum(1 for r in work_rels if r != LE)
    width = n + n_slack + n_art
    tableau = []
    basis = []
    slack_at = n
    art_at = n + n_slack
    art_cols = []
    for i in range(m):
        row = work_rows[i] + [ZERO] * (n_slack + n_art) + [work_rhs[i]]
        rel = work_rels[i]
        if rel == LE:
            row[slack_at] = ONE
            basis.append(slack_at)
            slack_at += 1
        elif rel == GE:
            row[slack_at] = -ONE
            slack_at += 1
            row[art_at] = ONE
            basis.append(art_at)
            art_cols.append(art_at)
            art_at += 1
        else:
            row[art_at] = ONE
            basis.append(art_at)
            art_cols.append(art_at)
            art_at += 1
        tableau.append(row)

    def pivot(r, c):
        prow = tableau[r]
        inv = ONE / prow[c]
        if inv != 1:
            prow = [v * inv for v in prow]
            tableau[r] = prow
        for i in range(len(tableau)):
            if i != r and tableau[i][c] != 0:
                f = tableau[i][c]
                row_i = tableau[i]
                tableau[i] = [row_i[j] - f * prow[j] for j in range(width + 1)]
        nonlocal objrow
        if objrow[c] != 0:
            f = objrow[c]
            objrow = [objrow[j] - f * prow[j] for j in range(width + 1)]
        basis[r] = c

    def run(allowed_width):
        # Bland: entering = lowest-index improving column; leaving = min
        # ratio with ties toward the lowest basic variable index.
        while True:
            enter = -1
            for j in range(allowed_width):
                if objrow[j] < 0:
                    enter = j
                    break
            if enter < 0:
                return OPTIMAL
            leave = -1
            best = None
            for i in range(m):
                a = tableau[i][enter]
                if a > 0:
                    ratio = tableau[i][width] / a
                    if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leave]
                    ):
                        best = ratio
                        leave = i
            if leave < 0:
                return UNBOUNDED
            pivot(leave, enter)

    if n_art:
        # Phase 1: maximize -(sum of artificials).
        objrow = [ZERO] * (width + 1)
        for c in art_cols:
            objrow[c] = ONE
        for i in range(m):
            if basis[i] in art_cols:
                row_i = tableau[i]
                objrow = [objrow[j] - row_i[j] for j in range(width + 1)]
        run(width)
        if objrow[width] != 0:  # -phase1 optimum stored with flipped sign
            return INFEASIBLE, None, None
        # Drive any degenerate artificial out of the basis.
        for i in range(m):
            if basis[i] in art_cols:
                enter = -1
                for j in range(n + n_slack):
                    if tableau[i][j] != 0:
                        enter = j
                        break
                if enter >= 0:
                    pivot(i, enter)
        # Rows still basic in an artificial variable are redundant (all-zero
        # over the real columns); zero the artificial columns to retire them.
        for c in art_cols:
            for i in range(m):
                tableau[i][c] = ZERO

    objrow = [ZERO] * (width + 1)
    for j in range(n):
        objrow[j] = -objective[j]
    for i in range(m):
        cb = basis[i]
        if cb < n and objective[cb] != 0:
            f = objective[cb]
            row_i = tableau[i]
            objrow = [objrow[j] + f * row_i[j] for j in range(width + 1)]

    status = run(n + n_slack)
    if status != OPTIMAL:
        return status, None, None
    x = [ZERO] * (n + n_slack)
    for i in range(m):
        if basis[i] < n + n_slack:
            x[basis[i]] = tableau[i][width]
    value = sum((objective[j] * x[j] for j in range(n)), ZERO)
    return OPTIMAL, value, x[:n]


def simplex_feasible(rows, rels, rhs, width):
    """Phase-1-only feasibility for rows over nonnegative variables.

    Returns a point (list over the first `width` structural variables) or
    None when infeasible.  Used in solver hot loops to skip phase 2.
    """
    status, _, x = simplex([ZERO] * width, rows, rels, rhs)
    return x if status == OPTIMAL else None
