"""Exact rational-arithmetic linear feasibility and rank, at desk scale.

Phase-1 simplex over fractions.Fraction with Bland's rule: no cycling, no
tolerance.  Every float input is converted exactly (floats are dyadic
rationals), so feasibility answers are exact for the given binary data.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Row = Sequence[float | int | Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def feasible_nonneg(A: Sequence[Row], b: Row) -> list[Fraction] | None:
    """Solve {x >= 0 : A x = b} exactly; a witness x or None.

    Phase-1 simplex: artificial variables start basic, Bland's rule picks
    pivots, feasibility holds iff the artificial objective reaches zero.
    """
    rows = [[_frac(x) for x in row] for row in A]
    rhs = [_frac(x) for x in b]
    n_rows = len(rows)
    n_vars = len(rows[0]) if n_rows else 0
    for row in rows:
        if len(row) != n_vars:
            raise ValueError("ragged constraint matrix")
    if len(rhs) != n_rows:
        raise ValueError("right-hand side length mismatch")
    if n_rows == 0:
        return []
    for i in range(n_rows):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]

    # tableau columns: n_vars structural + n_rows artificial + rhs
    width = n_vars + n_rows
    tab = [rows[i] + [ONE if j == i else ZERO for j in range(n_rows)] + [rhs[i]]
           for i in range(n_rows)]
    basis = list(range(n_vars, width))
    # objective row: minimize sum of artificials, expressed in nonbasic terms
    obj = [ZERO] * (width + 1)
    for i in range(n_rows):
        for j in range(width + 1):
            obj[j] += tab[i][j]
    for j in range(n_vars, width):
        obj[j] = ZERO

    while True:
        enter = next((j for j in range(width) if obj[j] > 0), None)
        if enter is None:
            break
        ratios = [
            (tab[i][width] / tab[i][enter], basis[i], i)
            for i in range(n_rows)
            if tab[i][enter] > 0
        ]
        if not ratios:  # unbounded phase-1 cannot happen; defensive
            return None
        _, _, leave = min(ratios, key=lambda r: (r[0], r[1]))
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(n_rows):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [x - f * y for x, y in zip(obj, tab[leave])]
        basis[leave] = enter

    if obj[width] != 0:
        return None
    x = [ZERO] * n_vars
    for i, var in enumerate(basis):
        if var < n_vars:
            x[var] = tab[i][width]
        elif tab[i][width] != 0:  # degenerate artificial left basic at 0 only
            return None
    return x


def feasible_system(
    A_eq: Sequence[Row] | None = None,
    b_eq: Row | None = None,
    A_ub: Sequence[Row] | None = None,
    b_ub: Row | None = None,
    n_free: int = 0,
) -> list[Fraction] | None:
    """Feasibility of {A_eq y = b_eq, A_ub y <= b_ub} with y free.

    Free variables split into positive parts and inequality rows take a
    slack, reducing to the nonnegative equality form.  Returns a witness y
    (length n_free) or None.
    """
    eq_rows = [list(r) for r in (A_eq or [])]
    eq_rhs = list(b_eq or [])
    ub_rows = [list(r) for r in (A_ub or [])]
    ub_rhs = list(b_ub or [])
    for row in eq_rows + ub_rows:
        if len(row) != n_free:
            raise ValueError("constraint width != n_free")
    n_slack = len(ub_rows)
    A: list[list[Fraction]] = []
    b: list[Fraction] = []
    for row, rhs in zip(eq_rows, eq_rhs):
        split = [_frac(x) for x in row] + [-_frac(x) for x in row]
        A.append(split + [ZERO] * n_slack)
        b.append(_frac(rhs))
    for s, (row, rhs) in enumerate(zip(ub_rows, ub_rhs)):
        split = [_frac(x) for x in row] + [-_frac(x) for x in row]
        slack = [ONE if t == s else ZERO for t in range(n_slack)]
        A.append(split + slack)
        b.append(_frac(rhs))
    sol = feasible_nonneg(A, b)
    if sol is None:
        return None
    return [sol[j] - sol[n_free + j] for j in range(n_free)]


def convex_combination(points: Sequence[Row], x: Row) -> list[Fraction] | None:
    """Weights putting x in the convex hull of the points, or None.

    Solves {lambda >= 0, sum lambda = 1, sum lambda_j p_j = x} exactly.
    """
    pts = [[_frac(c) for c in p] for p in points]
    target = [_frac(c) for c in x]
    if not pts:
        return None
    d = len(target)
    for p in pts:
        if len(p) != d:
            raise ValueError("dimension mismatch between points and target")
    A = [[pts[j][c] for j in range(len(pts))] for c in range(d)]
    A.append([ONE] * len(pts))
    b = list(target) + [ONE]
    return feasible_nonneg(A, b)


def rational_rank(rows: Sequence[Row]) -> int:
    """Rank of the row set by exact Gaussian elimination."""
    work = [[_frac(x) for x in row] for row in rows]
    if not work:
        return 0
    n_cols = len(work[0])
    rank = 0
    col = 0
    for col in range(n_cols):
        piv = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        inv = ONE / prow[col]
        work[rank] = [x * inv for x in prow]
        for i in range(len(work)):
            if i != rank and work[i][col] != 0:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return rank
