"""Exact Gaussian elimination over a rational function field.

Rows are lists of RatFunc.  Elimination runs single-threaded with a
deterministic pivot rule: columns are processed left to right and the
pivot row is the candidate whose entry has the fewest monomials, ties
broken by row index.  The reduced echelon form therefore comes out
byte-identical across runs.
"""

from __future__ import annotations

from .scalars import DiffField, RatFunc


def _complexity(v: RatFunc) -> int:
    return len(v.num.terms) + len(v.den.terms)


def rref(rows: list[list[RatFunc]]) -> tuple[list[list[RatFunc]], list[int]]:
    """Reduced row echelon form with monic pivots; returns (rows, pivot cols)."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    head = 0
    for col in range(ncols):
        best = None
        for i in range(head, len(rows)):
            if not rows[i][col].is_zero():
                if best is None or _complexity(rows[i][col]) < _complexity(rows[best][col]):
                    best = i
        if best is None:
            continue
        rows[head], rows[best] = rows[best], rows[head]
        inv = rows[head][col].inv()
        rows[head] = [inv * v for v in rows[head]]
        for i in range(len(rows)):
            if i != head and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[head])]
        pivots.append(col)
        head += 1
        if head == len(rows):
            break
    return rows[:head], pivots


def nullspace(rows: list[list[RatFunc]], ncols: int, field: DiffField) -> list[list[RatFunc]]:
    """Basis of the homogeneous solution space, one vector per free column."""
    reduced, pivots = rref(rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [field.zero] * ncols
        vec[fc] = field.one
        for r, pc in zip(reduced, pivots):
            vec[pc] = -r[fc]
        basis.append(vec)
    return basis


def solve(rows: list[list[RatFunc]], rhs: list[RatFunc],
          field: DiffField) -> list[RatFunc] | None:
    """One exact solution of rows * v = rhs, or None when inconsistent."""
    if not rows:
        return None
    aug = [r + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(aug)
    ncols = len(rows[0])
    if ncols in pivots:
        return None
    vec = [field.zero] * ncols
    for r, pc in zip(reduced, pivots):
        vec[pc] = r[-1]
    return vec
