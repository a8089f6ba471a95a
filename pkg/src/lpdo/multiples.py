"""Order-bounded common left multiples and generalized divisor couples.

Writing the unknown cofactors with indefinite coefficients turns
M_1 o L_1 = ... = M_k o L_k into a purely algebraic linear system: the
unknowns sit to the left of known operators, so no derivative of an
unknown ever appears.  Right-hand versions go through the adjoint.  A
divisor couple witness for (M; L, R) is a triple X, Y, Q with
X o M = Y o R and X o L = Y o Q; a factorization M = L o R always yields
the witness X = 1, Y = L, Q = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import linsolve
from .operators import DiffOp
from .scalars import DiffField, RatFunc


@dataclass(frozen=True)
class CofactorFamily:
    """One solution (M_1..M_k) with the common product they all reach."""
    cofactors: tuple[DiffOp, ...]
    product: DiffOp


@dataclass(frozen=True)
class SolutionBasis:
    operators: tuple[DiffOp, ...]
    bound: int
    families: tuple[CofactorFamily, ...]

    @property
    def dimension(self) -> int:
        return len(self.families)


@dataclass(frozen=True)
class CoupleWitness:
    x: DiffOp
    y: DiffOp
    q: DiffOp
    bound: int
    trivial: bool
    triviality_reason: Optional[str]


def _monomials_upto(n: int) -> list[tuple[int, int]]:
    """Exponent pairs of total order <= n in the deterministic unknown order."""
    out = [(i, j) for j in range(n + 1) for i in range(n + 1 - j)]
    out.sort(key=lambda ij: (ij[0] + ij[1], ij[0]))
    return out


def _row_index(n: int) -> dict[tuple[int, int], int]:
    return {ij: k for k, ij in enumerate(_monomials_upto(n))}


def common_left_multiples(operators: Sequence[DiffOp], bound: int) -> SolutionBasis:
    """All families M_i with M_1 o L_1 = ... = M_k o L_k of order <= bound.

    The solution set is a vector space over the coefficient field; the
    returned families form its reduced-echelon basis.  Every family is
    re-expanded and checked before it is returned.
    """
    ops = list(operators)
    if len(ops) < 2:
        raise ValueError("need at least two operators")
    field = ops[0].field
    for op in ops:
        if op.is_zero():
            raise ValueError("common multiples of the zero operator")
        if op.field is not field:
            raise ValueError("operators live in different fields")
        if bound < op.order:
            raise ValueError(
                f"order bound {bound} is below operator order {op.order}")

    # columns: coefficients of each cofactor M_t, t in operator order
    columns: list[tuple[int, tuple[int, int]]] = []
    column_ops: list[DiffOp] = []
    for t, op in enumerate(ops):
        for ij in _monomials_upto(bound - op.order):
            columns.append((t, ij))
            column_ops.append(DiffOp.monomial(field, *ij) * op)

    rows_of = _row_index(bound)
    nrows = len(rows_of) * (len(ops) - 1)
    matrix = [[field.zero] * len(columns) for _ in range(nrows)]
    for c, ((t, _), colop) in enumerate(zip(columns, column_ops)):
        for ij, val in colop.terms.items():
            r = rows_of[ij]
            if t == 0:
                for blk in range(len(ops) - 1):
                    matrix[blk * len(rows_of) + r][c] = val
            else:
                matrix[(t - 1) * len(rows_of) + r][c] = -val

    basis = linsolve.nullspace(matrix, len(columns), field)
    families = []
    for vec in basis:
        cofs = []
        for t, op in enumerate(ops):
            cof = DiffOp.zero(field)
            for c, (tt, ij) in enumerate(columns):
                if tt == t and not vec[c].is_zero():
                    cof = cof + DiffOp.monomial(field, *ij, coeff=vec[c])
            cofs.append(cof)
        products = [cof * op for cof, op in zip(cofs, ops)]
        for p in products[1:]:
            if p != products[0]:
                raise ArithmeticError(
                    "solver returned a family that does not re-expand equal")
        families.append(CofactorFamily(tuple(cofs), products[0]))
    return SolutionBasis(tuple(ops), bound, tuple(families))


def common_right_multiples(operators: Sequence[DiffOp], bound: int) -> SolutionBasis:
    """Families N_i with L_1 o N_1 = ... = L_k o N_k, via the adjoint."""
    adj = [op.adjoint() for op in operators]
    left = common_left_multiples(adj, bound)
    families = []
    for fam in left.families:
        cofs = tuple(c.adjoint() for c in fam.cofactors)
        products = [op * c for op, c in zip(operators, cofs)]
        for p in products[1:]:
            if p != products[0]:
                raise ArithmeticError("adjoint conjugation failed to re-expand")
        families.append(CofactorFamily(cofs, products[0]))
    return SolutionBasis(tuple(operators), bound, tuple(families))


def solve_right_factor(left: DiffOp, target: DiffOp) -> Optional[DiffOp]:
    """Q with left o Q = target, or None.

    The unknown sits to the right, so its derivatives would appear in a
    direct expansion; transposing with the adjoint moves it to the left
    and keeps the system algebraic.
    """
    if left.is_zero():
        raise ValueError("left factor is zero")
    if target.is_zero():
        return DiffOp.zero(left.field)
    w = solve_left_factor(left.adjoint(), target.adjoint())
    if w is None:
        return None
    q = w.adjoint()
    if left * q != target:
        raise ArithmeticError("right-factor solution failed re-expansion")
    return q


def solve_left_factor(right: DiffOp, target: DiffOp) -> Optional[DiffOp]:
    """K with K o right = target, or None."""
    if right.is_zero():
        raise ValueError("right factor is zero")
    field = right.field
    if target.is_zero():
        return DiffOp.zero(field)
    bound = target.order - right.order
    if bound < 0:
        return None
    monos = _monomials_upto(bound)
    column_ops = [DiffOp.monomial(field, *ij) * right for ij in monos]
    rows_of = _row_index(target.order)
    matrix = [[field.zero] * len(monos) for _ in range(len(rows_of))]
    rhs = [field.zero] * len(rows_of)
    for c, colop in enumerate(column_ops):
        for ij, val in colop.terms.items():
            matrix[rows_of[ij]][c] = val
    for ij, val in target.terms.items():
        rhs[rows_of[ij]] = val
    vec = linsolve.solve(matrix, rhs, field)
    if vec is None:
        return None
    k = DiffOp.zero(field)
    for c, ij in enumerate(monos):
        if not vec[c].is_zero():
            k = k + DiffOp.monomial(field, *ij, coeff=vec[c])
    if k * right != target:
        raise ArithmeticError("left-factor solution failed re-expansion")
    return k


def _classify_triviality(m: DiffOp, l: DiffOp, r: DiffOp) -> tuple[bool, Optional[str]]:
    if l.order <= 0:
        return True, "left member has order 0"
    if r.order <= 0:
        return True, "right member has order 0"
    if solve_right_factor(m, l) is not None:
        return True, "left member is a left multiple of the operator"
    if solve_left_factor(m, r) is not None:
        return True, "right member is a right multiple of the operator"
    return False, None


def divisor_couple(m: DiffOp, l: DiffOp, r: DiffOp, bound: int) -> Optional[CoupleWitness]:
    """Search a witness X, Y, Q for the couple (l, r) of m at the given bound.

    Every basis solution of X o m = Y o r is tried; when any of them
    admits Q, all of them must admit the same Q, which is asserted.
    Returning None only means no witness exists at this bound.
    """
    if bound < max(m.order, r.order):
        return None
    basis = common_left_multiples([m, r], bound)
    witnesses = []
    for fam in basis.families:
        x, y = fam.cofactors
        q = solve_right_factor(y, x * l)
        witnesses.append((x, y, q))
    found = [w for w in witnesses if w[2] is not None]
    if not found:
        return None
    if len(found) != len(witnesses):
        raise AssertionError(
            "witness solvability differed across basis solutions")
    qs = found[0][2]
    for _, _, q in found[1:]:
        if q != qs:
            raise AssertionError("witness Q differed across basis solutions")
    x, y, q = found[0]
    trivial, reason = _classify_triviality(m, l, r)
    return CoupleWitness(x, y, q, bound, trivial, reason)


def lemma1_consistency(m: DiffOp, l: DiffOp, r: DiffOp, bound: int) -> bool:
    """Check that every basis solution of X o m = Y o r admits some Q.

    Vacuously true when the bound yields no solutions at all; expected
    true whenever any witness exists.
    """
    basis = common_left_multiples([m, r], bound)
    for fam in basis.families:
        x, y = fam.cofactors
        if solve_right_factor(y, x * l) is None:
            return False
    return True


def span_solve(products: Sequence[DiffOp], target: DiffOp) -> Optional[list[RatFunc]]:
    """Coefficients alpha_s with sum alpha_s * products_s = target, or None."""
    if not products:
        return None
    field = products[0].field
    monos = sorted({ij for p in products for ij in p.terms}
                   | set(target.terms),
                   key=lambda ij: (ij[0] + ij[1], ij[0]))
    rows_of = {ij: k for k, ij in enumerate(monos)}
    matrix = [[field.zero] * len(products) for _ in monos]
    rhs = [field.zero] * len(monos)
    for c, p in enumerate(products):
        for ij, val in p.terms.items():
            matrix[rows_of[ij]][c] = val
    for ij, val in target.terms.items():
        rhs[rows_of[ij]] = val
    vec = linsolve.solve(matrix, rhs, field)
    if vec is None:
        return None
    acc = DiffOp.zero(field)
    for a, p in zip(vec, products):
        acc = acc + DiffOp.constant(field, a) * p
    if acc != target:
        raise ArithmeticError("span solution failed re-expansion")
    return vec
