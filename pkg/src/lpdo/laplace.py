"""Laplace invariants, Laplace transformations, and cascade termination.

A normalized hyperbolic operator L = DxDy - A*Dx - B*Dy - C admits two
incomplete factorizations

    L = (Dx - B) o (Dy - A) + H,      H = Dx(A) - A*B - C,
    L = (Dy - A) o (Dx - B) + K,      K = Dy(B) - A*B - C,

whose obstruction terms H, K are the Laplace invariants.  While the
governing invariant is nonzero the transformation produces a new
operator of the same shape; a vanishing invariant ends the cascade and
the operator factors.  Two independent routes compute each step here:
symbolic composition of the transformed operator, and the scalar
recursion on the invariants themselves; tests run both and production
code may enable the cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .operators import DiffOp
from .scalars import DerivationDepthError, DiffField, RatFunc


class NotHyperbolicError(ValueError):
    """The operator is not of the normalized hyperbolic shape."""


class CascadeHaltError(ValueError):
    """A Laplace step was requested although its invariant vanishes."""


@dataclass(frozen=True)
class HyperbolicOp:
    """L = DxDy - a*Dx - b*Dy - c over the field of its coefficients."""

    field: DiffField
    a: RatFunc
    b: RatFunc
    c: RatFunc

    @classmethod
    def from_coefficients(cls, field: DiffField, a, b, c) -> HyperbolicOp:
        mk = lambda v: v if isinstance(v, RatFunc) else field.constant(v)
        return cls(field, mk(a), mk(b), mk(c))

    @classmethod
    def from_operator(cls, op: DiffOp) -> HyperbolicOp:
        """Extract and normalize; the DxDy coefficient must be invertible."""
        lead = op.coeff(1, 1)
        if lead.is_zero():
            raise NotHyperbolicError("no mixed DxDy term to normalize by")
        if not op.coeff(2, 0).is_zero() or not op.coeff(0, 2).is_zero():
            raise NotHyperbolicError("operator has Dx^2 or Dy^2 terms")
        if op.order > 2:
            raise NotHyperbolicError("operator order exceeds two")
        inv = lead.inv()
        return cls(op.field,
                   -(inv * op.coeff(1, 0)),
                   -(inv * op.coeff(0, 1)),
                   -(inv * op.coeff(0, 0)))

    def to_operator(self) -> DiffOp:
        f = self.field
        return DiffOp(f, {(1, 1): f.one, (1, 0): -self.a,
                          (0, 1): -self.b, (0, 0): -self.c})

    def is_symmetric(self) -> bool:
        return self.a == self.b

    def __str__(self):
        return str(self.to_operator())


@dataclass(frozen=True)
class LaplaceInvariants:
    h: RatFunc
    k: RatFunc


@dataclass(frozen=True)
class CascadeReport:
    direction: str                  # "forward" or "backward"
    invariants: tuple[RatFunc, ...]
    terminated: bool
    steps: int
    bound: int
    note: Optional[str] = None

    def invariant_strings(self) -> list[str]:
        return [str(v) for v in self.invariants]


@dataclass(frozen=True)
class DarbouxResult:
    status: str                     # "integrable" or "inconclusive"
    forward: CascadeReport
    backward: CascadeReport

    @property
    def integrable(self) -> bool:
        return self.status == "integrable"


def invariants(op: HyperbolicOp) -> LaplaceInvariants:
    """Both invariants, re-validated against the factorization identities."""
    field = op.field
    dx_a = field.derive(op.a, "x")
    dy_b = field.derive(op.b, "y")
    ab = op.a * op.b
    h = dx_a - ab - op.c
    k = dy_b - ab - op.c
    full = op.to_operator()
    Dx, Dy = DiffOp.dx(field), DiffOp.dy(field)
    first = (Dx - op.b) * (Dy - op.a) + h
    second = (Dy - op.a) * (Dx - op.b) + k
    if first != full or second != full:
        raise AssertionError("factorization identities failed to re-expand")
    return LaplaceInvariants(h, k)


def laplace_step(op: HyperbolicOp, direction: str) -> HyperbolicOp:
    """One Laplace transformation, built by symbolic composition.

    Forward consumes a nonzero H and yields L1 with K(L1) = H(L);
    backward mirrors the roles of x and y.
    """
    field = op.field
    inv = invariants(op)
    Dx, Dy = DiffOp.dx(field), DiffOp.dy(field)
    if direction == "forward":
        if inv.h.is_zero():
            raise CascadeHaltError(
                "invariant H vanishes: the forward transform does not apply")
        alpha = op.a + field.derive(inv.h, "y") / inv.h
        composed = (Dy - alpha) * (Dx - op.b) + inv.h
        new = HyperbolicOp.from_operator(composed)
        if invariants(new).k != inv.h:
            raise AssertionError("K of the forward transform must equal H")
        return new
    if direction == "backward":
        if inv.k.is_zero():
            raise CascadeHaltError(
                "invariant K vanishes: the backward transform does not apply")
        beta = op.b + field.derive(inv.k, "x") / inv.k
        composed = (Dx - beta) * (Dy - op.a) + inv.k
        new = HyperbolicOp.from_operator(composed)
        if invariants(new).h != inv.k:
            raise AssertionError("H of the backward transform must equal K")
        return new
    raise ValueError("direction must be 'forward' or 'backward'")


def scalar_invariant_sequence(op: HyperbolicOp, direction: str, bound: int) -> list[RatFunc]:
    """Invariant sequence by the scalar recursion, no operator composition.

    Forward: H1 = 2H - K + Dx(Dy(H)/H), with the old H becoming the next
    K.  The sequence stops at the first exact zero or after ``bound``
    transformations.
    """
    field = op.field
    inv = invariants(op)
    h, k = inv.h, inv.k
    seq = []
    for _ in range(bound + 1):
        g = h if direction == "forward" else k
        seq.append(g)
        if g.is_zero():
            break
        if direction == "forward":
            h, k = 2 * h - k + field.derive(field.derive(h, "y") / h, "x"), h
        else:
            h, k = k, 2 * k - h + field.derive(field.derive(k, "x") / k, "y")
    return seq


def cascade(op: HyperbolicOp, direction: str, bound: int,
            cross_check: bool = False) -> CascadeReport:
    """Iterate Laplace transformations until the invariant dies or bound hits.

    ``cross_check`` also runs the scalar recursion and insists on exact
    term-by-term agreement with the composition route.
    """
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    oracle = scalar_invariant_sequence(op, direction, bound) if cross_check else None
    seq: list[RatFunc] = []
    current = op
    note = None
    terminated = False
    while True:
        inv = invariants(current)
        g = inv.h if direction == "forward" else inv.k
        seq.append(g)
        if oracle is not None:
            i = len(seq) - 1
            if i >= len(oracle) or oracle[i] != g:
                raise AssertionError(
                    "composition and scalar-recursion routes disagree")
        if g.is_zero():
            terminated = True
            break
        if len(seq) > bound:
            break
        try:
            current = laplace_step(current, direction)
        except DerivationDepthError as exc:
            note = str(exc)
            break
    return CascadeReport(direction=direction,
                         invariants=tuple(seq),
                         terminated=terminated,
                         steps=len(seq) - 1,
                         bound=bound,
                         note=note)


def darboux_linear(op: HyperbolicOp, bound: int,
                   cross_check: bool = False) -> DarbouxResult:
    """Integrable iff both cascades terminate within the bound.

    Hitting the bound is reported as inconclusive, never as a negative.
    """
    fwd = cascade(op, "forward", bound, cross_check)
    bwd = cascade(op, "backward", bound, cross_check)
    status = "integrable" if fwd.terminated and bwd.terminated else "inconclusive"
    return DarbouxResult(status, fwd, bwd)
