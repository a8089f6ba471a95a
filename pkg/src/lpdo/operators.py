"""Non-commutative algebra of linear partial differential operators.

An operator is a finite sum of terms a_ij * Dx^i * Dy^j with rational
function coefficients over a differential field.  Composition expands by
the Leibniz rule, the adjoint is the usual formal transpose, and
operators act on field elements through the field's derivations.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .scalars import DiffField, FieldMismatchError, RatFunc


class DiffOp:
    """Linear partial differential operator in Dx and Dy.

    ``terms`` maps an exponent pair (i, j) to a nonzero coefficient; the
    canonical form keeps coefficients to the left of the monomials.
    Instances are immutable; ``*`` is composition and is not commutative.
    """

    __slots__ = ("field", "terms")

    def __init__(self, field: DiffField, terms):
        self.field = field
        self.terms = {ij: c for ij, c in terms.items() if not c.is_zero()}

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, field: DiffField) -> DiffOp:
        return cls(field, {})

    @classmethod
    def one(cls, field: DiffField) -> DiffOp:
        return cls(field, {(0, 0): field.one})

    @classmethod
    def dx(cls, field: DiffField) -> DiffOp:
        return cls(field, {(1, 0): field.one})

    @classmethod
    def dy(cls, field: DiffField) -> DiffOp:
        return cls(field, {(0, 1): field.one})

    @classmethod
    def monomial(cls, field: DiffField, i: int, j: int, coeff=None) -> DiffOp:
        return cls(field, {(i, j): field.one if coeff is None else coeff})

    @classmethod
    def constant(cls, field: DiffField, value) -> DiffOp:
        if not isinstance(value, RatFunc):
            value = field.constant(value)
        return cls(field, {(0, 0): value})

    # -- structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def order(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def coeff(self, i: int, j: int) -> RatFunc:
        return self.terms.get((i, j), self.field.zero)

    def sorted_terms(self):
        """Terms by (total order, Dx power) descending: the print order."""
        return sorted(self.terms.items(),
                      key=lambda kv: (kv[0][0] + kv[0][1], kv[0][0]),
                      reverse=True)

    def _coerce(self, other) -> DiffOp:
        if isinstance(other, DiffOp):
            if other.field is not self.field:
                raise FieldMismatchError(
                    "cannot combine operators over different fields")
            return other
        if isinstance(other, (int, Fraction, RatFunc)):
            return DiffOp.constant(self.field, other)
        return NotImplemented

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for ij, c in other.terms.items():
            s = out.get(ij)
            out[ij] = c if s is None else s + c
        return DiffOp(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return DiffOp(self.field, {ij: -c for ij, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        """Operator composition (right factor applied first)."""
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return DiffOp.zero(self.field)
        field = self.field
        out: dict[tuple[int, int], RatFunc] = {}
        for (k, l), b in other.terms.items():
            # iterated derivatives of b, filled on demand: dtab[s][t] = Dx^s Dy^t b
            dtab: dict[tuple[int, int], RatFunc] = {(0, 0): b}

            def dmixed(s: int, t: int) -> RatFunc:
                got = dtab.get((s, t))
                if got is None:
                    if s:
                        got = field.derive(dmixed(s - 1, t), "x")
                    else:
                        got = field.derive(dmixed(0, t - 1), "y")
                    dtab[(s, t)] = got
                return got

            for (i, j), a in self.terms.items():
                for s in range(i + 1):
                    for t in range(j + 1):
                        c = dmixed(i - s, j - t)
                        if c.is_zero():
                            continue
                        c = a * c
                        n = comb(i, s) * comb(j, t)
                        if n != 1:
                            c = c * n
                        key = (s + k, t + l)
                        got = out.get(key)
                        out[key] = c if got is None else got + c
        result = DiffOp(field, out)
        # no zero divisors: the principal symbol of a product is the
        # product of symbols over an integral domain
        assert result.order == self.order + other.order
        return result

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def __pow__(self, n: int) -> DiffOp:
        if n < 0:
            raise ValueError("negative operator power")
        out = DiffOp.one(self.field)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            other = DiffOp.constant(self.field, other)
        if not isinstance(other, DiffOp):
            return NotImplemented
        if other.field is not self.field:
            raise FieldMismatchError(
                "cannot compare operators over different fields")
        return self.terms == other.terms

    __hash__ = None

    # -- involution and action ---------------------------------------------

    def adjoint(self) -> DiffOp:
        """Formal adjoint: sum of (-1)^(i+j) Dx^i Dy^j o a_ij.

        An anti-automorphism of order two: (A o B)* = B* o A*, A** = A.
        """
        out = DiffOp.zero(self.field)
        for (i, j), a in self.terms.items():
            term = DiffOp.monomial(self.field, i, j) * DiffOp.constant(self.field, a)
            if (i + j) % 2:
                term = -term
            out = out + term
        return out

    def apply(self, value: RatFunc) -> RatFunc:
        """Act on a field element through the field's derivations."""
        if value.field is not self.field:
            raise FieldMismatchError("operand lives in a different field")
        acc = self.field.zero
        # column of iterated derivatives shared across terms
        dtab: dict[tuple[int, int], RatFunc] = {(0, 0): value}

        def dmixed(s: int, t: int) -> RatFunc:
            got = dtab.get((s, t))
            if got is None:
                if s:
                    got = self.field.derive(dmixed(s - 1, t), "x")
                else:
                    got = self.field.derive(dmixed(0, t - 1), "y")
                dtab[(s, t)] = got
            return got

        for (i, j), a in self.terms.items():
            acc = acc + a * dmixed(i, j)
        return acc

    # -- univariate views ---------------------------------------------------

    def univariate_direction(self) -> str | None:
        """'x' or 'y' if the operator only involves that derivation, else None.

        Operators of order zero count as univariate in either direction
        and report 'x'.
        """
        if all(j == 0 for _, j in self.terms):
            return "x"
        if all(i == 0 for i, _ in self.terms):
            return "y"
        return None

    def univariate_coeffs(self, direction: str) -> list[RatFunc]:
        """Coefficient list c_0..c_d when the operator is pure in one D."""
        if direction == "x":
            if any(j for _, j in self.terms):
                raise ValueError("operator involves Dy")
            degs = {i: c for (i, _), c in self.terms.items()}
        else:
            if any(i for i, _ in self.terms):
                raise ValueError("operator involves Dx")
            degs = {j: c for (_, j), c in self.terms.items()}
        d = max(degs, default=0)
        return [degs.get(k, self.field.zero) for k in range(d + 1)]

    # -- presentation ---------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts: list[str] = []
        for (i, j), c in self.sorted_terms():
            mono = _mono_text(i, j)
            body, positive = _coeff_text(c, mono)
            if not parts:
                parts.append(body if positive else f"-{body}")
            else:
                parts.append(f" + {body}" if positive else f" - {body}")
        return "".join(parts)

    def __repr__(self):
        return f"DiffOp({self})"

    def to_json(self) -> list[dict]:
        """Stable JSON form: one record per term in print order."""
        return [{"dx": i, "dy": j, "coeff": str(c)}
                for (i, j), c in self.sorted_terms()]


def _mono_text(i: int, j: int) -> str:
    parts = []
    if i == 1:
        parts.append("Dx")
    elif i > 1:
        parts.append(f"Dx^{i}")
    if j == 1:
        parts.append("Dy")
    elif j > 1:
        parts.append(f"Dy^{j}")
    return "*".join(parts)


def _coeff_text(c: RatFunc, mono: str) -> tuple[str, bool]:
    """Render coeff*monomial without a leading sign; report positivity."""
    positive = c.num.leading_coeff() > 0
    body = c if positive else -c
    s = str(body)
    if not mono:
        return s, positive
    if s == "1":
        return mono, positive
    simple = len(body.num.terms) == 1 and body.den.is_one()
    if not simple:
        s = f"({s})"
    return f"{s}*{mono}", positive
