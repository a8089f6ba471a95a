"""Ore fractions over skew polynomial rings, and operator projections.

The ring Q(x,y)[D; d] has no zero divisors and any two nonzero elements
share a left multiple, so it embeds into a skew field of left fractions
den^-1 o num.  Rearranging a_ij Dx^i Dy^j = (a_ij Dy^j) o Dx^i turns a
bivariate operator into a skew polynomial in Dx whose coefficients are
such fractions in Dy (and symmetrically for the other axis); this
projection is multiplicative, and running the Euclidean machinery over
the fraction coefficients yields the monic coordinate generator of an
ideal along each axis.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce as _reduce

from .operators import DiffOp
from .scalars import DiffField
from .skewpoly import (ScalarCoefficients, SkewPoly, SkewRing, llcm_cofactors,
                       rgcd, skew_adjoint)


class FractionRing:
    """Left fractions den^-1 o num over a scalar-coefficient skew ring."""

    def __init__(self, inner: SkewRing):
        if not isinstance(inner.coefficients, ScalarCoefficients):
            raise ValueError("fractions need commutative scalar coefficients")
        self.inner = inner

    @property
    def zero(self) -> OreFraction:
        return OreFraction(self, self.inner.one, self.inner.zero, _canonical=True)

    @property
    def one(self) -> OreFraction:
        return OreFraction(self, self.inner.one, self.inner.one, _canonical=True)

    def embed(self, poly: SkewPoly) -> OreFraction:
        if poly.ring != self.inner:
            raise ValueError("polynomial from a different inner ring")
        return OreFraction(self, self.inner.one, poly, _canonical=True)

    def constant(self, c) -> OreFraction:
        return self.embed(self.inner.constant(c))

    def __eq__(self, other):
        return isinstance(other, FractionRing) and other.inner == self.inner

    __hash__ = None

    def __repr__(self):
        return f"FractionRing({self.inner!r})"


def _left_coprime(den: SkewPoly, num: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
    """Remove the greatest common left divisor, via adjoint transposition."""
    if num.is_zero():
        return den.ring.one, num
    g = skew_adjoint(rgcd(skew_adjoint(den), skew_adjoint(num)))
    if g.degree > 0:
        qd, rd = den.left_divmod(g)
        qn, rn = num.left_divmod(g)
        if not (rd.is_zero() and rn.is_zero()):
            raise ArithmeticError("common left divisor did not divide")
        den, num = qd, qn
    return den, num


class OreFraction:
    """den^-1 o num with den monic and the pair left-coprime."""

    __slots__ = ("ring", "den", "num")

    def __init__(self, ring: FractionRing, den: SkewPoly, num: SkewPoly,
                 _canonical: bool = False):
        if den.is_zero():
            raise ZeroDivisionError("fraction with zero denominator")
        if not _canonical:
            den, num = _left_coprime(den, num)
            if num.is_zero():
                den = ring.inner.one
            elif den.leading_coeff() != ring.inner.coefficients.one:
                s = ring.inner.coefficients.one / den.leading_coeff()
                den = den.scale_left(s)
                num = num.scale_left(s)
        self.ring = ring
        self.den = den
        self.num = num

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def _coerce(self, other):
        if isinstance(other, OreFraction):
            if other.ring != self.ring:
                raise ValueError("fractions from different rings")
            return other
        if isinstance(other, int):
            return self.ring.constant(self.ring.inner.coefficients.one * other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return OreFraction(self.ring, self.den, self.num + other.num)
        if self.den.degree == 0:
            # den is 1: a + d^-1 n = d^-1 (d a + n)
            return OreFraction(self.ring, other.den,
                               other.den * self.num + other.num)
        if other.den.degree == 0:
            return OreFraction(self.ring, self.den,
                               self.num + self.den * other.num)
        m, w1, w2 = llcm_cofactors(self.den, other.den)
        return OreFraction(self.ring, m, w1 * self.num + w2 * other.num)

    __radd__ = __add__

    def __neg__(self):
        return OreFraction(self.ring, self.den, -self.num, _canonical=True)

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
        """Product through the Ore exchange w o num1 = z o den2."""
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.ring.zero
        if other.den.degree == 0:
            return OreFraction(self.ring, self.den, self.num * other.num)
        if self.num == other.den:
            return OreFraction(self.ring, self.den, other.num)
        _, w, z = llcm_cofactors(self.num, other.den)
        return OreFraction(self.ring, w * self.den, z * other.num)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def inv(self) -> OreFraction:
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero fraction")
        return OreFraction(self.ring, self.num, self.den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __eq__(self, other):
        if isinstance(other, int):
            other = self._coerce(other)
        if not isinstance(other, OreFraction):
            return NotImplemented
        if other.ring != self.ring:
            raise ValueError("fractions from different rings")
        if self.den == other.den and self.num == other.num:
            return True
        if self.is_zero() or other.is_zero():
            return False
        # cross-check through a common left denominator
        if self.den == other.den:
            return False
        _, w1, w2 = llcm_cofactors(self.den, other.den)
        return w1 * self.num == w2 * other.num

    __hash__ = None

    def derive(self, direction: str) -> OreFraction:
        """Derivative along x or y, extended from coefficientwise derivation.

        With L' the coefficientwise derivative of the denominator,
        (L^-1 o M)' = L^-1 o M' - (L^-1 o L') o (L^-1 o M).
        """
        ring = self.ring
        dnum = _coeff_derive(self.num, direction)
        first = OreFraction(ring, self.den, dnum)
        if self.den.degree == 0:
            return first
        dden = _coeff_derive(self.den, direction)
        if dden.is_zero():
            return first
        correction = OreFraction(ring, self.den, dden) * self
        return first - correction

    def __str__(self):
        if self.is_polynomial():
            return f"({self.num})"
        return f"({self.den})^-1 * ({self.num})"

    def __repr__(self):
        return f"OreFraction({self})"


def _coeff_derive(p: SkewPoly, direction: str) -> SkewPoly:
    field = p.ring.coefficients.field
    return p.map_coeffs(lambda c: field.derive(c, direction))


class FractionCoefficients:
    """Adapter making a fraction field usable as skew-ring coefficients."""

    def __init__(self, ring: FractionRing, direction: str):
        self.ring = ring
        self.direction = direction
        self.zero = ring.zero
        self.one = ring.one
        self.commutative = False

    def derive(self, c: OreFraction) -> OreFraction:
        return c.derive(self.direction)

    def __eq__(self, other):
        return (isinstance(other, FractionCoefficients)
                and other.ring == self.ring
                and other.direction == self.direction)

    __hash__ = None

    def __repr__(self):
        return f"FractionCoefficients(d/d{self.direction})"


def inner_ring(field: DiffField, axis: str) -> SkewRing:
    """The coefficient ring of the projection: Dy-polynomials for axis x."""
    if axis == "x":
        return SkewRing(ScalarCoefficients(field, "y"), symbol="Dy")
    if axis == "y":
        return SkewRing(ScalarCoefficients(field, "x"), symbol="Dx")
    raise ValueError("axis must be 'x' or 'y'")


def projected_ring(field: DiffField, axis: str) -> SkewRing:
    """Skew polynomials in Dx over fractions in Dy (axis x), or mirrored."""
    fring = FractionRing(inner_ring(field, axis))
    return SkewRing(FractionCoefficients(fring, axis),
                    symbol="Dx" if axis == "x" else "Dy")


@dataclass(frozen=True)
class ProjectedOp:
    """A projected operator: skew polynomial with Ore fraction coefficients."""

    poly: SkewPoly
    axis: str

    @property
    def degree(self):
        return self.poly.degree

    def monic(self) -> ProjectedOp:
        return ProjectedOp(self.poly.monic(), self.axis)

    def __mul__(self, other: ProjectedOp) -> ProjectedOp:
        if not isinstance(other, ProjectedOp):
            return NotImplemented
        if other.axis != self.axis:
            raise ValueError("projections along different axes")
        return ProjectedOp(self.poly * other.poly, self.axis)

    def __eq__(self, other):
        if not isinstance(other, ProjectedOp):
            return NotImplemented
        return self.axis == other.axis and self.poly == other.poly

    def __str__(self):
        return str(self.poly)


def project(op: DiffOp, axis: str) -> ProjectedOp:
    """Regroup a_ij Dx^i Dy^j as (a_ij Dy^j) o Dx^i (axis x), or mirrored.

    Multiplicative: project(a o b) = project(a) o project(b) computed in
    the fraction-coefficient ring.
    """
    outer = projected_ring(op.field, axis)
    fring = outer.coefficients.ring
    inner = fring.inner
    if axis == "x":
        outer_deg = max((i for i, _ in op.terms), default=0)
    else:
        outer_deg = max((j for _, j in op.terms), default=0)
    coeffs = []
    for k in range(outer_deg + 1):
        inner_terms: dict[int, object] = {}
        for (i, j), c in op.terms.items():
            o, n = (i, j) if axis == "x" else (j, i)
            if o == k:
                inner_terms[n] = c
        if inner_terms:
            d = max(inner_terms)
            poly = inner.poly([inner_terms.get(t, op.field.zero)
                               for t in range(d + 1)])
            coeffs.append(fring.embed(poly))
        else:
            coeffs.append(fring.zero)
    return ProjectedOp(outer.poly(coeffs), axis)


def ideal_coordinates(generators, axis: str) -> ProjectedOp:
    """Monic right GCD of the projections of the generators."""
    gens = list(generators)
    if not gens:
        raise ValueError("no generators")
    projs = [project(g, axis).poly for g in gens]
    return ProjectedOp(_reduce(rgcd, projs).monic(), axis)
