"""Univariate skew polynomials over a coefficient field with a derivation.

The ring K[D; delta] has the commutation rule D o a = a*D + delta(a).
Both sides of the artifact use it: ordinary differential operators take
K = Q(x,y) with delta a partial derivative, and the projected rings take
K = Ore fractions with the induced derivation.  Division, extended
Euclid, right GCDs and left LCMs work verbatim for any coefficient field
exposing ``zero``, ``one`` and ``derive``; coefficients themselves must
support the arithmetic operators and ``is_zero``.
"""

from __future__ import annotations

from math import comb, inf

from .scalars import DiffField, RatFunc


class ScalarCoefficients:
    """Rational functions over a differential field, derivation d/dx or d/dy."""

    def __init__(self, field: DiffField, direction: str):
        if direction not in ("x", "y"):
            raise ValueError("direction must be 'x' or 'y'")
        self.field = field
        self.direction = direction
        self.zero = field.zero
        self.one = field.one
        self.commutative = True

    def derive(self, c: RatFunc) -> RatFunc:
        return self.field.derive(c, self.direction)

    def __eq__(self, other):
        return (isinstance(other, ScalarCoefficients)
                and other.field is self.field
                and other.direction == self.direction)

    __hash__ = None

    def __repr__(self):
        return f"ScalarCoefficients(d/d{self.direction})"


class SkewRing:
    """K[D; delta] for a given coefficient field adapter."""

    def __init__(self, coefficients, symbol: str = "D"):
        self.coefficients = coefficients
        self.symbol = symbol

    def poly(self, coeffs) -> SkewPoly:
        return SkewPoly(self, list(coeffs))

    @property
    def zero(self) -> SkewPoly:
        return SkewPoly(self, [])

    @property
    def one(self) -> SkewPoly:
        return SkewPoly(self, [self.coefficients.one])

    @property
    def gen(self) -> SkewPoly:
        return SkewPoly(self, [self.coefficients.zero, self.coefficients.one])

    def constant(self, c) -> SkewPoly:
        return SkewPoly(self, [c])

    def __eq__(self, other):
        return isinstance(other, SkewRing) and other.coefficients == self.coefficients

    __hash__ = None

    def __repr__(self):
        return f"SkewRing({self.symbol}; {self.coefficients!r})"


class SkewPoly:
    """Element of K[D; delta]; coefficient list runs from degree 0 up."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: SkewRing, coeffs: list):
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.ring = ring
        self.coeffs = coeffs

    @property
    def degree(self):
        """Degree in D; -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else -inf

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading_coeff(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.ring.coefficients.zero

    def _check(self, other) -> SkewPoly:
        if not isinstance(other, SkewPoly):
            return NotImplemented
        if other.ring != self.ring:
            raise ValueError("skew polynomials from different rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPoly(self.ring,
                        [self.coeff(k) + other.coeff(k) for k in range(n)])

    def __neg__(self):
        return SkewPoly(self.ring, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPoly(self.ring,
                        [self.coeff(k) - other.coeff(k) for k in range(n)])

    def __mul__(self, other):
        """Composition: (a o b) using D^i o c = sum C(i,s) delta^(i-s)(c) D^s."""
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        ring = self.ring
        if self.is_zero() or other.is_zero():
            return ring.zero
        da, db = len(self.coeffs) - 1, len(other.coeffs) - 1
        out = [ring.coefficients.zero] * (da + db + 1)
        # delta-power table of the right coefficients, built incrementally
        dtab = [list(other.coeffs)]
        for _ in range(da):
            dtab.append([ring.coefficients.derive(c) for c in dtab[-1]])
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for k, b in enumerate(other.coeffs):
                for s in range(i + 1):
                    d = dtab[i - s][k]
                    if d.is_zero():
                        continue
                    n = comb(i, s)
                    term = a * d
                    if n != 1:
                        term = term * n
                    out[s + k] = out[s + k] + term
        return SkewPoly(ring, out)

    def scale_left(self, c) -> SkewPoly:
        """Compose the multiplication-by-c operator on the left: plain scaling."""
        if c.is_zero():
            return self.ring.zero
        return SkewPoly(self.ring, [c * q for q in self.coeffs])

    def monic(self) -> SkewPoly:
        if self.is_zero():
            return self
        lc = self.leading_coeff()
        one = self.ring.coefficients.one
        if lc == one:
            return self
        return self.scale_left(one / lc)

    def map_coeffs(self, fn) -> SkewPoly:
        return SkewPoly(self.ring, [fn(c) for c in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, SkewPoly):
            return NotImplemented
        if other.ring != self.ring:
            raise ValueError("skew polynomials from different rings")
        return self.coeffs == other.coeffs

    __hash__ = None

    # -- division -----------------------------------------------------------

    def right_divmod(self, b: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
        """q, r with self = q o b + r and deg r < deg b."""
        b = self._check(b)
        if b.is_zero():
            raise ZeroDivisionError("skew division by zero")
        ring = self.ring
        q = ring.zero
        r = self
        lb = b.leading_coeff()
        while not r.is_zero() and r.degree >= b.degree:
            t = r.degree - b.degree
            c = r.leading_coeff() / lb
            mono = SkewPoly(ring, [ring.coefficients.zero] * t + [c])
            q = q + mono
            r = r - mono * b
        return q, r

    def left_divmod(self, b: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
        """q, r with self = b o q + r and deg r < deg b."""
        b = self._check(b)
        if b.is_zero():
            raise ZeroDivisionError("skew division by zero")
        ring = self.ring
        q = ring.zero
        r = self
        lb = b.leading_coeff()
        while not r.is_zero() and r.degree >= b.degree:
            t = r.degree - b.degree
            c = r.leading_coeff() / lb
            mono = SkewPoly(ring, [ring.coefficients.zero] * t + [c])
            q = q + mono
            r = r - b * mono
        return q, r

    def __str__(self):
        if not self.coeffs:
            return "0"
        sym = self.ring.symbol
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            mono = "" if k == 0 else (sym if k == 1 else f"{sym}^{k}")
            parts.append(_term_text(c, mono, first=not parts))
        return "".join(parts)

    def __repr__(self):
        return f"SkewPoly({self})"


def _atomic(s: str) -> bool:
    return " " not in s and "+" not in s and "-" not in s


def _term_text(c, mono: str, first: bool) -> str:
    s = str(c)
    neg = s.startswith("-") and _atomic(s[1:])
    if neg:
        s = s[1:]
    if mono:
        if s == "1":
            body = mono
        else:
            body = f"{s if _atomic(s) else f'({s})'}*{mono}"
    else:
        body = s
    if first:
        return f"-{body}" if neg else body
    return f" - {body}" if neg else f" + {body}"


# -- Euclidean machinery -----------------------------------------------------


def right_divide(a: SkewPoly, b: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
    return a.right_divmod(b)


def left_divide(a: SkewPoly, b: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
    return a.left_divmod(b)


def _euclid(a: SkewPoly, b: SkewPoly):
    """Extended right Euclid with monic remainders to curb growth.

    Returns (g, u0, v0, u1, v1) with g = u0 o a + v0 o b the last nonzero
    remainder and u1 o a + v1 o b = 0 the first vanishing combination.
    """
    ring = a.ring
    one = ring.coefficients.one
    r0, r1 = a, b
    u0, v0 = ring.one, ring.zero
    u1, v1 = ring.zero, ring.one
    while not r1.is_zero():
        q, r2 = r0.right_divmod(r1)
        u2 = u0 - q * u1
        v2 = v0 - q * v1
        if not r2.is_zero():
            lc = r2.leading_coeff()
            if lc != one:
                s = one / lc
                r2 = r2.scale_left(s)
                u2 = u2.scale_left(s)
                v2 = v2.scale_left(s)
        r0, r1 = r1, r2
        u0, u1 = u1, u2
        v0, v1 = v1, v2
    return r0, u0, v0, u1, v1


def rgcd_extended(a: SkewPoly, b: SkewPoly):
    """Monic right GCD g with cofactors u, v such that g = u o a + v o b."""
    ring = a.ring
    g, u0, v0, _, _ = _euclid(a, b)
    if g.is_zero():
        raise ValueError("rgcd of two zero polynomials")
    lc = g.leading_coeff()
    one = ring.coefficients.one
    if lc != one:
        s = one / lc
        g = g.scale_left(s)
        u0 = u0.scale_left(s)
        v0 = v0.scale_left(s)
    assert u0 * a + v0 * b == g
    return g, u0, v0


def rgcd(a: SkewPoly, b: SkewPoly) -> SkewPoly:
    """Monic greatest common right divisor."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    return rgcd_extended(a, b)[0]


def llcm_cofactors(a: SkewPoly, b: SkewPoly):
    """Monic least common left multiple m with m = u o a = v o b."""
    if a.is_zero() or b.is_zero():
        raise ValueError("llcm requires nonzero polynomials")
    ring = a.ring
    _, _, _, u1, v1 = _euclid(a, b)
    # u1 o a + v1 o b = 0, so u1 o a = (-v1) o b is the minimal left multiple
    m = u1 * a
    lc = m.leading_coeff()
    one = ring.coefficients.one
    if lc != one:
        s = one / lc
        m = m.scale_left(s)
        u1 = u1.scale_left(s)
        v1 = v1.scale_left(s)
    v = -v1
    assert v * b == m
    return m, u1, v


def llcm(a: SkewPoly, b: SkewPoly) -> SkewPoly:
    return llcm_cofactors(a, b)[0]


def modular_check(a: SkewPoly, b: SkewPoly, c: SkewPoly) -> bool:
    """Dedekind's modular law on the principal-ideal lattice.

    Under the divisibility ordering, ideal sum is the right GCD of the
    generators and ideal intersection is the left LCM; the law states
    rgcd(llcm(rgcd(a,c), b), c) = llcm(rgcd(a,c), rgcd(b,c)).
    """
    ac = rgcd(a, c)
    lhs = rgcd(llcm(ac, b), c)
    rhs = llcm(ac, rgcd(b, c))
    return lhs == rhs


def skew_adjoint(p: SkewPoly) -> SkewPoly:
    """Formal adjoint sum (-1)^k D^k o c_k; coefficients must commute."""
    if not getattr(p.ring.coefficients, "commutative", False):
        raise ValueError("adjoint needs a commutative coefficient field")
    ring = p.ring
    out = ring.zero
    for k, c in enumerate(p.coeffs):
        if c.is_zero():
            continue
        mono = SkewPoly(ring, [ring.coefficients.zero] * k + [ring.coefficients.one])
        term = mono * ring.constant(c)
        if k % 2:
            term = -term
        out = out + term
    return out


def from_diffop(op, direction: str) -> SkewPoly:
    """View a pure-Dx or pure-Dy operator as a skew polynomial."""
    ring = SkewRing(ScalarCoefficients(op.field, direction),
                    symbol="Dx" if direction == "x" else "Dy")
    return ring.poly(op.univariate_coeffs(direction))


def to_diffop(p: SkewPoly, field: DiffField):
    """Embed a scalar-coefficient skew polynomial back into the LPDO ring."""
    from .operators import DiffOp

    direction = p.ring.coefficients.direction
    terms = {}
    for k, c in enumerate(p.coeffs):
        if not c.is_zero():
            terms[(k, 0) if direction == "x" else (0, k)] = c
    return DiffOp(field, terms)
