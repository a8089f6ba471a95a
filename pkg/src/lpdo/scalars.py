"""Exact scalar arithmetic for differential algebra.

Sparse multivariate polynomials over Q, canonical rational functions, and
differential fields: an ordered set of named generators together with
tables assigning every generator its derivative along the two base
directions x and y.  All values are immutable after construction and all
operations are pure, so they are safe to share between threads.

Canonical form of a rational function: numerator and denominator coprime,
denominator monic under the graded lexicographic monomial order, zero
stored as 0/1.  Equality of canonical forms coincides with mathematical
equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

Monomial = tuple[int, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class FieldMismatchError(ValueError):
    """Two values from distinct differential fields were combined."""


class UnknownGeneratorError(ValueError):
    """A generator name is not declared in the field."""


class CommutationError(ValueError):
    """The derivation tables of a field do not commute."""


class DerivationDepthError(RuntimeError):
    """A derivation required more auxiliary generators than the field allows."""


def _trim(mono: Iterable[int]) -> Monomial:
    m = tuple(mono)
    while m and m[-1] == 0:
        m = m[:-1]
    return m


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return a
    return tuple(x + y for x, y in zip(a, b)) + a[len(b):]


def _mono_div(a: Monomial, b: Monomial) -> Monomial | None:
    if len(b) > len(a):
        return None
    out = list(a)
    for i, e in enumerate(b):
        out[i] -= e
        if out[i] < 0:
            return None
    return _trim(out)


def grlex_key(m: Monomial) -> tuple[int, Monomial]:
    return (sum(m), m)


class Poly:
    """Sparse multivariate polynomial with exact rational coefficients.

    ``terms`` maps an exponent tuple (trailing zeros trimmed) to a nonzero
    Fraction.  Exponent positions refer to the generator order of the
    owning field; the class itself carries no generator names.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction]):
        out: dict[Monomial, Fraction] = {}
        for m, c in terms.items():
            if not c:
                continue
            if m and m[-1] == 0:
                m = _trim(m)
                c = c + out.get(m, _ZERO)
                if not c:
                    out.pop(m, None)
                    continue
            out[m] = c
        self.terms = out

    @staticmethod
    def zero() -> Poly:
        return Poly({})

    @staticmethod
    def constant(c) -> Poly:
        c = Fraction(c)
        return Poly({(): c} if c else {})

    @staticmethod
    def gen(index: int) -> Poly:
        return Poly({_trim([0] * index + [1]): _ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(): _ONE}

    def is_constant(self) -> bool:
        return not self.terms or self.terms.keys() == {()}

    def constant_value(self) -> Fraction:
        return self.terms.get((), _ZERO)

    @property
    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def leading_monomial(self) -> Monomial:
        return max(self.terms, key=grlex_key)

    def leading_coeff(self) -> Fraction:
        return self.terms[self.leading_monomial()] if self.terms else _ZERO

    def var_indices(self) -> set[int]:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self) -> Poly:
        return Poly({m: -c for m, c in self.terms.items()})

    def __add__(self, other: Poly) -> Poly:
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, _ZERO) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(out)

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        if not self.terms or not other.terms:
            return Poly({})
        if len(self.terms) * len(other.terms) <= 4:
            out: dict[Monomial, Fraction] = {}
            for ma, ca in self.terms.items():
                for mb, cb in other.terms.items():
                    m = _mono_mul(ma, mb)
                    s = out.get(m, _ZERO) + ca * cb
                    if s:
                        out[m] = s
                    else:
                        del out[m]
            return Poly(out)
        # larger products: integer cores over a common denominator beat
        # per-term Fraction normalization by a wide margin
        na, da = self._int_terms()
        nb, db = other._int_terms()
        den = da * db
        iout: dict[Monomial, int] = {}
        for ma, ca in na.items():
            for mb, cb in nb.items():
                m = _mono_mul(ma, mb)
                s = iout.get(m, 0) + ca * cb
                if s:
                    iout[m] = s
                else:
                    del iout[m]
        return Poly({m: Fraction(c, den) for m, c in iout.items()})

    def _int_terms(self) -> tuple[dict[Monomial, int], int]:
        den = 1
        for c in self.terms.values():
            d = c.denominator
            if d != 1:
                den = den * d // _int_gcd(den, d)
        return ({m: c.numerator * (den // c.denominator)
                 for m, c in self.terms.items()}, den)

    def scale(self, c: Fraction) -> Poly:
        if not c:
            return Poly({})
        return Poly({m: q * c for m, q in self.terms.items()})

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative polynomial power")
        out = Poly.constant(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def partial(self, index: int) -> Poly:
        """Formal partial derivative with respect to generator ``index``."""
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            if index < len(m) and m[index]:
                e = m[index]
                dm = list(m)
                dm[index] = e - 1
                key = _trim(dm)
                s = out.get(key, _ZERO) + c * e
                if s:
                    out[key] = s
                else:
                    del out[key]
        return Poly(out)

    def monic(self) -> Poly:
        lc = self.leading_coeff()
        if not lc or lc == 1:
            return self
        return self.scale(1 / lc)

    def __repr__(self):
        return f"Poly({self.terms!r})"


class ExactDivisionError(ArithmeticError):
    """Internal: a division expected to be exact left a remainder."""


def poly_divexact(a: Poly, b: Poly) -> Poly:
    """Exact quotient a/b; raises ExactDivisionError on remainder."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if a.is_zero():
        return Poly({})
    if b.is_one():
        return a
    if b.is_constant():
        return a.scale(1 / b.constant_value())
    lmb = b.leading_monomial()
    lcb = b.terms[lmb]
    q: dict[Monomial, Fraction] = {}
    r = a
    while not r.is_zero():
        lm = r.leading_monomial()
        t = _mono_div(lm, lmb)
        if t is None:
            raise ExactDivisionError("inexact polynomial division")
        c = r.terms[lm] / lcb
        q[t] = c
        r = r - Poly({t: c}) * b
    return Poly(q)


def _mono_content(p: Poly) -> Monomial:
    """Componentwise minimum exponent over all terms."""
    n = min(len(m) for m in p.terms)
    return _trim(min(m[i] for m in p.terms) for i in range(n))


def _to_dense(p: Poly, v: int) -> list[Poly]:
    """Coefficients of p as a polynomial in generator v, low to high."""
    deg = max((m[v] if v < len(m) else 0) for m in p.terms)
    coeffs: list[dict[Monomial, Fraction]] = [{} for _ in range(deg + 1)]
    for m, c in p.terms.items():
        e = m[v] if v < len(m) else 0
        rest = list(m)
        if v < len(rest):
            rest[v] = 0
        coeffs[e][_trim(rest)] = c
    return [Poly(t) for t in coeffs]


def _from_dense(coeffs: list[Poly], v: int) -> Poly:
    out: dict[Monomial, Fraction] = {}
    for e, p in enumerate(coeffs):
        for m, c in p.terms.items():
            mm = list(m) + [0] * (v + 1 - len(m))
            mm[v] += e
            out[_trim(mm)] = c
    return Poly(out)


def _dense_deg(coeffs: list[Poly]) -> int:
    d = len(coeffs) - 1
    while d >= 0 and coeffs[d].is_zero():
        d -= 1
    return d


def _prem(f: list[Poly], g: list[Poly]) -> list[Poly]:
    """Pseudo-remainder of dense polynomials over the coefficient ring."""
    df, dg = _dense_deg(f), _dense_deg(g)
    lcg = g[dg]
    r = list(f)
    dr = df
    while dr >= dg:
        lr = r[dr]
        r = [c * lcg for c in r]
        shift = dr - dg
        for i in range(dg + 1):
            r[shift + i] = r[shift + i] - lr * g[i]
        nd = _dense_deg(r[:dr + 1])
        r = r[: max(nd + 1, 1)]
        dr = _dense_deg(r)
        if dr < 0:
            return []
    return r[: dr + 1]


def _content(coeffs: list[Poly]) -> Poly:
    g = Poly({})
    for c in coeffs:
        if c.is_zero():
            continue
        g = poly_gcd(g, c)
        if g.is_one():
            return g
    return g


def _gcd_univariate(a: Poly, b: Poly, v: int) -> Poly:
    f = [p.constant_value() for p in _to_dense(a, v)]
    g = [p.constant_value() for p in _to_dense(b, v)]

    def deg(c):
        d = len(c) - 1
        while d >= 0 and not c[d]:
            d -= 1
        return d

    while deg(g) >= 0:
        dg = deg(g)
        if deg(f) < dg:
            f, g = g, f
            continue
        r = list(f)
        while deg(r) >= dg:
            dr = deg(r)
            c = r[dr] / g[dg]
            for i in range(dg + 1):
                r[dr - dg + i] -= c * g[i]
            del r[dr:]
        f, g = g, r
    d = deg(f)
    return _from_dense([Poly.constant(c / f[d]) for c in f[: d + 1]], v)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """GCD in Q[generators], normalized monic under grlex.

    Monomial content is stripped first.  The core tries the evaluation
    heuristic (big-integer substitution, digit reconstruction, division
    check) and falls back to a primitive pseudo-remainder sequence.
    """
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_constant() or b.is_constant():
        return Poly.constant(1)
    if a == b:
        return a.monic()
    ma, mb = _mono_content(a), _mono_content(b)
    common = _trim(min(x, y) for x, y in zip(
        list(ma) + [0] * (len(mb) - len(ma)),
        list(mb) + [0] * (len(ma) - len(mb)),
    ))
    if ma != ():
        a = poly_divexact(a, Poly({ma: _ONE}))
    if mb != ():
        b = poly_divexact(b, Poly({mb: _ONE}))
    core = _gcd_heuristic(a, b)
    if core is None:
        core = _gcd_core(a, b)
    if common:
        core = Poly({common: _ONE}) * core
    return core.monic()


# -- heuristic GCD ------------------------------------------------------------


def _int_poly(p: Poly) -> dict[Monomial, int]:
    """Scale to integer coefficients (content is irrelevant for the gcd)."""
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // _int_gcd(den, c.denominator)
    return {m: int(c * den) for m, c in p.terms.items()}


def _int_gcd(a: int, b: int) -> int:
    from math import gcd
    return gcd(a, b)


def _ieval(p: dict[Monomial, int], v: int, xi: int) -> dict[Monomial, int]:
    out: dict[Monomial, int] = {}
    for m, c in p.items():
        e = m[v] if v < len(m) else 0
        rest = list(m)
        if v < len(rest):
            rest[v] = 0
        key = _trim(rest)
        out[key] = out.get(key, 0) + c * xi ** e
    return {m: c for m, c in out.items() if c}


def _iinterp(h: dict[Monomial, int], v: int, xi: int) -> dict[Monomial, int]:
    """Read base-xi digits (balanced) back off as powers of generator v."""
    out: dict[Monomial, int] = {}
    cur = dict(h)
    e = 0
    while cur:
        nxt: dict[Monomial, int] = {}
        for m, c in cur.items():
            r = c % xi
            if r > xi // 2:
                r -= xi
            if r:
                mm = list(m) + [0] * (v + 1 - len(m))
                mm[v] += e
                out[_trim(mm)] = r
            q = (c - r) // xi
            if q:
                nxt[m] = q
        cur = nxt
        e += 1
        if e > 2000:
            return {}
    return out


def _icontent(p: dict[Monomial, int]) -> int:
    g = 0
    for c in p.values():
        g = _int_gcd(g, c)
        if g == 1:
            break
    return g or 1


def _idivexact(a: dict[Monomial, int], b: dict[Monomial, int]):
    """Exact integer-poly division or None.

    Trial division against a non-divisor can swell instead of failing
    fast, so the loop gives up once it clearly exceeds what any exact
    quotient of these operands could need.
    """
    if not a:
        return {}
    lmb = max(b, key=grlex_key)
    lcb = b[lmb]
    max_steps = 16 * (len(a) + len(b)) + 200
    max_terms = 16 * (len(a) + len(b)) + 400
    max_bits = 8 * max(c.bit_length() for c in list(a.values()) + list(b.values())) + 256
    q: dict[Monomial, int] = {}
    r = dict(a)
    steps = 0
    while r:
        steps += 1
        if steps > max_steps or len(r) > max_terms:
            return None
        lm = max(r, key=grlex_key)
        if r[lm].bit_length() > max_bits:
            return None
        t = _mono_div(lm, lmb)
        if t is None:
            return None
        c, rem = divmod(r[lm], lcb)
        if rem:
            return None
        q[t] = c
        for m, bc in b.items():
            key = _mono_mul(t, m)
            s = r.get(key, 0) - c * bc
            if s:
                r[key] = s
            else:
                r.pop(key, None)
    return q


def _gcd_heuristic(a: Poly, b: Poly) -> Poly | None:
    """Evaluation-reconstruction gcd; None when the candidates never verify.

    At every level the integer ground content of both inputs is pulled
    out, the primitive parts are evaluated at a large integer, and the
    recursive gcd is read back off the base-xi digits.  The content gcd
    multiplies back in: the digit stream of an outer variable lives in
    exactly that content when the gcd does not involve the inner ones.
    A candidate is accepted only after exact division into both inputs,
    so a verified result is always a true common divisor; maximality
    failures surface as verification failures and end in fallback.
    """
    fa, fb = _int_poly(a), _int_poly(b)
    nvars = max((len(m) for m in list(fa) + list(fb)), default=0)

    def rec(f: dict[Monomial, int], g: dict[Monomial, int], vars_left: list[int]):
        if not vars_left:
            return {(): _int_gcd(f.get((), 0), g.get((), 0))}
        cf, cg = _icontent(f), _icontent(g)
        c = _int_gcd(cf, cg)
        if cf != 1:
            f = {m: q // cf for m, q in f.items()}
        if cg != 1:
            g = {m: q // cg for m, q in g.items()}
        v = vars_left[-1]
        if all((v >= len(m) or m[v] == 0) for m in f) and \
           all((v >= len(m) or m[v] == 0) for m in g):
            h = rec(f, g, vars_left[:-1])
            if h is None:
                return None
            return {m: c * q for m, q in h.items()} if c != 1 else h
        maxn = max(max(abs(q) for q in f.values()),
                   max(abs(q) for q in g.values()))
        xi = 2 * maxn + 29
        for _ in range(5):
            fe = _ieval(f, v, xi)
            ge = _ieval(g, v, xi)
            if fe and ge:
                h = rec(fe, ge, vars_left[:-1])
                if h is not None and h:
                    cand = _iinterp(h, v, xi)
                    if cand:
                        cc = _icontent(cand)
                        if cc != 1:
                            cand = {m: q // cc for m, q in cand.items()}
                        if _idivexact(f, cand) is not None and \
                           _idivexact(g, cand) is not None:
                            return {m: c * q for m, q in cand.items()} \
                                if c != 1 else cand
            xi = xi * 73794 // 27011 + 17
        return None

    got = rec(fa, fb, list(range(nvars)))
    if got is None:
        return None
    return Poly({m: Fraction(c) for m, c in got.items()})


def _gcd_core(a: Poly, b: Poly) -> Poly:
    vars_ab = a.var_indices() | b.var_indices()
    if not vars_ab:
        return Poly.constant(1)
    if len(vars_ab) == 1:
        return _gcd_univariate(a, b, next(iter(vars_ab)))
    v = max(vars_ab)
    fa, fb = _to_dense(a, v), _to_dense(b, v)
    ca, cb = _content(fa), _content(fb)
    fa = [poly_divexact(c, ca) if not c.is_zero() else c for c in fa]
    fb = [poly_divexact(c, cb) if not c.is_zero() else c for c in fb]
    if _dense_deg(fa) < _dense_deg(fb):
        fa, fb = fb, fa
    f, g = fa, fb
    while True:
        r = _prem(f, g)
        if _dense_deg(r) < 0:
            pp = g
            break
        if _dense_deg(r) == 0:
            return poly_gcd(ca, cb)
        cr = _content(r)
        f, g = g, [poly_divexact(c, cr) if not c.is_zero() else c for c in r]
    cpp = _content(pp)
    pp = [poly_divexact(c, cpp) if not c.is_zero() else c for c in pp]
    return poly_gcd(ca, cb) * _from_dense(pp, v)


def format_poly(p: Poly, names: list[str]) -> str:
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for m in sorted(p.terms, key=grlex_key, reverse=True):
        c = p.terms[m]
        factors = []
        for i, e in enumerate(m):
            if e == 1:
                factors.append(names[i])
            elif e > 1:
                factors.append(f"{names[i]}^{e}")
        if not factors:
            body = str(abs(c))
        else:
            mono = "*".join(factors)
            body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(parts)


class RatFunc:
    """Rational function over a differential field, kept in canonical form."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: DiffField, num: Poly, den: Poly | None = None,
                 _canonical: bool = False):
        if den is None:
            den = Poly.constant(1)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _canonical:
            num, den = _reduce(num, den)
        self.field = field
        self.num = num
        self.den = den

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_one()

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other) -> RatFunc:
        if isinstance(other, RatFunc):
            if other.field is not self.field:
                raise FieldMismatchError(
                    "cannot combine rational functions from different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.constant(other)
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
            return RatFunc(self.field, self.num + other.num, self.den)
        g = poly_gcd(self.den, other.den)
        if g.is_one():
            num = self.num * other.den + other.num * self.den
            den = self.den * other.den
            return RatFunc(self.field, *_monic_pair(num, den), _canonical=True)
        da = poly_divexact(self.den, g)
        db = poly_divexact(other.den, g)
        num = self.num * db + other.num * da
        g2 = poly_gcd(num, g)
        den = da * db * g
        if not g2.is_one():
            num = poly_divexact(num, g2)
            den = poly_divexact(den, g2)
        return RatFunc(self.field, *_monic_pair(num, den), _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.field, -self.num, self.den, _canonical=True)

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
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.field.zero
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        na = self.num if g1.is_one() else poly_divexact(self.num, g1)
        db = other.den if g1.is_one() else poly_divexact(other.den, g1)
        nb = other.num if g2.is_one() else poly_divexact(other.num, g2)
        da = self.den if g2.is_one() else poly_divexact(self.den, g2)
        return RatFunc(self.field, *_monic_pair(na * nb, da * db),
                       _canonical=True)

    __rmul__ = __mul__

    def inv(self) -> RatFunc:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.field, *_monic_pair(self.den, self.num),
                       _canonical=True)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        out = self.field.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.constant(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if other.field is not self.field:
            raise FieldMismatchError(
                "cannot compare rational functions from different fields")
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((frozenset(self.num.terms.items()),
                     frozenset(self.den.terms.items())))

    # -- calculus ------------------------------------------------------

    def derive(self, direction: str) -> RatFunc:
        return self.field.derive(self, direction)

    def formal_partial(self, name: str) -> RatFunc:
        """Partial derivative treating every generator as independent."""
        i = self.field.index(name)
        dn = self.num.partial(i)
        dd = self.den.partial(i)
        if self.den.is_one():
            return RatFunc(self.field, dn)
        num = dn * self.den - self.num * dd
        return RatFunc(self.field, num, self.den * self.den)

    def substitute(self, target: DiffField, mapping: Mapping[str, RatFunc]) -> RatFunc:
        """Evaluate with every generator replaced per ``mapping``.

        The mapping must cover every generator that actually occurs; the
        result lives in ``target``.
        """
        images = {}
        for i in self.num.var_indices() | self.den.var_indices():
            name = self.field.generators[i]
            if name not in mapping:
                raise UnknownGeneratorError(f"no substitute given for {name!r}")
            images[i] = mapping[name]

        def eval_poly(p: Poly) -> RatFunc:
            acc = target.zero
            for m, c in p.terms.items():
                term = target.constant(c)
                for i, e in enumerate(m):
                    if e:
                        term = term * images[i] ** e
                acc = acc + term
            return acc

        return eval_poly(self.num) / eval_poly(self.den)

    def __str__(self):
        names = self.field.generators
        top = format_poly(self.num, names)
        if self.den.is_one():
            return top
        bot = format_poly(self.den, names)
        if len(self.num.terms) > 1:
            top = f"({top})"
        if len(self.den.terms) > 1:
            bot = f"({bot})"
        return f"{top}/{bot}"

    def __repr__(self):
        return f"RatFunc({self})"


def _monic_pair(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    lc = den.leading_coeff()
    if lc == 1:
        return num, den
    inv = 1 / lc
    return num.scale(inv), den.scale(inv)


def _reduce(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if num.is_zero():
        return num, Poly.constant(1)
    g = poly_gcd(num, den)
    if not g.is_one():
        num = poly_divexact(num, g)
        den = poly_divexact(den, g)
    return _monic_pair(num, den)


class DiffField:
    """A field of rational functions with two commuting derivations.

    Generators are ordered; each has a stored (or lazily computed)
    derivative along x and along y.  Values from distinct field instances
    never mix: combining them raises FieldMismatchError rather than
    coercing.
    """

    def __init__(self):
        self._gens: list[str] = []
        self._dx: dict[str, RatFunc | None] = {}
        self._dy: dict[str, RatFunc | None] = {}
        self._zero: RatFunc | None = None
        self._one: RatFunc | None = None

    @classmethod
    def standard(cls) -> DiffField:
        """Q(x, y) with D_x = d/dx and D_y = d/dy."""
        f = cls()
        f.add_generator("x")
        f.add_generator("y")
        f.set_derivatives("x", f.one, f.zero)
        f.set_derivatives("y", f.zero, f.one)
        return f

    # -- generator management -------------------------------------------

    @property
    def generators(self) -> list[str]:
        return self._gens

    def add_generator(self, name: str, dx: RatFunc | None = None,
                      dy: RatFunc | None = None) -> RatFunc:
        if name in self._dx:
            raise ValueError(f"generator {name!r} already declared")
        self._gens.append(name)
        self._dx[name] = dx
        self._dy[name] = dy
        return self.gen(name)

    def set_derivatives(self, name: str, dx: RatFunc, dy: RatFunc) -> None:
        if name not in self._dx:
            raise UnknownGeneratorError(name)
        self._dx[name] = dx
        self._dy[name] = dy

    def index(self, name: str) -> int:
        try:
            return self._gens.index(name)
        except ValueError:
            raise UnknownGeneratorError(
                f"generator {name!r} not declared in this field") from None

    def gen(self, name: str) -> RatFunc:
        return RatFunc(self, Poly.gen(self.index(name)), _canonical=True)

    def constant(self, value) -> RatFunc:
        return RatFunc(self, Poly.constant(value), _canonical=True)

    @property
    def zero(self) -> RatFunc:
        if self._zero is None:
            self._zero = self.constant(0)
        return self._zero

    @property
    def one(self) -> RatFunc:
        if self._one is None:
            self._one = self.constant(1)
        return self._one

    # -- derivation ------------------------------------------------------

    def generator_derivative(self, name: str, direction: str) -> RatFunc:
        table = self._dx if direction == "x" else self._dy
        d = table[name]
        if d is None:
            raise UnknownGeneratorError(
                f"derivative table for generator {name!r} was never set")
        return d

    def derive(self, value: RatFunc, direction: str) -> RatFunc:
        if direction not in ("x", "y"):
            raise ValueError(f"direction must be 'x' or 'y', got {direction!r}")
        if value.field is not self:
            raise FieldMismatchError("value does not belong to this field")
        dn = self._derive_poly(value.num, direction)
        if value.den.is_one():
            return dn
        dd = self._derive_poly(value.den, direction)
        den_rf = RatFunc(self, value.den, _canonical=True)
        num_rf = RatFunc(self, value.num, _canonical=True)
        return (dn * den_rf - num_rf * dd) / (den_rf * den_rf)

    def _derive_poly(self, p: Poly, direction: str) -> RatFunc:
        acc = self.zero
        for i in p.var_indices():
            d_gen = self.generator_derivative(self._gens[i], direction)
            if d_gen.is_zero():
                continue
            acc = acc + RatFunc(self, p.partial(i), _canonical=True) * d_gen
        return acc

    def check_commutation(self) -> None:
        """Verify D_x(D_y g) = D_y(D_x g) for every generator g."""
        for name in list(self._gens):
            gx = self.generator_derivative(name, "x")
            gy = self.generator_derivative(name, "y")
            if self.derive(gy, "x") != self.derive(gx, "y"):
                raise CommutationError(
                    f"derivations do not commute on generator {name!r}")

    def __repr__(self):
        return f"DiffField({', '.join(self._gens)})"
