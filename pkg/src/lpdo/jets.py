"""Jet-space differential fields for equations u_xy = f(x, y, u, u_x, u_y).

The field carries x, y and the non-mixed jet coordinates u, u_x, u_xx,
..., u_y, u_yy, ...; mixed derivatives never become generators because
the equation rewrites them: D_y applied to the m-th pure-x coordinate is
D_x^(m-1)(f), computed on demand and memoized.  Higher coordinates
appear lazily as total derivatives request them, up to a hard cap.

Non-rational nonlinearities enter through declared extension markers: a
generator E with a stated partial dE/du (for example E standing for
exp(u) with dE/du = E) whose total derivatives are du*u_x and du*u_y.
Such markers keep every computation inside exact rational functions.
The same declared partial feeds the linearization chain rule, which is a
convention of this implementation: f may mention u both directly and
through markers, and the declared rule decides how the marker responds
to a variation of u.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .laplace import DarbouxResult, HyperbolicOp, darboux_linear
from .scalars import DerivationDepthError, DiffField, RatFunc, UnknownGeneratorError

_X_NAME = "u_x"
_Y_NAME = "u_y"


def jet_name(m: int, n: int) -> str:
    """Name of the pure jet coordinate with m x-derivatives or n y's."""
    if m and n:
        raise ValueError("mixed jet coordinates are never generators")
    if m == 0 and n == 0:
        return "u"
    return "u_" + ("x" * m or "y" * n)


@dataclass(frozen=True)
class ExtensionSpec:
    """A marker generator with its declared partial with respect to u."""

    name: str
    du: Callable[["JetField"], RatFunc]


def exponential(name: str, scale=1) -> ExtensionSpec:
    """Marker for exp(scale*u): dE/du = scale*E."""
    return ExtensionSpec(name, lambda fld: fld.constant(scale) * fld.gen(name))


class JetField(DiffField):
    """Differential field of jet coordinates reduced by u_xy = f."""

    def __init__(self, max_order: int = 12):
        super().__init__()
        self.max_order = max_order
        self.equation: Optional[RatFunc] = None
        self.extensions: dict[str, RatFunc] = {}
        self._x_order = 1
        self._y_order = 1
        self._mixed_x: dict[int, RatFunc] = {}
        self._mixed_y: dict[int, RatFunc] = {}
        self.add_generator("x")
        self.add_generator("y")
        self.set_derivatives("x", self.one, self.zero)
        self.set_derivatives("y", self.zero, self.one)
        self.add_generator("u")
        self.add_generator(_X_NAME)
        self.add_generator(_Y_NAME)

    # -- construction -----------------------------------------------------

    def add_extension(self, spec: ExtensionSpec) -> RatFunc:
        gen = self.add_generator(spec.name)
        du = spec.du(self)
        self.extensions[spec.name] = du
        self.set_derivatives(spec.name, du * self.gen(_X_NAME),
                             du * self.gen(_Y_NAME))
        return gen

    def set_equation(self, f: RatFunc) -> None:
        if f.field is not self:
            raise UnknownGeneratorError("equation must live in this jet field")
        allowed = {"x", "y", "u", _X_NAME, _Y_NAME} | set(self.extensions)
        for i in f.num.var_indices() | f.den.var_indices():
            name = self.generators[i]
            if name not in allowed:
                raise ValueError(
                    f"right-hand side mentions jet coordinate {name!r} of order >= 2")
        self.equation = f
        self._mixed_x.clear()
        self._mixed_y.clear()

    # -- lazy jet coordinates ----------------------------------------------

    def _ensure_jet(self, m: int, n: int) -> str:
        name = jet_name(m, n)
        order = max(m, n)
        if order > self.max_order:
            raise DerivationDepthError(
                f"jet coordinate of order {order} exceeds the cap {self.max_order}")
        if m > self._x_order:
            for k in range(self._x_order + 1, m + 1):
                self.add_generator(jet_name(k, 0))
            self._x_order = m
        if n > self._y_order:
            for k in range(self._y_order + 1, n + 1):
                self.add_generator(jet_name(0, k))
            self._y_order = n
        return name

    def _reduce_mixed(self, m: int, direction_of_pure: str) -> RatFunc:
        """D_y of the m-th x-coordinate (or mirrored): D_x^(m-1)(f)."""
        if self.equation is None:
            raise UnknownGeneratorError(
                "no equation set: mixed derivatives cannot be reduced")
        memo = self._mixed_x if direction_of_pure == "x" else self._mixed_y
        got = memo.get(m)
        if got is None:
            if m == 1:
                got = self.equation
            else:
                prev = self._reduce_mixed(m - 1, direction_of_pure)
                got = self.derive(prev, direction_of_pure)
            memo[m] = got
        return got

    def generator_derivative(self, name: str, direction: str) -> RatFunc:
        if name == "u":
            return self.gen(_X_NAME if direction == "x" else _Y_NAME)
        if name.startswith("u_"):
            suffix = name[2:]
            if suffix and set(suffix) == {"x"}:
                m = len(suffix)
                if direction == "x":
                    return self.gen(self._ensure_jet(m + 1, 0))
                return self._reduce_mixed(m, "x")
            if suffix and set(suffix) == {"y"}:
                n = len(suffix)
                if direction == "y":
                    return self.gen(self._ensure_jet(0, n + 1))
                return self._reduce_mixed(n, "y")
        return super().generator_derivative(name, direction)


@dataclass(frozen=True)
class Pde:
    """u_xy = f with f over the jet field carrying it."""

    field: JetField
    f: RatFunc
    name: str = ""


def make_pde(f: Callable[[JetField], RatFunc],
             extensions: Sequence[ExtensionSpec] = (),
             name: str = "",
             max_order: int = 12) -> Pde:
    """Build a jet field, declare the markers, then install the equation."""
    field = JetField(max_order=max_order)
    for spec in extensions:
        field.add_extension(spec)
    rhs = f(field)
    if not isinstance(rhs, RatFunc):
        rhs = field.constant(rhs)
    field.set_equation(rhs)
    return Pde(field, rhs, name)


def total_derivative(value: RatFunc, direction: str) -> RatFunc:
    """Total derivative in the jet field, mixed terms reduced by the equation."""
    return value.field.derive(value, direction)


def linearize(pde: Pde) -> HyperbolicOp:
    """Variational linearization: v_xy = A v_x + B v_y + C v.

    A and B are the formal partials of f by u_x and u_y; C collects the
    partial by u plus every marker's declared chain-rule contribution.
    """
    field = pde.field
    f = pde.f
    field.set_equation(f)  # re-validates the first-order-jet constraint
    a = f.formal_partial(_X_NAME)
    b = f.formal_partial(_Y_NAME)
    c = f.formal_partial("u")
    for name, du in field.extensions.items():
        pf = f.formal_partial(name)
        if not pf.is_zero():
            c = c + pf * du
    return HyperbolicOp(field, a, b, c)


def darboux_check(pde: Pde, bound: int, cross_check: bool = False) -> DarbouxResult:
    """Laplace cascades of the linearized equation, run in the jet field."""
    return darboux_linear(linearize(pde), bound, cross_check)
