"""Number fields Q[a]/(q) and their elements.

Degree-one fields are just Q; :meth:`NumberField.coerce` hands back plain
``Fraction`` objects there so the linear algebra downstream runs on the fast
path. Everything that consumes field elements only relies on ``+ - * /``
and comparison with zero, so both representations mix freely.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .unipoly import UniPoly, ext_gcd, format_rational


class NumberField:
    def __init__(self, minpoly: UniPoly, name: str = "a"):
        if minpoly.degree < 1:
            raise ValueError("minimal polynomial must have positive degree")
        self.minpoly = minpoly.monic()
        self.name = name

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(self.minpoly)

    def __repr__(self):
        return f"NumberField({self.minpoly.render(self.name)})"

    def gen(self):
        """The class of the indeterminate, i.e. a root of the minpoly."""
        if self.degree == 1:
            return -self.minpoly.coeffs[0]
        return AlgebraicScalar(self, UniPoly.x())

    def coerce(self, value):
        if isinstance(value, AlgebraicScalar):
            if value.field != self:
                raise ValueError("element of a different number field")
            if self.degree == 1:
                return value.rep.coeffs[0] if value.rep.coeffs else Fraction(0)
            return value
        if isinstance(value, UniPoly):
            if self.degree == 1:
                return Fraction(value(self.gen()))
            return AlgebraicScalar(self, value)
        value = Fraction(value)
        if self.degree == 1:
            return value
        return AlgebraicScalar(self, UniPoly.const(value))

    def scalar(self, value) -> "AlgebraicScalar":
        """Always return an AlgebraicScalar, even over Q."""
        if isinstance(value, AlgebraicScalar):
            return value
        if isinstance(value, UniPoly):
            return AlgebraicScalar(self, value)
        return AlgebraicScalar(self, UniPoly.const(value))


class AlgebraicScalar:
    """Residue class of a rational polynomial modulo an irreducible minpoly."""

    __slots__ = ("field", "rep", "interval")

    def __init__(self, field: NumberField, rep: UniPoly, interval: Optional[tuple] = None):
        self.field = field
        self.rep = rep % field.minpoly
        self.interval = interval

    @property
    def minpoly(self) -> UniPoly:
        return self.field.minpoly

    def _lift(self, other) -> Optional[UniPoly]:
        if isinstance(other, AlgebraicScalar):
            if other.field != self.field:
                raise ValueError("arithmetic across different number fields")
            return other.rep
        if isinstance(other, (int, Fraction)):
            return UniPoly.const(other)
        return None

    def _wrap(self, rep: UniPoly):
        return AlgebraicScalar(self.field, rep)

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._wrap(self.rep + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._wrap(self.rep - o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._wrap(o - self.rep)

    def __neg__(self):
        return self._wrap(-self.rep)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._wrap(self.rep * o)

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraicScalar":
        if self.rep.is_zero():
            raise ZeroDivisionError("inverse of zero in a number field")
        g, s, _ = ext_gcd(self.rep, self.field.minpoly)
        if g.degree != 0:
            raise ArithmeticError("minimal polynomial is not irreducible")
        return self._wrap(s)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * self._wrap(o).inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._wrap(o) * self.inverse()

    def __bool__(self):
        return not self.rep.is_zero()

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.rep == (o % self.field.minpoly)

    def __hash__(self):
        return hash((self.field, self.rep))

    def is_rational(self) -> bool:
        return self.rep.degree <= 0

    def render(self) -> str:
        if self.is_rational():
            return format_rational(self.rep.coeffs[0] if self.rep.coeffs else 0)
        return f"[{self.rep.render(self.field.name)}]"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"AlgebraicScalar({self.render()} mod {self.field.minpoly.render(self.field.name)})"
