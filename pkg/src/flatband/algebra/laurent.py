"""Sparse multivariate Laurent polynomials.

A polynomial is a map from exponent tuples (possibly negative entries) to
nonzero coefficients. The coefficient domain is left open: ``Fraction``,
``UniPoly`` (coefficients in Q[mu]) and number-field elements all work, as
long as they support ring operators and are falsy exactly when zero.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .unipoly import UniPoly, format_rational

Exponent = tuple[int, ...]


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def exact_coefficient(c):
    """Ints become Fractions so division stays exact; floats are refused."""
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, float):
        raise TypeError("floating-point coefficients are not allowed")
    return c


def format_coefficient(c) -> str:
    if isinstance(c, (int, Fraction)):
        return format_rational(c)
    if isinstance(c, UniPoly):
        return f"({c.render('mu')})"
    return str(c)


class LaurentPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                if c:
                    clean[tuple(e)] = exact_coefficient(c)
        self.terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        return obj

    # constructors
    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exp: Iterable[int], c=1) -> "LaurentPoly":
        exp = tuple(exp)
        if isinstance(c, int):
            c = Fraction(c)
        return cls(len(exp), {exp: c})

    @classmethod
    def var(cls, nvars: int, i: int, power: int = 1) -> "LaurentPoly":
        e = [0] * nvars
        e[i] = power
        return cls.monomial(e)

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly.constant(self.nvars, Fraction(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def coefficient(self, exp: Exponent):
        return self.terms.get(tuple(exp), 0)

    def min_exponents(self) -> Exponent:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def max_exponents(self) -> Exponent:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(max(e[i] for e in self.terms) for i in range(self.nvars))

    def is_polynomial(self) -> bool:
        return all(x >= 0 for e in self.terms for x in e)

    # arithmetic
    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials in different numbers of variables")
            return other
        return LaurentPoly.constant(self.nvars, other)

    def __add__(self, other):
        o = self._coerce(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            if e in out:
                s = out[e] + c
                if s:
                    out[e] = s
                else:
                    del out[e]
            else:
                out[e] = c
        return LaurentPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        o = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = _add_exp(e1, e2)
                if e in out:
                    out[e] = out[e] + c1 * c2
                else:
                    out[e] = c1 * c2
        return LaurentPoly._raw(self.nvars, {e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials are invertible")
            ((e, c),) = self.terms.items()
            return LaurentPoly._raw(self.nvars, {tuple(k * x for x in e): c ** k})
        result = LaurentPoly.constant(self.nvars, Fraction(1))
        for _ in range(k):
            result = result * self
        return result

    def scale(self, c) -> "LaurentPoly":
        if not c:
            return LaurentPoly.zero(self.nvars)
        return LaurentPoly._raw(
            self.nvars, {e: v for e, v in ((e, c * v) for e, v in self.terms.items()) if v}
        )

    def shift(self, exp: Exponent) -> "LaurentPoly":
        """Multiply by the monomial z^exp."""
        exp = tuple(exp)
        return LaurentPoly._raw(self.nvars, {_add_exp(e, exp): c for e, c in self.terms.items()})

    def conjugate_z(self) -> "LaurentPoly":
        """Substitute z -> 1/z."""
        return LaurentPoly._raw(self.nvars, {tuple(-x for x in e): c for e, c in self.terms.items()})

    def map_coefficients(self, fn: Callable) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: fn(c) for e, c in self.terms.items()})

    def evaluate(self, point) -> object:
        acc = 0
        for e, c in self.terms.items():
            m = c
            for x, k in zip(point, e):
                m = m * (x ** k)
            acc = acc + m
        return acc

    def leading_lex(self):
        e = max(self.terms)
        return e, self.terms[e]

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient in the Laurent ring over a field; raises if other does not divide self."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero(self.nvars)
        # lex is a group order on Z^d, so leading terms divide step by step;
        # quotient exponents of an exact division lie in this box
        le, lc = other.leading_lex()
        lo = tuple(a - b for a, b in zip(self.min_exponents(), other.min_exponents()))
        hi = tuple(a - b for a, b in zip(self.max_exponents(), other.max_exponents()))
        rem = self
        quot: dict = {}
        while rem.terms:
            re_, rc = rem.leading_lex()
            qe = tuple(a - b for a, b in zip(re_, le))
            if any(q < l or q > h for q, l, h in zip(qe, lo, hi)):
                raise ArithmeticError("inexact Laurent polynomial division")
            qc = rc / lc
            quot[qe] = qc
            rem = rem - other.shift(qe).scale(qc)
        return LaurentPoly._raw(self.nvars, quot)

    # rendering
    def render(self, names: list[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"z{i + 1}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k != 0
            )
            if not mono:
                parts.append(format_coefficient(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{format_coefficient(c)}*{mono}")
        return " + ".join(parts)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"LaurentPoly({self.render()!r})"


def laurent_from_dict(nvars: int, data: Mapping[Exponent, object]) -> LaurentPoly:
    return LaurentPoly(nvars, {e: (Fraction(c) if isinstance(c, int) else c) for e, c in data.items()})
