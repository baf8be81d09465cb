"""Dense univariate polynomials over the rationals.

Besides ring arithmetic this module carries everything the eigenvalue search
needs on the scalar side: gcd, square-free decomposition, complete
factorization over Q for the small degrees that occur here, and real-root
isolation by Sturm sequences.
"""
from __future__ import annotations

import itertools
import math
import re
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def format_rational(c: Fraction) -> str:
    """Reduced fraction, parenthesized when negative or non-integral."""
    c = _frac(c)
    s = str(c)
    if c < 0 or c.denominator != 1:
        return f"({s})"
    return s


class UniPoly:
    """Polynomial with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # constructors
    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls((c,))

    # basic queries
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({self.render()!r})"

    # arithmetic
    @staticmethod
    def _coerce(other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly.const(other)
        raise TypeError(f"cannot combine UniPoly with {type(other).__name__}")

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        n = max(len(a), len(b))
        return UniPoly(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = UniPoly.const(1)
        for _ in range(k):
            result = result * self
        return result

    def __divmod__(self, other):
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(len(rem) - len(o.coeffs) + 1, 0)
        lc = o.lc
        dv = o.degree
        for k in range(len(rem) - 1, dv - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            q = c / lc
            quot[k - dv] = q
            for i, b in enumerate(o.coeffs):
                rem[k - dv + i] -= q * b
        return UniPoly(quot), UniPoly(rem[:dv] if dv > 0 else ())

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lc = self.lc
        return UniPoly(c / lc for c in self.coeffs)

    def derivative(self) -> "UniPoly":
        return UniPoly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def shift(self, a) -> "UniPoly":
        """p(x + a)."""
        result = UniPoly()
        xa = UniPoly((a, 1))
        for c in reversed(self.coeffs):
            result = result * xa + c
        return result

    # rendering
    def render(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(format_rational(c))
                continue
            mono = var if k == 1 else f"{var}^{k}"
            if c == 1:
                parts.append(mono)
            else:
                parts.append(f"{format_rational(c)}*{mono}")
        return " + ".join(parts)

    @classmethod
    def parse(cls, text: str, var: str = "x") -> "UniPoly":
        """Inverse of :meth:`render`."""
        text = text.strip()
        if text == "0":
            return cls()
        term_re = re.compile(
            rf"^(?:\((?P<pc>-?\d+(?:/\d+)?)\)|(?P<c>\d+(?:/\d+)?))?"
            rf"(?:\*?(?P<var>{re.escape(var)})(?:\^(?P<e>\d+))?)?$"
        )
        out: dict[int, Fraction] = {}
        for term in text.split(" + "):
            m = term_re.match(term.strip())
            if not m or not term.strip():
                raise ValueError(f"cannot parse polynomial term {term!r}")
            if m.group("pc"):
                c = Fraction(m.group("pc"))
            elif m.group("c"):
                c = Fraction(m.group("c"))
            else:
                c = Fraction(1)
            if m.group("var"):
                e = int(m.group("e") or 1)
            else:
                e = 0
            out[e] = out.get(e, Fraction(0)) + c
        top = max(out)
        return cls(out.get(k, 0) for k in range(top + 1))


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def univariate_gcd(ps: Sequence[UniPoly]) -> UniPoly:
    """Monic gcd of a list of polynomials, not all zero."""
    nonzero = [p for p in ps if not p.is_zero()]
    if not nonzero:
        raise ValueError("gcd of an all-zero list is undefined")
    return reduce(poly_gcd, nonzero, UniPoly()).monic()


def ext_gcd(a: UniPoly, b: UniPoly):
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = UniPoly.const(1), UniPoly()
    t0, t1 = UniPoly(), UniPoly.const(1)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    lc = r0.lc
    return r0.monic(), s0 * (1 / lc), t0 * (1 / lc)


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: monic square-free a_i with p = lc * prod a_i^i."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    f = p.monic()
    if f.degree == 0:
        return []
    out = []
    d = f.derivative()
    a0 = poly_gcd(f, d)
    b = f // a0
    c = d // a0
    i = 1
    while b.degree > 0:
        dd = c - b.derivative()
        a = poly_gcd(b, dd)
        if a.degree > 0:
            out.append((a, i))
        b = b // a
        c = dd // a
        i += 1
    return out


def _primitive_integer(p: UniPoly) -> list[int]:
    den = math.lcm(*(c.denominator for c in p.coeffs))
    ints = [int(c * den) for c in p.coeffs]
    g = reduce(math.gcd, ints)
    ints = [v // g for v in ints]
    if ints[-1] < 0:
        ints = [-v for v in ints]
    return ints


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    k = 1
    while k * k <= n:
        if n % k == 0:
            small.append(k)
            if k * k != n:
                large.append(n // k)
        k += 1
    return small + large[::-1]


def rational_roots(p: UniPoly) -> list[Fraction]:
    """Distinct rational roots, ascending."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    roots = set()
    if p.coeffs[0] == 0:
        roots.add(Fraction(0))
        k = next(i for i, c in enumerate(p.coeffs) if c != 0)
        p = UniPoly(p.coeffs[k:])
    if p.degree < 1:
        return sorted(roots)
    ints = _primitive_integer(p)
    for num in _divisors(ints[0]):
        for den in _divisors(ints[-1]):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if p(cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def _interpolate(xs: Sequence[int], ys: Sequence[int]) -> UniPoly:
    result = UniPoly()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = UniPoly.const(yi)
        for j, xj in enumerate(xs):
            if j != i:
                term = term * UniPoly((Fraction(-xj, xi - xj), Fraction(1, xi - xj)))
        result = result + term
    return result


def _kronecker_split(p: UniPoly) -> tuple[UniPoly, UniPoly] | None:
    """Find a nontrivial factorization of a square-free p, or None if irreducible."""
    ints = UniPoly(_primitive_integer(p))
    n = ints.degree
    for s in range(1, n // 2 + 1):
        xs: list[int] = []
        cand = 0
        while len(xs) < s + 1:
            if ints(cand) != 0:
                xs.append(cand)
            cand = -cand if cand > 0 else -cand + 1
        values = [int(ints(x)) for x in xs]
        choices = [_divisors(v) for v in values]
        # fix the sign of the first value to remove the q ~ -q ambiguity
        signed = [choices[0]] + [[d for v in ch for d in (v, -v)] for ch in choices[1:]]
        for ys in itertools.product(*signed):
            q = _interpolate(xs, ys)
            if q.degree != s:
                continue
            if any(c.denominator != 1 for c in q.coeffs):
                continue
            quot, rem = divmod(ints, q)
            if rem.is_zero():
                return q.monic(), quot.monic()
    return None


def _factor_squarefree(p: UniPoly) -> list[UniPoly]:
    p = p.monic()
    if p.degree <= 1:
        return [p] if p.degree == 1 else []
    factors = []
    for r in rational_roots(p):
        lin = UniPoly((-r, 1))
        factors.append(lin)
        p = p // lin
    pending = [p] if p.degree > 0 else []
    while pending:
        q = pending.pop()
        if q.degree <= 1:
            factors.append(q.monic())
            continue
        split = _kronecker_split(q)
        if split is None:
            factors.append(q.monic())
        else:
            pending.extend(split)
    return factors


def factor_rational(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Monic irreducible factors over Q with multiplicities.

    Sorted by (degree, coefficients) so the output is deterministic.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    out = []
    for part, mult in squarefree_decomposition(p):
        for f in _factor_squarefree(part):
            out.append((f, mult))
    out.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return out


# real roots

def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def _variations(seq: Sequence[UniPoly], x: Fraction) -> int:
    signs = [s(x) for s in seq]
    signs = [v for v in signs if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def root_bound(p: UniPoly) -> Fraction:
    lc = abs(p.lc)
    return 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def isolate_real_roots(p: UniPoly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (lo, hi], one real root each; lo == hi for exact rational roots.

    Requires p square-free.
    """
    if p.degree < 1:
        return []
    if p.degree == 1:
        r = -p.coeffs[0] / p.coeffs[1]
        return [(r, r)]
    seq = sturm_sequence(p)
    bound = root_bound(p)
    out = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        count = _variations(seq, lo) - _variations(seq, hi)
        if count == 0:
            continue
        if count == 1:
            if p(hi) == 0:
                out.append((hi, hi))
            else:
                out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    out.sort()
    return out


def refine_root(p: UniPoly, interval: tuple[Fraction, Fraction], width: Fraction):
    lo, hi = interval
    if lo == hi:
        return interval
    seq = sturm_sequence(p)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if p(mid) == 0:
            return (mid, mid)
        if _variations(seq, lo) - _variations(seq, mid) == 1:
            hi = mid
        else:
            lo = mid
    return (lo, hi)


def approx_real_roots(p: UniPoly, digits: int = 12) -> list[Fraction]:
    """Rational approximations of every real root of a square-free p, error < 10^-(digits+2)."""
    width = Fraction(1, 10 ** (digits + 2))
    out = []
    for iv in isolate_real_roots(p):
        lo, hi = refine_root(p, iv, width)
        out.append((lo + hi) / 2)
    return out


def format_decimal(x: Fraction, digits: int = 12) -> str:
    scaled = round(x * 10**digits)
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"
