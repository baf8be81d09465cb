"""Gröbner bases for submodules of k[z_1..z_d]^r.

Module elements are sparse maps ``(position, exponent) -> coefficient`` with
nonnegative exponents. The term order is position-over-term: a lower position
index is larger, and within one position monomials are compared by graded
reverse lexicographic order. Coefficients live in a field (``Fraction`` or
number-field elements).

Syzygies come from Schreyer's construction: every S-pair of the final basis
reduces to zero, and the recorded quotients give a generating set of the
syzygies of the basis, which the tracked representations translate back to
the input generators.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from ..algebra.laurent import LaurentPoly, exact_coefficient
from ..algebra.linalg import check_cancel

ORDER = "grevlex-pot"

Term = tuple[int, tuple[int, ...]]


def order_key(term: Term):
    pos, exp = term
    return (-pos, sum(exp), tuple(-x for x in reversed(exp)))


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _sub_exp(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _add_exp(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _leading(terms: dict) -> Term:
    return max(terms, key=order_key)


def _axpy(target: dict, source: dict, exp: tuple, coeff) -> None:
    """target -= coeff * z^exp * source, in place."""
    for (p, e), c in source.items():
        key = (p, _add_exp(e, exp))
        v = target.get(key, 0) - coeff * c
        if v:
            target[key] = v
        else:
            target.pop(key, None)


def _poly_times_vector(poly: dict, vec: dict) -> dict:
    """(exp -> c) times ((pos, exp) -> c)."""
    out: dict = {}
    for m, a in poly.items():
        _axpy(out, vec, m, -a)
    return out


class ModuleElement:
    """Vector of polynomials in k[z_1..z_d]^rank."""

    __slots__ = ("rank", "nvars", "terms")

    def __init__(self, rank: int, nvars: int, terms: Optional[dict] = None):
        self.rank = rank
        self.nvars = nvars
        self.terms = {k: exact_coefficient(v) for k, v in (terms or {}).items() if v}
        for p, e in self.terms:
            if not 0 <= p < rank:
                raise ValueError(f"position {p} outside rank {rank}")
            if len(e) != nvars or any(x < 0 for x in e):
                raise ValueError(f"bad exponent {e}")

    @classmethod
    def from_components(cls, comps: Sequence[LaurentPoly], nvars: Optional[int] = None) -> "ModuleElement":
        nvars = comps[0].nvars if nvars is None else nvars
        terms = {}
        for p, f in enumerate(comps):
            for e, c in f.terms.items():
                terms[(p, e)] = c
        return cls(len(comps), nvars, terms)

    @classmethod
    def basis_vector(cls, rank: int, nvars: int, pos: int, coeff=Fraction(1)) -> "ModuleElement":
        return cls(rank, nvars, {(pos, (0,) * nvars): coeff})

    def components(self) -> list[LaurentPoly]:
        comps: list[dict] = [{} for _ in range(self.rank)]
        for (p, e), c in self.terms.items():
            comps[p][e] = c
        return [LaurentPoly(self.nvars, t) for t in comps]

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, ModuleElement)
            and self.rank == other.rank
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        out = dict(self.terms)
        _axpy(out, other.terms, (0,) * self.nvars, -1)
        return ModuleElement(self.rank, self.nvars, out)

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        out = dict(self.terms)
        _axpy(out, other.terms, (0,) * self.nvars, 1)
        return ModuleElement(self.rank, self.nvars, out)

    def __neg__(self):
        return ModuleElement(self.rank, self.nvars, {k: -v for k, v in self.terms.items()})

    def scale(self, c) -> "ModuleElement":
        return ModuleElement(self.rank, self.nvars, {k: c * v for k, v in self.terms.items()})

    def times(self, poly: LaurentPoly) -> "ModuleElement":
        return ModuleElement(self.rank, self.nvars, _poly_times_vector(poly.terms, self.terms))

    def shift(self, exp: Sequence[int]) -> "ModuleElement":
        exp = tuple(exp)
        return ModuleElement(self.rank, self.nvars, {(p, _add_exp(e, exp)): c for (p, e), c in self.terms.items()})

    def leading_term(self) -> Term:
        return _leading(self.terms)

    def leading_coefficient(self):
        return self.terms[_leading(self.terms)]

    def monic(self) -> "ModuleElement":
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coefficient())

    def max_degree(self) -> int:
        return max((max(e, default=0) for _, e in self.terms), default=0)

    def render(self) -> list[str]:
        return [c.render() for c in self.components()]

    def __repr__(self):
        return f"ModuleElement({self.render()})"


def combine(coeffs: Sequence[LaurentPoly], vectors: Sequence[ModuleElement]) -> ModuleElement:
    """sum_i coeffs[i] * vectors[i]."""
    rank, nvars = vectors[0].rank, vectors[0].nvars
    out: dict = {}
    for h, v in zip(coeffs, vectors):
        if h:
            for m, a in h.terms.items():
                _axpy(out, v.terms, m, -a)
    return ModuleElement(rank, nvars, out)


@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple[ModuleElement, ...]
    order: str
    ambient_rank: int
    nvars: int

    def __len__(self):
        return len(self.generators)


class _Reducer:
    """Division by a fixed list of elements, optionally recording quotients."""

    def __init__(self, basis: Sequence[dict]):
        self.basis = list(basis)
        self.leads = [(_leading(g), g[_leading(g)]) for g in self.basis]

    def append(self, g: dict) -> None:
        self.basis.append(g)
        lt = _leading(g)
        self.leads.append((lt, g[lt]))

    def _find(self, term: Term) -> Optional[int]:
        pos, exp = term
        for idx, ((p, e), _) in enumerate(self.leads):
            if p == pos and _divides(e, exp):
                return idx
        return None

    def reduce(self, f: dict, track: bool = False, cancel=None):
        p = dict(f)
        rem: dict = {}
        quot: dict[int, dict] = {} if track else None
        while p:
            check_cancel(cancel)
            t = _leading(p)
            idx = self._find(t)
            if idx is None:
                rem[t] = p.pop(t)
                continue
            (lp, le), lc = self.leads[idx]
            m = _sub_exp(t[1], le)
            q = p[t] / lc
            _axpy(p, self.basis[idx], m, q)
            p.pop(t, None)
            if track:
                qd = quot.setdefault(idx, {})
                v = qd.get(m, 0) + q
                if v:
                    qd[m] = v
                else:
                    qd.pop(m, None)
        return rem, quot


def _spair(f: dict, g: dict):
    """Return (m_f, c_f, m_g, c_g) with S = c_f z^m_f f - c_g z^m_g g cancelling leads."""
    tf, tg = _leading(f), _leading(g)
    lcm = _lcm(tf[1], tg[1])
    return _sub_exp(lcm, tf[1]), 1 / f[tf], _sub_exp(lcm, tg[1]), 1 / g[tg]


def _groebner(gens: Sequence[dict], nvars: int, track: bool, cancel=None):
    """Buchberger's algorithm. Returns (basis, reps) where reps[k] expresses
    basis[k] in terms of the input generators as ``(gen index, exp) -> c``."""
    zero = (0,) * nvars
    red = _Reducer([])
    reps: list[dict] = []
    pairs: set = set()

    def add(g: dict, rep: dict) -> None:
        k = len(red.basis)
        pos = _leading(g)[0]
        for i, (lt, _) in enumerate(red.leads):
            if lt[0] == pos:
                pairs.add((i, k))
        red.append(g)
        reps.append(rep)

    for idx, f in enumerate(gens):
        if f:
            add(dict(f), {(idx, zero): Fraction(1)} if track else {})

    def pair_key(ij):
        i, j = ij
        lcm = _lcm(red.leads[i][0][1], red.leads[j][0][1])
        return (sum(lcm), j, i)

    while pairs:
        ij = min(pairs, key=pair_key)
        pairs.discard(ij)
        i, j = ij
        f, g = red.basis[i], red.basis[j]
        mf, cf, mg, cg = _spair(f, g)
        s: dict = {}
        _axpy(s, f, mf, -cf)
        _axpy(s, g, mg, cg)
        rem, quot = red.reduce(s, track, cancel)
        if not rem:
            continue
        rep = {}
        if track:
            _axpy(rep, reps[i], mf, -cf)
            _axpy(rep, reps[j], mg, cg)
            for k, qd in quot.items():
                for m, q in qd.items():
                    _axpy(rep, reps[k], m, q)
        add(rem, rep)
    return red.basis, reps


def _interreduce(basis: Sequence[dict]) -> list[dict]:
    """Minimal, tail-reduced, monic basis, sorted by decreasing leading term."""
    items = [dict(g) for g in basis if g]
    leads = [_leading(g) for g in items]
    keep = []
    for i, (p, e) in enumerate(leads):
        redundant = False
        for j, (q, f) in enumerate(leads):
            if i == j or p != q or not _divides(f, e):
                continue
            if f != e or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(items[i])
    out = []
    for i, g in enumerate(keep):
        others = _Reducer([h for k, h in enumerate(keep) if k != i])
        lt = _leading(g)
        lc = g[lt]
        tail = {k: v for k, v in g.items() if k != lt}
        rem, _ = others.reduce(tail) if others.basis else (tail, None)
        rem[lt] = lc
        out.append({k: v / lc for k, v in rem.items()})
    out.sort(key=lambda g: order_key(_leading(g)), reverse=True)
    return out


def _check_compatible(gens: Sequence[ModuleElement]):
    rank, nvars = gens[0].rank, gens[0].nvars
    for g in gens:
        if g.rank != rank or g.nvars != nvars:
            raise ValueError("generators live in different free modules")
    return rank, nvars


def buchberger(gens: Sequence[ModuleElement], order: str = ORDER, cancel=None,
               rank: Optional[int] = None, nvars: Optional[int] = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the submodule generated by ``gens``."""
    if order != ORDER:
        raise ValueError(f"unsupported term order {order!r}; only {ORDER!r}")
    if gens:
        rank, nvars = _check_compatible(gens)
    elif rank is None or nvars is None:
        raise ValueError("empty generator list needs explicit rank and nvars")
    basis, _ = _groebner([g.terms for g in gens], nvars, track=False, cancel=cancel)
    reduced = _interreduce(basis)
    return GroebnerBasis(
        tuple(ModuleElement(rank, nvars, g) for g in reduced), order, rank, nvars
    )


def normal_form(f: ModuleElement, gb: GroebnerBasis) -> ModuleElement:
    if f.rank != gb.ambient_rank:
        raise ValueError(f"element of rank {f.rank} against a basis of rank {gb.ambient_rank}")
    if not gb.generators:
        return f
    rem, _ = _Reducer([g.terms for g in gb.generators]).reduce(f.terms)
    return ModuleElement(f.rank, f.nvars, rem)


def s_pairs_reduce_to_zero(gb: GroebnerBasis) -> bool:
    """Buchberger's criterion checked pair by pair."""
    gens = [g.terms for g in gb.generators]
    red = _Reducer(gens)
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if _leading(gens[i])[0] != _leading(gens[j])[0]:
                continue
            mf, cf, mg, cg = _spair(gens[i], gens[j])
            s: dict = {}
            _axpy(s, gens[i], mf, -cf)
            _axpy(s, gens[j], mg, cg)
            if red.reduce(s)[0]:
                return False
    return True


def contains(gens: Sequence[ModuleElement], f: ModuleElement) -> bool:
    if not gens:
        return f.is_zero()
    return normal_form(f, buchberger(gens)).is_zero()


def _schreyer_syzygies(gens: Sequence[dict], nvars: int, cancel=None) -> list[dict]:
    basis, reps = _groebner(gens, nvars, track=True, cancel=cancel)
    red = _Reducer(basis)
    zero = (0,) * nvars
    out = []
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if red.leads[i][0][0] != red.leads[j][0][0]:
                continue
            mf, cf, mg, cg = _spair(basis[i], basis[j])
            s: dict = {}
            _axpy(s, basis[i], mf, -cf)
            _axpy(s, basis[j], mg, cg)
            rem, quot = red.reduce(s, track=True, cancel=cancel)
            if rem:
                raise AssertionError("S-pair of a finished Gröbner basis did not reduce to zero")
            # syzygy among basis elements, pushed to the input generators
            vec: dict = {}
            _axpy(vec, reps[i], mf, -cf)
            _axpy(vec, reps[j], mg, cg)
            for k, qd in quot.items():
                for m, q in qd.items():
                    _axpy(vec, reps[k], m, q)
            if vec:
                out.append(vec)
    for idx, f in enumerate(gens):
        vec = {(idx, zero): Fraction(1)}
        if f:
            rem, quot = red.reduce(f, track=True, cancel=cancel)
            if rem:
                raise AssertionError("input generator not in the span of its Gröbner basis")
            for k, qd in quot.items():
                for m, q in qd.items():
                    _axpy(vec, reps[k], m, q)
        if vec:
            out.append(vec)
    return out


def raw_syzygies(gens: Sequence[ModuleElement], cancel=None) -> list[ModuleElement]:
    """Unpruned Schreyer generators of the syzygy module of ``gens``."""
    if not gens:
        return []
    _, nvars = _check_compatible(gens)
    r = len(gens)
    out, seen = [], set()
    for vec in _schreyer_syzygies([g.terms for g in gens], nvars, cancel):
        el = ModuleElement(r, nvars, vec).monic()
        if el not in seen:
            seen.add(el)
            out.append(el)
    return out


def minimize_generators(gens: Sequence[ModuleElement], cancel=None) -> list[ModuleElement]:
    """A generating set of the same submodule with no member in the span of the others.

    Starts from the reduced Gröbner basis and drops elements greedily, largest
    leading term first.
    """
    gens = [g for g in gens if g]
    if not gens:
        return []
    rank, nvars = _check_compatible(gens)
    current = list(buchberger(gens, cancel=cancel).generators)
    i = 0
    while i < len(current) and len(current) > 1:
        others = current[:i] + current[i + 1:]
        if contains(others, current[i]):
            current = others
        else:
            i += 1
    return current


def syzygies(gens: Sequence[ModuleElement], cancel=None) -> list[ModuleElement]:
    """Generators of {(g_1..g_r) : sum g_i f_i = 0}, pruned of redundant members."""
    return minimize_generators(raw_syzygies(gens, cancel), cancel)
