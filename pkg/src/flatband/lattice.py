"""Z^d-periodic graphs given by their quotient data.

A periodic graph is stored as a fundamental domain ``W`` (vertex labels) and
a list of edges ``(i, j, g)``: vertex ``i`` of cell 0 is adjacent to vertex
``j`` of cell ``g``. Only one orientation of each edge is stored; the reverse
``(j, i, -g)`` is implied. Vertices of the infinite graph are
:class:`CellVertex` pairs ``(cell, vertex index)``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple

from .errors import GraphFormatError

Cell = tuple[int, ...]

_LABEL = re.compile(r"^[A-Za-z0-9_]+$")
_INT = re.compile(r"^[+-]?\d+$")


class CellVertex(NamedTuple):
    cell: Cell
    vertex: int


class Edge(NamedTuple):
    i: int
    j: int
    offset: Cell


@dataclass(frozen=True)
class QuotientGraph:
    dim: int
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    _degrees: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _adjacency: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.dim < 1:
            raise GraphFormatError("dimension must be positive")
        n = len(self.vertices)
        if n == 0:
            raise GraphFormatError("fundamental domain is empty")
        if len(set(self.vertices)) != n:
            raise GraphFormatError("duplicate vertex label")
        seen = set()
        deg = [0] * n
        adj: list[list[tuple[Cell, int]]] = [[] for _ in range(n)]
        for e in self.edges:
            i, j, g = e
            if not (0 <= i < n and 0 <= j < n):
                raise GraphFormatError(f"edge {e} refers to an unknown vertex")
            if len(g) != self.dim:
                raise GraphFormatError(f"edge offset {g} does not have length {self.dim}")
            if i == j and not any(g):
                raise GraphFormatError(f"self-loop at vertex {self.vertices[i]!r}")
            key = (i, j, g)
            rev = (j, i, tuple(-x for x in g))
            if key in seen or rev in seen:
                raise GraphFormatError(
                    f"duplicate edge {self.vertices[i]} {self.vertices[j]} {g}"
                )
            seen.add(key)
            deg[i] += 1
            deg[j] += 1
            adj[i].append((g, j))
            adj[j].append((tuple(-x for x in g), i))
        for k, d in enumerate(deg):
            if d == 0:
                raise GraphFormatError(f"vertex {self.vertices[k]!r} is isolated")
        object.__setattr__(self, "_degrees", tuple(deg))
        object.__setattr__(self, "_adjacency", tuple(tuple(a) for a in adj))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def degree(self, i: int) -> int:
        return self._degrees[i]

    @property
    def degrees(self) -> tuple[int, ...]:
        return self._degrees

    def neighbors(self, v: CellVertex) -> Iterator[CellVertex]:
        """Neighbors in the infinite graph, with multiplicity of the edge list."""
        cell, i = v
        for g, j in self._adjacency[i]:
            yield CellVertex(tuple(c + x for c, x in zip(cell, g)), j)

    def index(self, label: str) -> int:
        return self.vertices.index(label)

    def to_text(self) -> str:
        lines = [f"dim {self.dim}", "vertices " + " ".join(self.vertices)]
        for i, j, g in self.edges:
            lines.append(
                f"edge {self.vertices[i]} {self.vertices[j]} " + " ".join(str(x) for x in g)
            )
        return "\n".join(lines) + "\n"


def degree(graph: QuotientGraph, i: int) -> int:
    return graph.degree(i)


def parse_graph(text: str) -> QuotientGraph:
    """Parse the line-oriented graph format.

    ::

        dim 2
        vertices w1 w2 w3
        edge w1 w2 0 0

    ``#`` starts a comment. Vertex order fixes all matrix conventions.
    """
    dim = None
    labels: list[str] | None = None
    index: dict[str, int] = {}
    edges: list[Edge] = []
    seen: dict[tuple, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]
        if not tokens:
            continue
        head, col = tokens[0]
        if dim is None:
            if head != "dim":
                raise GraphFormatError("expected 'dim <d>'", lineno, col)
            if len(tokens) != 2 or not _INT.match(tokens[1][0]):
                raise GraphFormatError("'dim' takes one integer", lineno, col)
            dim = int(tokens[1][0])
            if dim < 1:
                raise GraphFormatError("dimension must be positive", lineno, tokens[1][1])
            continue
        if labels is None:
            if head != "vertices":
                raise GraphFormatError("expected 'vertices <label> ...'", lineno, col)
            if len(tokens) < 2:
                raise GraphFormatError("no vertices declared", lineno, col)
            labels = []
            for tok, c in tokens[1:]:
                if not _LABEL.match(tok):
                    raise GraphFormatError(f"invalid vertex label {tok!r}", lineno, c)
                if tok in index:
                    raise GraphFormatError(f"duplicate vertex label {tok!r}", lineno, c)
                index[tok] = len(labels)
                labels.append(tok)
            continue
        if head != "edge":
            raise GraphFormatError(f"unknown directive {head!r}", lineno, col)
        if len(tokens) < 3:
            raise GraphFormatError("edge needs two vertex labels", lineno, col)
        ends = []
        for tok, c in tokens[1:3]:
            if tok not in index:
                raise GraphFormatError(f"unknown vertex label {tok!r}", lineno, c)
            ends.append(index[tok])
        offs = tokens[3:]
        if len(offs) != dim:
            c = offs[0][1] if offs else tokens[2][1]
            raise GraphFormatError(
                f"offset has {len(offs)} entries, expected {dim} (dimension mismatch)", lineno, c
            )
        g = []
        for tok, c in offs:
            if not _INT.match(tok):
                raise GraphFormatError(f"offset entry {tok!r} is not an integer", lineno, c)
            g.append(int(tok))
        i, j = ends
        g = tuple(g)
        if i == j and not any(g):
            raise GraphFormatError(f"self-loop at vertex {labels[i]!r}", lineno, col)
        key = (i, j, g)
        rev = (j, i, tuple(-x for x in g))
        if key in seen or rev in seen:
            raise GraphFormatError(
                f"duplicate edge (first declared on line {seen.get(key, seen.get(rev))})",
                lineno,
                col,
            )
        seen[key] = lineno
        edges.append(Edge(i, j, g))
    if dim is None:
        raise GraphFormatError("missing 'dim' line")
    if labels is None:
        raise GraphFormatError("missing 'vertices' line")
    return QuotientGraph(dim, tuple(labels), tuple(edges))


def folner_ball(graph: QuotientGraph | int, j: int) -> list[Cell]:
    """Cells g with max |g_i| <= j, in lexicographic order.

    Accepts a graph or just its dimension.
    """
    dim = graph if isinstance(graph, int) else graph.dim
    rng = range(-j, j + 1)
    return [tuple(c) for c in itertools.product(rng, repeat=dim)]


def ball_vertices(graph: QuotientGraph, j: int) -> list[CellVertex]:
    return [CellVertex(c, i) for c in folner_ball(graph, j) for i in range(graph.n)]


def thick_boundary(graph: QuotientGraph, region: Iterable[CellVertex], r: int) -> set[CellVertex]:
    """Vertices outside the region within graph distance r of it."""
    inside = set(region)
    reached = set(inside)
    frontier = set(inside)
    for _ in range(r):
        nxt = set()
        for v in frontier:
            for w in graph.neighbors(v):
                if w not in reached:
                    nxt.add(w)
        reached |= nxt
        frontier = nxt
        if not frontier:
            break
    return reached - inside


@dataclass(frozen=True)
class FiniteSection:
    vertices: frozenset
    adjacency: tuple[tuple[CellVertex, CellVertex], ...]
    degrees_internal: dict
    degrees_ambient: dict

    def ordered_vertices(self) -> list[CellVertex]:
        return sorted(self.vertices)


def induced_section(graph: QuotientGraph, region: Iterable[CellVertex]) -> FiniteSection:
    verts = frozenset(region)
    pairs = set()
    internal = {v: 0 for v in verts}
    for v in verts:
        for w in graph.neighbors(v):
            if w in verts:
                internal[v] += 1
                pairs.add((v, w) if v <= w else (w, v))
    ambient = {v: graph.degree(v.vertex) for v in verts}
    return FiniteSection(verts, tuple(sorted(pairs)), internal, ambient)


def translate(vertices: Iterable[CellVertex], h: Cell) -> list[CellVertex]:
    return [CellVertex(tuple(a + b for a, b in zip(v.cell, h)), v.vertex) for v in vertices]
