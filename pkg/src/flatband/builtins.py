"""Built-in example lattices, stored as graph-format documents."""
from __future__ import annotations

from .lattice import QuotientGraph, parse_graph

KAGOME = """\
# trihexagonal (kagome) lattice, 4-regular
dim 2
vertices w1 w2 w3
edge w1 w2 0 0
edge w1 w2 0 1
edge w1 w3 0 0
edge w1 w3 1 0
edge w2 w3 0 0
edge w2 w3 1 -1
"""

SQUARE = """\
# Z^2 as its own Cayley graph
dim 2
vertices v
edge v v 1 0
edge v v 0 1
"""

CYCLE = """\
# Z as its own Cayley graph
dim 1
vertices v
edge v v 1
"""

COMB2 = """\
# a chain with two pendant teeth on every base vertex
dim 1
vertices b p1 p2
edge b b 1
edge b p1 0
edge b p2 0
"""

BUILTINS = {
    "kagome": KAGOME,
    "square": SQUARE,
    "cycle": CYCLE,
    "comb2": COMB2,
}


def load_builtin(name: str) -> QuotientGraph:
    try:
        text = BUILTINS[name]
    except KeyError:
        raise KeyError(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}") from None
    return parse_graph(text)
