"""Prime graphs of character degree sets and their shape.

Graphs are small (a handful of primes), so the shape tests work on
adjacency bitmasks over vertex positions; :class:`PrimeGraph` carries the
actual primes.
"""

from __future__ import annotations

import dataclasses
import itertools
from typing import Iterable

from .characters import DegreeMultiset
from .numtheory import prime_factors

RULES = (
    "components",               # more than two connected components
    "disconnected-incomplete",  # disconnected with a non-complete component
    "palfy",                    # three vertices with no edge among them
    "two-2-components",          # two components with two vertices each
    "path-4",
    "cycle-5",
    "square-subgraph",          # proper spanning subgraph of a 4-cycle
)


# -- bitmask core (vertices 0..n-1, adj[i] is the neighbour mask of i) ----------------

def _components(n: int, adj: list[int]) -> list[int]:
    left = (1 << n) - 1
    out = []
    while left:
        seed = left & -left
        comp, frontier = seed, seed
        while frontier:
            nb = 0
            f = frontier
            while f:
                low = f & -f
                nb |= adj[low.bit_length() - 1]
                f ^= low
            frontier = nb & ~comp
            comp |= frontier
        out.append(comp)
        left &= ~comp
    return out


def _is_clique(mask: int, adj: list[int]) -> bool:
    m = mask
    while m:
        low = m & -m
        i = low.bit_length() - 1
        if (adj[i] | low) & mask != mask:
            return False
        m ^= low
    return True


def _independent_triple(n: int, adj: list[int]) -> tuple[int, int, int] | None:
    for a, b, c in itertools.combinations(range(n), 3):
        if not (adj[a] >> b & 1 or adj[a] >> c & 1 or adj[b] >> c & 1):
            return a, b, c
    return None


def _triangle(n: int, adj: list[int]) -> tuple[int, int, int] | None:
    for a in range(n):
        for b in range(a + 1, n):
            if adj[a] >> b & 1:
                common = adj[a] & adj[b] & ~((1 << (b + 1)) - 1)
                if common:
                    return a, b, (common & -common).bit_length() - 1
    return None


def _degrees(adj: list[int]) -> list[int]:
    return [a.bit_count() for a in adj]


def _is_cycle4(n: int, adj: list[int]) -> bool:
    return n == 4 and all(d == 2 for d in _degrees(adj))


_C4_EDGE_SETS = [
    frozenset(frozenset(e) for e in zip(order, order[1:] + order[:1]))
    for order in ((0, 1, 2, 3), (0, 1, 3, 2), (0, 2, 1, 3))
]


def _edge_set(n: int, adj: list[int]) -> frozenset:
    return frozenset(frozenset((i, j)) for i in range(n) for j in range(i + 1, n) if adj[i] >> j & 1)


def feasibility_rule(n: int, adj: list[int]) -> str | None:
    """First violated rule for a graph on ``n`` vertices, or ``None`` when accepted."""
    comps = _components(n, adj)
    if len(comps) > 2:
        return "components"
    if len(comps) == 2 and not all(_is_clique(c, adj) for c in comps):
        return "disconnected-incomplete"
    if _independent_triple(n, adj) is not None:
        return "palfy"
    if len(comps) == 2 and all(c.bit_count() == 2 for c in comps):
        return "two-2-components"
    degs = _degrees(adj)
    if n == 4 and len(comps) == 1 and sorted(degs) == [1, 1, 2, 2]:
        return "path-4"
    if n == 5 and len(comps) == 1 and all(d == 2 for d in degs):
        return "cycle-5"
    if n == 4:
        edges = _edge_set(n, adj)
        if any(edges < c4 for c4 in _C4_EDGE_SETS):
            return "square-subgraph"
    return None


def adjacency_from_code(n: int, code: int) -> list[int]:
    """Adjacency masks for the graph whose edge bits (pairs in lexicographic order) are ``code``."""
    adj = [0] * n
    bit = 0
    for i in range(n):
        for j in range(i + 1, n):
            if code >> bit & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            bit += 1
    return adj


# -- public API ------------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class PrimeGraph:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        verts = tuple(sorted(set(self.vertices)))
        edges = set()
        for p, q in self.edges:
            if p == q:
                raise ValueError(f"loop at {p}")
            if p not in verts or q not in verts:
                raise ValueError(f"edge {p}-{q} leaves the vertex set")
            edges.add((min(p, q), max(p, q)))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(sorted(edges)))

    def adjacency(self) -> list[int]:
        pos = {v: i for i, v in enumerate(self.vertices)}
        adj = [0] * len(self.vertices)
        for p, q in self.edges:
            adj[pos[p]] |= 1 << pos[q]
            adj[pos[q]] |= 1 << pos[p]
        return adj

    def has_edge(self, p: int, q: int) -> bool:
        return (min(p, q), max(p, q)) in self.edges

    def is_subgraph_of(self, other: PrimeGraph) -> bool:
        return set(self.vertices) <= set(other.vertices) and set(self.edges) <= set(other.edges)

    def _verts(self, mask: int) -> tuple[int, ...]:
        return tuple(v for i, v in enumerate(self.vertices) if mask >> i & 1)


def build_graph(cd: DegreeMultiset | Iterable[int]) -> PrimeGraph:
    degs = set(cd.degrees if isinstance(cd, DegreeMultiset) else cd)
    if any(d < 1 for d in degs):
        raise ValueError("degrees must be positive")
    verts: set[int] = set()
    edges: set[tuple[int, int]] = set()
    for d in degs:
        if d == 1:
            continue
        ps = prime_factors(d)
        verts.update(ps)
        edges.update(itertools.combinations(ps, 2))
    return PrimeGraph(tuple(verts), tuple(edges))


def components(g: PrimeGraph) -> list[tuple[int, ...]]:
    comps = [g._verts(c) for c in _components(len(g.vertices), g.adjacency())]
    return sorted(comps)


def components_complete(g: PrimeGraph) -> bool:
    adj = g.adjacency()
    return all(_is_clique(c, adj) for c in _components(len(g.vertices), adj))


def palfy_check(g: PrimeGraph) -> tuple[int, int, int] | None:
    """The first vertex triple (canonical order) spanning no edge, or ``None``."""
    hit = _independent_triple(len(g.vertices), g.adjacency())
    return None if hit is None else tuple(g.vertices[i] for i in hit)


def triangle(g: PrimeGraph) -> tuple[int, int, int] | None:
    hit = _triangle(len(g.vertices), g.adjacency())
    return None if hit is None else tuple(g.vertices[i] for i in hit)


def has_triangle(g: PrimeGraph) -> bool:
    return triangle(g) is not None


def square_labeling(g: PrimeGraph) -> tuple[tuple[int, int], tuple[int, int]] | None:
    """The two non-adjacent pairs of a 4-cycle, each sorted, ordered by least member."""
    if not _is_cycle4(len(g.vertices), g.adjacency()):
        return None
    pairs = [pq for pq in itertools.combinations(g.vertices, 2) if not g.has_edge(*pq)]
    return tuple(sorted(pairs))


def is_square(g: PrimeGraph) -> bool:
    return square_labeling(g) is not None


@dataclasses.dataclass(frozen=True)
class Feasibility:
    accepted: bool
    rule: str | None = None

    def __str__(self) -> str:
        return "accepted" if self.accepted else f"rejected({self.rule})"


def feasibility_filter(g: PrimeGraph) -> Feasibility:
    rule = feasibility_rule(len(g.vertices), g.adjacency())
    return Feasibility(rule is None, rule)


@dataclasses.dataclass(frozen=True)
class ShapeReport:
    component_count: int
    components: tuple[tuple[int, ...], ...]
    components_complete: bool
    palfy_ok: bool
    palfy_witness: tuple[int, int, int] | None
    has_triangle: bool
    triangle_witness: tuple[int, int, int] | None
    is_square: bool
    square_labeling: tuple[tuple[int, int], tuple[int, int]] | None
    feasibility: Feasibility

    def to_dict(self) -> dict:
        return {
            "component_count": self.component_count,
            "components": [list(c) for c in self.components],
            "components_complete": self.components_complete,
            "palfy_ok": self.palfy_ok,
            "palfy_witness": list(self.palfy_witness) if self.palfy_witness else None,
            "has_triangle": self.has_triangle,
            "triangle_witness": list(self.triangle_witness) if self.triangle_witness else None,
            "is_square": self.is_square,
            "square_labeling": [list(p) for p in self.square_labeling] if self.square_labeling else None,
            "feasibility": str(self.feasibility),
        }


def shape(g: PrimeGraph) -> ShapeReport:
    comps = tuple(components(g))
    pw = palfy_check(g)
    tw = triangle(g)
    lab = square_labeling(g)
    return ShapeReport(len(comps), comps, components_complete(g), pw is None, pw,
                       tw is not None, tw, lab is not None, lab, feasibility_filter(g))


def dot_export(g: PrimeGraph) -> str:
    lines = ["graph cd {"]
    lines += [f"  {v};" for v in g.vertices]
    lines += [f"  {p} -- {q};" for p, q in g.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def describe(g: PrimeGraph) -> str:
    """Short human-readable shape name, used in hypothesis errors."""
    n, m = len(g.vertices), len(g.edges)
    if n == 0:
        return "empty"
    comps = components(g)
    if len(comps) > 1:
        return f"disconnected, {len(comps)} components, {n} vertices"
    if is_square(g):
        return "square"
    if has_triangle(g):
        return f"connected with a triangle, {n} vertices, {m} edges"
    return f"connected, {n} vertices, {m} edges"
