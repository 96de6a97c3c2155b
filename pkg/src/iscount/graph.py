"""Simple undirected graphs with stable vertex ids, plus degree/structure queries.

Vertex ids are dense integers assigned at construction time.  Induced
subgraphs keep the surviving ids unchanged, so bookkeeping keyed by id
(separations, cardinality functions) stays valid across a recursion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import EmptyGraphError, GraphError, NotSubcubicError


class Graph:
    """Immutable simple undirected graph over integer vertex ids."""

    __slots__ = ("_adj", "_m")

    def __init__(self, adjacency: dict[int, frozenset[int]]):
        self._adj = adjacency
        self._m = sum(len(s) for s in adjacency.values()) // 2

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph on vertex ids 0..n-1 from an edge list."""
        adj: dict[int, set[int]] = {v: set() for v in range(n)}
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if u not in adj or v not in adj:
                raise GraphError(f"edge ({u},{v}) outside vertex range 0..{n - 1}")
            adj[u].add(v)
            adj[v].add(u)
        return cls({v: frozenset(s) for v, s in adj.items()})

    @classmethod
    def from_adjacency(cls, adjacency: dict[int, Iterable[int]]) -> "Graph":
        adj = {v: frozenset(ns) for v, ns in adjacency.items()}
        for v, ns in adj.items():
            if v in ns:
                raise GraphError(f"self-loop at vertex {v}")
            for u in ns:
                if u not in adj or v not in adj[u]:
                    raise GraphError(f"asymmetric adjacency at ({v},{u})")
        return cls(adj)

    # -- basic queries ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return self._m

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self._adj)

    def vertex_list(self) -> list[int]:
        return sorted(self._adj)

    def __contains__(self, v: int) -> bool:
        return v in self._adj

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self._adj))

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return self._adj[v] | {v}

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, frozenset())

    def max_degree(self) -> int:
        return max((len(s) for s in self._adj.values()), default=0)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for v in sorted(self._adj):
            for u in self._adj[v]:
                if u > v:
                    out.append((v, u))
        out.sort()
        return out

    def degree_multiset(self, vs: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(len(self._adj[v]) for v in vs))

    # -- derivation ------------------------------------------------------

    def restrict(self, removed: Iterable[int]) -> "Graph":
        """Induced subgraph on the complement of ``removed``; self unchanged."""
        gone = frozenset(removed)
        if not gone:
            return Graph(dict(self._adj))
        adj = {}
        for v, ns in self._adj.items():
            if v not in gone:
                adj[v] = ns - gone if ns & gone else ns
        return Graph(adj)

    def induced(self, kept: Iterable[int]) -> "Graph":
        keep = frozenset(kept)
        return Graph({v: self._adj[v] & keep for v in keep})

    def relabeled(self, mapping: dict[int, int]) -> "Graph":
        return Graph(
            {mapping[v]: frozenset(mapping[u] for u in ns) for v, ns in self._adj.items()}
        )

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def validate_graph(g: Graph) -> None:
    """Structural audit: simple, symmetric, no self-loops."""
    for v in g.vertices:
        ns = g.neighbors(v)
        if v in ns:
            raise GraphError(f"self-loop at {v}")
        for u in ns:
            if v not in g.neighbors(u):
                raise GraphError(f"asymmetric edge ({v},{u})")


def average_degree(g: Graph) -> Fraction:
    """2m/n as an exact rational."""
    if g.n == 0:
        raise EmptyGraphError("empty graph")
    return Fraction(2 * g.m, g.n)


@dataclass(frozen=True)
class VertexScore:
    """Associated average degree of a vertex: alpha/beta."""

    alpha: int
    beta: Fraction

    @property
    def score(self) -> Fraction:
        return Fraction(self.alpha) / self.beta


def associated_average_degree(g: Graph, x: int) -> VertexScore:
    """Score favoring branch vertices whose neighbors sit below the average degree.

    alpha counts the degree plus the neighbors of degree < d(G); beta adds
    1/d(y) for each such neighbor.
    """
    k = average_degree(g)
    alpha = g.degree(x)
    beta = Fraction(1)
    for y in g.neighbors(x):
        dy = g.degree(y)
        if dy < k:
            alpha += 1
            beta += Fraction(1, dy)
    return VertexScore(alpha=alpha, beta=beta)


def components(g: Graph) -> list[frozenset[int]]:
    """Connected components, ordered by their smallest vertex id."""
    seen: set[int] = set()
    comps: list[frozenset[int]] = []
    for start in sorted(g.vertices):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in g.neighbors(v):
                if u not in comp:
                    comp.add(u)
                    stack.append(u)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    start = next(iter(g.vertices))
    comp = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in g.neighbors(v):
            if u not in comp:
                comp.add(u)
                stack.append(u)
    return len(comp) == g.n


# -- degree-2 chains and the skeleton graph ------------------------------


def walk_chain(
    g: Graph, start: int, first: int, stop: "callable"
) -> tuple[int | None, list[int]]:
    """Walk from ``start`` through ``first`` along degree-2 vertices.

    Continues while the current vertex does not satisfy ``stop`` and has
    degree exactly 2.  Returns (endpoint, interior) where interior lists the
    vertices strictly between start and the endpoint.  The endpoint is None
    when the walk dead-ends at a degree-<=1 vertex; it equals ``start`` when
    the chain closes on itself.
    """
    interior: list[int] = []
    prev, cur = start, first
    while True:
        if stop(cur):
            return cur, interior
        if cur == start:
            return start, interior
        ns = g.neighbors(cur)
        if len(ns) != 2:
            return None, interior
        interior.append(cur)
        nxt = next(iter(ns - {prev}))
        prev, cur = cur, nxt


def chain_endpoints(g: Graph, s: int, stop) -> list[tuple[int | None, list[int]]]:
    """One (endpoint, interior) pair per edge incident to ``s``."""
    return [walk_chain(g, s, u, stop) for u in sorted(g.neighbors(s))]


def skeleton_neighbors(g: Graph, v: int) -> dict[int, list[list[int]]]:
    """Degree-3 vertices reachable from v directly or along a 2-path.

    Maps each reachable degree-3 endpoint to the list of interior vertex
    lists (one per parallel chain).  Self-reaching chains are dropped.
    """
    stop = lambda u: g.degree(u) >= 3
    out: dict[int, list[list[int]]] = {}
    for end, interior in chain_endpoints(g, v, stop):
        if end is None or end == v:
            continue
        out.setdefault(end, []).append(interior)
    return out


@dataclass(frozen=True)
class SkeletonGraph:
    """Degree-3 vertices of a subcubic graph, joined directly or by 2-paths."""

    nodes: frozenset[int]
    edges: tuple[tuple[int, int, tuple[int, ...]], ...]  # (u, v, interior), u <= v
    self_loops: tuple[tuple[int, tuple[int, ...]], ...]

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.nodes}
        for u, v, _ in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj


def skeleton(g: Graph) -> SkeletonGraph:
    """Skeleton of a subcubic graph.

    Pure degree-2 cycles (no degree-3 vertex anywhere on them) are omitted;
    chains that return to their own degree-3 endpoint are recorded as
    self-loops.  Each maximal 2-path is traversed exactly once.
    """
    if g.max_degree() > 3:
        raise NotSubcubicError("not subcubic")
    nodes = frozenset(v for v in g.vertices if g.degree(v) == 3)
    edges: list[tuple[int, int, tuple[int, ...]]] = []
    loops: list[tuple[int, tuple[int, ...]]] = []
    used: set[tuple[int, int]] = set()  # directed first edge of a traversed chain
    stop = lambda u: u in nodes
    for v in sorted(nodes):
        for first in sorted(g.neighbors(v)):
            if (v, first) in used:
                continue
            end, interior = walk_chain(g, v, first, stop)
            # mark both directions of this chain as traversed
            used.add((v, first))
            if end is not None:
                back = interior[-1] if interior else v
                used.add((end, back))
                if end == v:
                    loops.append((v, tuple(interior)))
                else:
                    a, b = (v, end) if v <= end else (end, v)
                    inner = tuple(interior if a == v else reversed(interior))
                    edges.append((a, b, inner))
    edges.sort(key=lambda e: (e[0], e[1], e[2]))
    return SkeletonGraph(nodes=nodes, edges=tuple(edges), self_loops=tuple(loops))
