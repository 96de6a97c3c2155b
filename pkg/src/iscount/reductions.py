"""Polynomial-time cases and the structural reductions shared by the solvers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .errors import InvalidInstanceError
from .graph import Graph, components
from .measure import WeightSet, mu_r
from .separator import Separation


class CardinalityFunction:
    """Per-vertex (c_out, c_in) multipliers; defaults to (1, 1) everywhere.

    Values are arbitrary-precision non-negative integers.  Instances are
    treated as immutable: updates return fresh objects.
    """

    __slots__ = ("_map",)

    def __init__(self, values: dict[int, tuple[int, int]] | None = None):
        self._map = dict(values) if values else {}
        for v, (out, inn) in self._map.items():
            if out < 0 or inn < 0:
                raise ValueError(f"negative cardinality at vertex {v}")

    @classmethod
    def unit(cls) -> "CardinalityFunction":
        return cls()

    def c_out(self, v: int) -> int:
        return self._map.get(v, (1, 1))[0]

    def c_in(self, v: int) -> int:
        return self._map.get(v, (1, 1))[1]

    def pair(self, v: int) -> tuple[int, int]:
        return self._map.get(v, (1, 1))

    def scaled(self, v: int, mult_out: int, mult_in: int) -> "CardinalityFunction":
        out, inn = self.pair(v)
        new = dict(self._map)
        new[v] = (out * mult_out, inn * mult_in)
        return CardinalityFunction(new)

    def with_pair(self, v: int, out: int, inn: int) -> "CardinalityFunction":
        new = dict(self._map)
        new[v] = (out, inn)
        return CardinalityFunction(new)

    def items(self):
        return self._map.items()

    def __eq__(self, other):
        if not isinstance(other, CardinalityFunction):
            return NotImplemented
        return self._map == other._map


def solve_max_degree_2(g: Graph, c: CardinalityFunction) -> int:
    """Exact weighted count for graphs of maximum degree <= 2.

    Components are isolated vertices, paths, or cycles; each is folded by a
    two-state transfer recurrence over (last vertex out, last vertex in).
    """
    if g.max_degree() > 2:
        raise InvalidInstanceError("maximum degree above 2")
    total = 1
    for comp in components(g):
        total *= _component_count(g, comp, c)
    return total


def _path_count(g: Graph, order: list[int], c: CardinalityFunction) -> int:
    v = order[0]
    out, inn = c.c_out(v), c.c_in(v)
    for v in order[1:]:
        out, inn = (out + inn) * c.c_out(v), out * c.c_in(v)
    return out + inn


def _component_count(g: Graph, comp: frozenset[int], c: CardinalityFunction) -> int:
    if len(comp) == 1:
        (v,) = comp
        return c.c_out(v) + c.c_in(v)
    degrees = {v: len(g.neighbors(v) & comp) for v in comp}
    ends = sorted(v for v, d in degrees.items() if d == 1)
    if ends:  # path: trace it from the smaller endpoint
        order = [ends[0]]
        prev = None
        while True:
            nxt = [u for u in g.neighbors(order[-1]) & comp if u != prev]
            if not nxt:
                break
            prev = order[-1]
            order.append(nxt[0])
        return _path_count(g, order, c)
    # cycle: fix the smallest vertex and condition on its membership
    v0 = min(comp)
    ns = sorted(g.neighbors(v0) & comp)
    order = [v0, ns[0]]
    while True:
        nxt = [u for u in g.neighbors(order[-1]) & comp if u != order[-2]]
        if not nxt or nxt[0] == v0:
            break
        order.append(nxt[0])
    # v0 out: the rest is a free path
    total = c.c_out(v0) * _path_count(g, order[1:], c)
    # v0 in: both cycle neighbors are forced out
    inner = order[2:-1]
    rest = _path_count(g, inner, c) if inner else 1
    total += c.c_in(v0) * c.c_out(order[1]) * c.c_out(order[-1]) * rest
    return total


# -- multiplier reduction ----------------------------------------------------


def find_multiplier_reduction(
    g: Graph, w: WeightSet
) -> Optional[tuple[int, frozenset[int]]]:
    """First (cut vertex, side) pair whose side plus the cut vertex has
    r-measure at most B; cut vertices scanned by increasing id."""
    if g.n < 3:
        return None
    b_const = w.balance_constant
    arts = _articulation_points(g)
    for x in sorted(arts):
        rest = g.restrict({x})
        comps = components(rest)
        if len(comps) < 2:
            continue
        wx = w.r_of_degree(g.degree(x))
        for comp in comps:
            if mu_r(rest, comp, w) + wx <= b_const + 1e-12:
                return x, comp
    return None


def _articulation_points(g: Graph) -> set[int]:
    """Iterative lowpoint computation."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    arts: set[int] = set()
    counter = 0
    for root in sorted(g.vertices):
        if root in disc:
            continue
        parent[root] = None
        stack: list[tuple[int, list[int]]] = [(root, sorted(g.neighbors(root)))]
        disc[root] = low[root] = counter
        counter += 1
        root_children = 0
        while stack:
            v, todo = stack[-1]
            if todo:
                u = todo.pop()
                if u not in disc:
                    parent[u] = v
                    if v == root:
                        root_children += 1
                    disc[u] = low[u] = counter
                    counter += 1
                    stack.append((u, sorted(g.neighbors(u))))
                elif u != parent[v]:
                    low[v] = min(low[v], disc[u])
            else:
                stack.pop()
                p = parent[v]
                if p is not None:
                    low[p] = min(low[p], low[v])
                    if p != root and low[v] >= disc[p]:
                        arts.add(p)
        if root_children > 1:
            arts.add(root)
    return arts


def multiplier_reduction(
    g: Graph,
    sep: Separation,
    c: CardinalityFunction,
    x: int,
    side: Iterable[int],
    solve: Callable[[Graph, Separation, CardinalityFunction], int] | None = None,
) -> tuple[Graph, Separation, CardinalityFunction]:
    """Fold a constant-measure side of the cut vertex x into its multipliers.

    Solves the side with x absent (scales c_out(x)) and with N[x] absent
    (scales c_in(x), together with the out-multipliers of x's neighbors in
    the side), then returns the graph restricted to the other side plus x.
    """
    side = frozenset(side)
    if x in side:
        raise InvalidInstanceError("cut vertex may not lie in the folded side")
    rest = g.vertices - side - {x}
    for v in side:
        if g.neighbors(v) & rest:
            raise InvalidInstanceError("folded side is adjacent to the remainder")
    if solve is None:
        from .solver import count_independent_sets

        def solve(gg, ss, cc):
            return count_independent_sets(gg, cc)[0]

    g1 = g.induced(side | {x})
    sub = Separation.trivial(side)
    c_out_mult = solve(g1.restrict({x}), sub, c)
    inner = g1.restrict(g1.closed_neighborhood(x))
    c_in_mult = solve(inner, sub.restrict(inner.vertices), c)
    for u in sorted(g1.neighbors(x)):
        c_in_mult *= c.c_out(u)
    c2 = c.scaled(x, c_out_mult, c_in_mult)
    g2 = g.induced(rest | {x})
    return g2, sep.restrict(g2.vertices), c2


# -- lazy 2-separators --------------------------------------------------------


@dataclass(frozen=True)
class LazySeparatorHit:
    y: int
    z: int
    component: frozenset[int]


def _skeleton_ball(g: Graph, x: int, radius: int) -> set[int]:
    """Vertices within `radius` hops of x, where entering a degree->=3
    vertex costs one hop and degree-<=2 vertices are free (0-1 BFS)."""
    from collections import deque

    dist = {x: 0}
    dq = deque([x])
    while dq:
        v = dq.popleft()
        for u in g.neighbors(v):
            cost = 1 if g.degree(u) >= 3 else 0
            nd = dist[v] + cost
            if nd <= radius and nd < dist.get(u, radius + 1):
                dist[u] = nd
                if cost == 0:
                    dq.appendleft(u)
                else:
                    dq.append(u)
    return set(dist)


def find_lazy_2_separator(
    g: Graph, x: int, w: WeightSet, radius: int = 4
) -> Optional[LazySeparatorHit]:
    """Pair {y, z} of degree->=3 vertices whose removal disconnects g and
    leaves N[x] inside (or removes it into) a component of r-measure <= B.

    Candidates are restricted to a small skeleton-hop ball around x; the
    scan is deterministic (ascending id pairs).
    """
    if x not in g:
        raise InvalidInstanceError(f"vertex {x} not in graph")
    b_const = w.balance_constant
    ball = _skeleton_ball(g, x, radius)
    cand = sorted(v for v in ball if v != x and g.degree(v) >= 3)
    for i, y in enumerate(cand):
        for z in cand[i + 1 :]:
            rest = g.restrict({y, z})
            comps = components(rest)
            if len(comps) < 2:
                continue
            if x not in rest.vertices:
                continue
            comp = next(cc for cc in comps if x in cc)
            if mu_r(rest, comp, w) <= b_const + 1e-12:
                return LazySeparatorHit(y=y, z=z, component=comp)
    return None
