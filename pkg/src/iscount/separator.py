"""Heuristic path decompositions and balanced separations.

The decomposition heuristic orders vertices by BFS layering with a few
local-improvement passes and takes running boundary sets as bags.  A
balanced separation is then read off the nice form of the decomposition by
scanning prefix separations until the weighted sides differ by at most B.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import AuditError, GraphError
from .graph import Graph, is_connected
from .measure import WeightSet, mu_r


@dataclass(frozen=True)
class SpiderInfo:
    """Classification entry for one separator vertex."""

    kind: str  # "left" | "right" | "center"
    partner: int | None = None


@dataclass(frozen=True)
class Separation:
    """Partition (L, S, R) with no L-R edges; S is the separator."""

    L: frozenset[int]
    S: frozenset[int]
    R: frozenset[int]
    spiders: dict[int, SpiderInfo] | None = None

    @classmethod
    def trivial(cls, vertices: Iterable[int]) -> "Separation":
        return cls(L=frozenset(), S=frozenset(), R=frozenset(vertices))

    @classmethod
    def of(cls, L: Iterable[int], S: Iterable[int], R: Iterable[int]) -> "Separation":
        return cls(L=frozenset(L), S=frozenset(S), R=frozenset(R))

    def swap(self) -> "Separation":
        return Separation(L=self.R, S=self.S, R=self.L, spiders=self.spiders)

    def with_spiders(self, spiders: dict[int, SpiderInfo]) -> "Separation":
        return Separation(L=self.L, S=self.S, R=self.R, spiders=spiders)

    def restrict(self, remaining: frozenset[int]) -> "Separation":
        return Separation(
            L=self.L & remaining, S=self.S & remaining, R=self.R & remaining
        )

    def side_of(self, v: int) -> str:
        if v in self.S:
            return "S"
        if v in self.L:
            return "L"
        if v in self.R:
            return "R"
        raise KeyError(v)

    def spider_weight_bearers(self) -> frozenset[int]:
        """Vertices carrying the special spider weight s_3'.

        Left and right spiders carry it themselves; of a center pair, the
        smaller id does.
        """
        if not self.spiders:
            return frozenset()
        bearers = set()
        for v, info in self.spiders.items():
            if info.kind in ("left", "right"):
                bearers.add(v)
            elif info.kind == "center":
                bearers.add(min(v, info.partner))
        return frozenset(bearers)


def is_valid_separation(g: Graph, sep: Separation) -> bool:
    if sep.L | sep.S | sep.R != g.vertices:
        return False
    if sep.L & sep.S or sep.L & sep.R or sep.S & sep.R:
        return False
    for v in sep.L:
        if g.neighbors(v) & sep.R:
            return False
    return True


def check_separation(g: Graph, sep: Separation, context: str = "") -> None:
    if not is_valid_separation(g, sep):
        raise AuditError(f"invalid separation{': ' + context if context else ''}")


# -- path decompositions ---------------------------------------------------


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple[frozenset[int], ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=1) - 1


def is_valid_decomposition(g: Graph, pd: PathDecomposition) -> bool:
    # every edge co-occurs in some bag
    for u, v in g.edges():
        if not any(u in b and v in b for b in pd.bags):
            return False
    # occurrences of each vertex form a non-empty consecutive run
    for v in g.vertices:
        idx = [i for i, b in enumerate(pd.bags) if v in b]
        if not idx or idx[-1] - idx[0] + 1 != len(idx):
            return False
    return True


def is_nice(pd: PathDecomposition) -> bool:
    return all(
        len(a.symmetric_difference(b)) == 1 for a, b in zip(pd.bags, pd.bags[1:])
    )


def _bags_from_arrangement(g: Graph, order: list[int]) -> list[frozenset[int]]:
    pos = {v: i for i, v in enumerate(order)}
    last_needed = {}
    for v in order:
        mx = pos[v]
        for u in g.neighbors(v):
            mx = max(mx, pos[u])
        last_needed[v] = mx
    bags = []
    for i, v in enumerate(order):
        bag = {u for u in order[: i + 1] if last_needed[u] >= i}
        bags.append(frozenset(bag))
    return bags


def _arrangement_cost(g: Graph, order: list[int]) -> tuple[int, int]:
    bags = _bags_from_arrangement(g, order)
    sizes = [len(b) for b in bags]
    return (max(sizes), sum(sizes))


def _bfs_order(g: Graph, start: int) -> list[int]:
    order = [start]
    seen = {start}
    i = 0
    while i < len(order):
        for u in sorted(g.neighbors(order[i])):
            if u not in seen:
                seen.add(u)
                order.append(u)
        i += 1
    return order


def path_decomposition(g: Graph) -> PathDecomposition:
    """Heuristic decomposition in nice form (consecutive bags differ by one)."""
    if g.n == 0:
        return PathDecomposition(bags=())
    starts = sorted(g.vertices, key=lambda v: (g.degree(v), v))[:3]
    best_order, best_cost = None, None
    for s in starts:
        order = _bfs_order(g, s)
        if len(order) < g.n:  # disconnected: append remaining components
            rest = sorted(g.vertices - set(order))
            while rest:
                tail = _bfs_order(g.induced(frozenset(rest)), rest[0])
                order.extend(tail)
                rest = [v for v in rest if v not in set(tail)]
        cost = _arrangement_cost(g, order)
        if best_cost is None or cost < best_cost:
            best_order, best_cost = order, cost
    order = best_order
    # adjacent-swap hill climbing, a few passes
    for _ in range(3):
        improved = False
        for i in range(len(order) - 1):
            order[i], order[i + 1] = order[i + 1], order[i]
            cost = _arrangement_cost(g, order)
            if cost < best_cost:
                best_cost = cost
                improved = True
            else:
                order[i], order[i + 1] = order[i + 1], order[i]
        if not improved:
            break
    raw = _bags_from_arrangement(g, order)
    return PathDecomposition(bags=tuple(_make_nice(raw)))


def _make_nice(raw: list[frozenset[int]]) -> list[frozenset[int]]:
    nice: list[frozenset[int]] = []
    prev: frozenset[int] | None = None
    for bag in raw:
        if prev is None:
            # build the first bag one vertex at a time
            cur: frozenset[int] = frozenset()
            for v in sorted(bag):
                cur = cur | {v}
                nice.append(cur)
            prev = bag
            continue
        if bag == prev:
            continue
        cur = prev
        for v in sorted(prev - bag):
            cur = cur - {v}
            nice.append(cur)
        for v in sorted(bag - prev):
            cur = cur | {v}
            nice.append(cur)
        prev = bag
    return nice or [frozenset()]


# -- balanced separations ----------------------------------------------------


def balanced_separation(
    g: Graph, w: WeightSet, audit: bool = False
) -> Separation:
    """Separation with |mu_r(L) - mu_r(R)| <= B read off a nice decomposition.

    Scans the prefix separations (L_i, B_i, R_i); among qualifying bags the
    one with the smallest separator (ties: most balanced, then earliest) is
    returned, oriented so that mu_r(R) >= mu_r(L).
    """
    if g.n == 0:
        raise GraphError("empty graph")
    if not is_connected(g):
        raise GraphError("balanced_separation requires a connected graph")
    b_const = w.balance_constant
    if w.r[3] > b_const + 1e-12:
        raise AuditError("per-vertex weight exceeds balance constant")
    pd = path_decomposition(g)
    bags = pd.bags
    total = mu_r(g, g.vertices, w)
    left: set[int] = set()
    mu_left = 0.0
    best = None  # (|S|, |diff|, index, L, S)
    prev_diff = None
    first_l = None
    last_r = None
    for i, bag in enumerate(bags):
        mu_bag = mu_r(g, bag, w)
        mu_right = total - mu_left - mu_bag
        diff = mu_right - mu_left
        if first_l is None:
            first_l = len(left)
        if audit and prev_diff is not None and abs(diff - prev_diff) > b_const + 1e-9:
            raise AuditError("separation scan step exceeded balance constant")
        prev_diff = diff
        if abs(diff) <= b_const + 1e-12:
            key = (len(bag), abs(diff), i)
            if best is None or key < best[0]:
                best = (key, frozenset(left), frozenset(bag))
        # advance: vertices of this bag that are absent from the next move to L
        nxt = bags[i + 1] if i + 1 < len(bags) else frozenset()
        for v in bag - nxt:
            left.add(v)
            mu_left += w.r_of_degree(g.degree(v))
        last_r = g.n - len(left) - len(nxt)
    if audit:
        if first_l != 0:
            raise AuditError("scan did not start with empty L")
        if last_r is None or (bags and len(left | bags[-1]) != g.n):
            raise AuditError("scan did not end with empty R")
        if best is None:
            raise AuditError("no qualifying separation found")
    if best is None:
        raise AuditError("no qualifying separation found in the scan")
    _, L, S = best
    R = g.vertices - L - S
    sep = Separation(L=L, S=S, R=R)
    if mu_r(g, sep.L, w) > mu_r(g, sep.R, w):
        sep = sep.swap()
    if audit:
        check_separation(g, sep, "balanced_separation output")
    return sep
