"""Brute-force references used by the test suite.

These deliberately share no code with the solver: they build their own
bitmask adjacency and check independence from scratch.
"""

from __future__ import annotations

from .errors import CapExceededError
from .graph import Graph

ENUM_CAP = 20
MITM_CAP = 30
CHROMATIC_CAP = 16


def _bitmask_adjacency(g: Graph) -> tuple[list[int], list[int]]:
    """(vertex order, adjacency masks over positions in that order)."""
    order = g.vertex_list()
    pos = {v: i for i, v in enumerate(order)}
    masks = [0] * len(order)
    for v in order:
        mv = 0
        for u in g.neighbors(v):
            mv |= 1 << pos[u]
        masks[pos[v]] = mv
    return order, masks


def _independence_table(masks: list[int]) -> bytearray:
    """is_ind[X] over all subsets of the first len(masks) positions."""
    n = len(masks)
    table = bytearray(1 << n)
    table[0] = 1
    for x in range(1, 1 << n):
        low = (x & -x).bit_length() - 1
        rest = x & (x - 1)
        table[x] = table[rest] and not (masks[low] & rest)
    return table


def brute_force_ind(g: Graph, c=None) -> int:
    """Weighted independent-set count by enumeration (n <= 20) or
    meet-in-the-middle over a vertex bipartition (n <= 30)."""
    n = g.n
    if n > MITM_CAP:
        raise CapExceededError(f"oracle cap is n <= {MITM_CAP}, got {n}")
    if n == 0:
        return 1
    if n <= ENUM_CAP:
        return _ind_enumeration(g, c)
    return _ind_meet_in_middle(g, c)


def _ind_enumeration(g: Graph, c) -> int:
    order, masks = _bitmask_adjacency(g)
    n = len(order)
    table = _independence_table(masks)
    if c is None:
        return sum(table)
    cin = [c.c_in(v) for v in order]
    cout = [c.c_out(v) for v in order]
    # weight[X] = prod_{i in X} cin[i] * prod_{i not in X} cout[i]
    prod_in = [0] * (1 << n)
    prod_in[0] = 1
    total = 0
    for x in range(1, 1 << n):
        low = (x & -x).bit_length() - 1
        rest = x & (x - 1)
        prod_in[x] = prod_in[rest] * cin[low]
        if table[x]:
            p = 1
            for i in range(n):
                if not (x >> i) & 1:
                    p *= cout[i]
            total += prod_in[x] * p
    if c is not None:
        # the empty set: all vertices excluded
        p = 1
        for w in cout:
            p *= w
        total += p
    return total


def _ind_meet_in_middle(g: Graph, c) -> int:
    order, masks = _bitmask_adjacency(g)
    n = len(order)
    ha = n // 2
    hb = n - ha
    # adjacency restricted to each half, positions renumbered inside halves
    a_masks = [masks[i] & ((1 << ha) - 1) for i in range(ha)]
    b_masks = [(masks[ha + i] >> ha) & ((1 << hb) - 1) for i in range(hb)]
    cross = [(masks[i] >> ha) & ((1 << hb) - 1) for i in range(ha)]  # A pos -> B mask

    unit = c is None
    cin_a = [1] * ha if unit else [c.c_in(order[i]) for i in range(ha)]
    cout_a = [1] * ha if unit else [c.c_out(order[i]) for i in range(ha)]
    cin_b = [1] * hb if unit else [c.c_in(order[ha + i]) for i in range(hb)]
    cout_b = [1] * hb if unit else [c.c_out(order[ha + i]) for i in range(hb)]

    # u[m] = sum over independent X subset of m: prod cin(X) * prod cout(m \ X)
    u = [0] * (1 << hb)
    u[0] = 1
    for m in range(1, 1 << hb):
        low = (m & -m).bit_length() - 1
        rest = m & (m - 1)
        # low not in X
        val = cout_b[low] * u[rest]
        # low in X: drop its neighbors from rest, multiply their couts
        nb = b_masks[low] & rest
        keep = rest & ~nb
        p = cin_b[low]
        t = nb
        while t:
            j = (t & -t).bit_length() - 1
            p *= cout_b[j]
            t &= t - 1
        val += p * u[keep]
        u[m] = val

    full_b = (1 << hb) - 1
    table_a = _independence_table(a_masks)
    total = 0
    for xa in range(1 << ha):
        if not table_a[xa]:
            continue
        wa = 1
        forb = 0
        for i in range(ha):
            if (xa >> i) & 1:
                wa *= cin_a[i]
                forb |= cross[i]
            else:
                wa *= cout_a[i]
        allowed = full_b & ~forb
        wb = u[allowed]
        t = forb
        while t:
            j = (t & -t).bit_length() - 1
            wb *= cout_b[j]
            t &= t - 1
        total += wa * wb
    return total


def independence_polynomial(g: Graph) -> list[int]:
    """Counts of independent sets by size; index 0 is always 1."""
    if g.n > ENUM_CAP:
        raise CapExceededError(f"independence polynomial cap is n <= {ENUM_CAP}")
    order, masks = _bitmask_adjacency(g)
    n = len(order)
    table = _independence_table(masks)
    counts = [0] * (n + 1)
    for x in range(1 << n):
        if table[x]:
            counts[bin(x).count("1")] += 1
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return counts


def brute_force_chromatic(g: Graph) -> int:
    """Exact chromatic number via subset DP over independent-set covers."""
    n = g.n
    if n > CHROMATIC_CAP:
        raise CapExceededError(f"chromatic oracle cap is n <= {CHROMATIC_CAP}")
    if n == 0:
        return 0
    if g.m == 0:
        return 1
    order, masks = _bitmask_adjacency(g)
    table = _independence_table(masks)
    full = (1 << n) - 1
    INF = n + 1
    f = [INF] * (full + 1)
    f[0] = 0
    for mask in range(1, full + 1):
        low = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << low) & ~masks[low]
        best = INF
        # independent sets containing `low` inside `mask`
        sub = rest
        while True:
            if table[sub]:
                cand = f[mask & ~(sub | (1 << low))]
                if cand + 1 < best:
                    best = cand + 1
            if sub == 0:
                break
            sub = (sub - 1) & rest
        f[mask] = best
    return f[full]
