"""Separator-guided counting for subcubic graphs with no (3,3,3) vertex.

The routines here drive a separation (L, S, R): simplification rules drag
degree-2 separator vertices and skeleton-isolated vertices until every
separator vertex is a degree-3 vertex with two-sided skeleton structure;
branching then prefers separator vertices, with special handling for
"spider" vertices (separator vertices whose three neighbors all have
degree 2).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AuditError, InvalidInstanceError
from .graph import Graph, components, is_connected, skeleton_neighbors, walk_chain
from .measure import WeightSet, mu_r
from .separator import Separation, SpiderInfo, check_separation


def has_333_vertex(g: Graph) -> bool:
    for v in g.vertices:
        if g.degree(v) == 3 and all(g.degree(u) == 3 for u in g.neighbors(v)):
            return True
    return False


def _profile(g: Graph, v: int) -> tuple[int, ...]:
    return tuple(sorted(g.degree(u) for u in g.neighbors(v)))


def _skeleton_sides(g: Graph, sep: Separation, v: int) -> dict[str, list[int]]:
    """Skeleton endpoints of v grouped by the side they lie on."""
    sides: dict[str, list[int]] = {"L": [], "S": [], "R": []}
    for end in sorted(skeleton_neighbors(g, v)):
        sides[sep.side_of(end)].append(end)
    return sides


# -- simplify ---------------------------------------------------------------


def simplify(
    g: Graph,
    sep: Separation,
    w: WeightSet | None = None,
    audit: bool = True,
    firing_log: list | None = None,
) -> Separation:
    """Apply the separator simplification rules to a fixpoint.

    On return every separator vertex has degree 3 and has, on each side, a
    skeleton neighbor that itself has a further skeleton neighbor on that
    side.  Each rule firing preserves the no-L-R-edge invariant.
    """
    w = w or WeightSet()
    cap = max(16, g.n * g.n)
    firings = 0
    while True:
        rule = _simplify_once(g, sep, w)
        if rule is None:
            break
        name, sep = rule
        firings += 1
        if firing_log is not None:
            firing_log.append(name)
        if audit:
            check_separation(g, sep, f"simplify rule {name}")
        if firings > cap:
            raise AuditError(f"simplify exceeded {cap} rule firings")
    if audit:
        _check_claim1(g, sep)
    return sep


def _simplify_once(
    g: Graph, sep: Separation, w: WeightSet
) -> tuple[str, Separation] | None:
    L, S, R = sep.L, sep.S, sep.R
    order = sorted(S)
    for s in order:
        if not (g.neighbors(s) & L):
            return "to_R", Separation(L=L, S=S - {s}, R=R | {s})
    for s in order:
        if not (g.neighbors(s) & R):
            return "to_L", Separation(L=L | {s}, S=S - {s}, R=R)
    for s in order:
        if g.degree(s) == 2:
            return _drag_degree2(g, sep, s, w)
    for s in order:
        if g.degree(s) == 3 and _side_isolated(g, sep, s, "L"):
            return "cluster_to_R", _cluster_drag(g, sep, s, "L")
    for s in order:
        if g.degree(s) == 3 and _side_isolated(g, sep, s, "R"):
            return "cluster_to_L", _cluster_drag(g, sep, s, "R")
    return None


def _chain_candidates(
    g: Graph, sep: Separation, s: int
) -> list[tuple[int, list[int]]]:
    """Chain endpoints of a degree-2 separator vertex (stop at degree 3 or S)."""
    stop = lambda u: g.degree(u) >= 3 or u in sep.S
    out = []
    for first in sorted(g.neighbors(s)):
        end, interior = walk_chain(g, s, first, stop)
        if end is not None and end != s:
            out.append((end, interior))
    return out


def _drag_degree2(
    g: Graph, sep: Separation, s: int, w: WeightSet
) -> tuple[str, Separation]:
    L, S, R = sep.L, sep.S, sep.R
    balanced = abs(mu_r(g, R, w) - mu_r(g, L, w)) <= 2.0 * w.balance_constant
    cands = _chain_candidates(g, sep, s)
    if not cands:
        # isolated chain fragment: no separating role left for s
        return "to_R", Separation(L=L, S=S - {s}, R=R | {s})

    def pick(primary: str) -> tuple[int, list[int]] | None:
        best = None
        for end, interior in cands:
            side = sep.side_of(end)
            pref = 0 if side == primary else (1 if side == "S" else None)
            if pref is None:
                continue
            key = (pref, end)
            if best is None or key < best[0]:
                best = (key, end, interior)
        return (best[1], best[2]) if best else None

    if balanced:
        hit = pick("L") or pick("R")
        toward_l = pick("L") is not None
    else:
        hit = pick("R") or pick("L")
        toward_l = pick("R") is None
    end, interior = hit
    p = frozenset(interior)
    if toward_l:
        # s and the path toward l move right; l becomes a separator vertex
        return "drag_right", Separation(
            L=L - (p | {end}), S=(S - {s}) | {end}, R=R | p | {s}
        )
    return "drag_left", Separation(
        L=L | p | {s}, S=(S - {s}) | {end}, R=R - (p | {end})
    )


def _side_isolated(g: Graph, sep: Separation, s: int, side: str) -> bool:
    """True when no skeleton neighbor of s on `side` has further skeleton
    structure on that side."""
    member = sep.L if side == "L" else sep.R
    for end in skeleton_neighbors(g, s):
        if end in member:
            further = skeleton_neighbors(g, end)
            if any(e in member and e != s for e in further):
                return False
    return True


def _cluster_drag(g: Graph, sep: Separation, s: int, side: str) -> Separation:
    """Move s together with its `side` skeleton cluster to the other side.

    The cluster contains s's skeleton neighbors on `side`, the connecting
    2-paths, and the 2-paths from those neighbors into the separator.  A
    separator vertex of the cluster is only released to the far side when
    it has no remaining skeleton neighbor on `side`; otherwise it stays in
    S so the no-L-R-edge invariant is preserved.
    """
    member = sep.L if side == "L" else sep.R
    cluster: set[int] = set()
    anchors: set[int] = set()  # separator vertices touched by the cluster
    sk_s = skeleton_neighbors(g, s)
    for end, chains in sk_s.items():
        if end in sep.S:
            for chain in chains:
                cluster.update(chain)
            anchors.add(end)
        elif end in member:
            cluster.add(end)
            for chain in chains:
                cluster.update(chain)
            for far, far_chains in skeleton_neighbors(g, end).items():
                if far in sep.S:
                    anchors.add(far)
                    if far != s:
                        cluster.add(far)
                    for chain in far_chains:
                        cluster.update(chain)
    cluster.discard(s)
    moved_s = set()
    for a in sorted(cluster & sep.S):
        rest_side = [
            e
            for e in skeleton_neighbors(g, a)
            if e in member and e not in cluster
        ]
        if rest_side:
            cluster.discard(a)  # would strand its own chains on `side`
        else:
            moved_s.add(a)
    new_far = cluster | {s}
    if side == "L":
        return Separation(
            L=sep.L - cluster, S=(sep.S - {s}) - moved_s, R=sep.R | new_far
        )
    return Separation(
        L=sep.L | new_far, S=(sep.S - {s}) - moved_s, R=sep.R - cluster
    )


def _check_claim1(g: Graph, sep: Separation) -> None:
    for s in sorted(sep.S):
        if g.degree(s) != 3:
            raise AuditError(f"separator vertex {s} has degree {g.degree(s)} after simplify")
        for side, member in (("L", sep.L), ("R", sep.R)):
            ok = False
            for end in skeleton_neighbors(g, s):
                if end in member and any(
                    e in member and e != s for e in skeleton_neighbors(g, end)
                ):
                    ok = True
                    break
            if not ok:
                raise AuditError(f"two-sided skeleton structure missing at {s} ({side})")


# -- spider classification ----------------------------------------------------


@dataclass(frozen=True)
class SpiderClassification:
    kind: str  # "left" | "right" | "center" | "none"
    partner: int | None = None
    weight_bearer: int | None = None


def classify_spider(g: Graph, sep: Separation, s: int) -> SpiderClassification:
    """Classify one separator vertex against the spider-vertex conditions."""
    if s not in sep.S or _profile(g, s) != (2, 2, 2):
        return SpiderClassification(kind="none")
    sides = _skeleton_sides(g, sep, s)
    nl, nr, ns = sides["L"], sides["R"], sides["S"]
    if len(nl) == 2 and len(nr) == 1 and not ns:
        if _profile(g, nr[0]) == (2, 2, 2):
            return SpiderClassification(kind="left", weight_bearer=s)
    if len(nr) == 2 and len(nl) == 1 and not ns:
        if _profile(g, nl[0]) == (2, 2, 2):
            return SpiderClassification(kind="right", weight_bearer=s)
    if len(nl) == 1 and len(nr) == 1 and len(ns) == 1:
        partner = ns[0]
        if _profile(g, partner) == (2, 2, 2):
            return SpiderClassification(
                kind="center", partner=partner, weight_bearer=min(s, partner)
            )
    return SpiderClassification(kind="none")


def classify_spiders(g: Graph, sep: Separation) -> Separation:
    """Populate the spider bookkeeping of a separation."""
    info: dict[int, SpiderInfo] = {}
    for s in sorted(sep.S):
        cl = classify_spider(g, sep, s)
        if cl.kind != "none":
            info[s] = SpiderInfo(kind=cl.kind, partner=cl.partner)
    return sep.with_spiders(info)


# -- the #3IS step -------------------------------------------------------------


def three_is_step(engine, g: Graph, sep: Separation, c) -> tuple:
    """One pass of the separator-guided control flow.

    Returns an action tuple for the solve loop: ("value", int),
    ("sep", Separation), or ("branch", vertex, rule, Separation).
    """
    w = engine.weights
    audit = engine.audit
    stats = engine.stats

    if not sep.S:
        sep = engine.recompute_separation(g)
    if mu_r(g, sep.L, w) > mu_r(g, sep.R, w):
        sep = sep.swap()
        engine.fire("3is.swap")

    log: list = [] if stats is None else None
    firing_log: list = []
    sep = simplify(g, sep, w, audit=audit, firing_log=firing_log)
    engine.record_simplify(len(firing_log), g.n)
    for name in firing_log:
        engine.fire(f"simplify.{name}")

    if not sep.S:
        return ("sep", sep)

    s = max(
        sorted(sep.S),
        key=lambda v: (g.degree(v), engine.branch_score(g, v), -v),
    )

    hit = engine.lazy_two_separator(g, s)
    if hit is not None:
        return ("branch", hit.y, "3is.lazy2", sep)

    mu_l, mu_r_val = mu_r(g, sep.L, w), mu_r(g, sep.R, w)
    balanced = (mu_r_val - mu_l) <= 2.0 * w.balance_constant

    if balanced and _profile(g, s) == (2, 2, 2):
        return _spider_step(engine, s, g, sep, c)

    if not balanced:
        direct_l = g.neighbors(s) & sep.L
        direct_r = g.neighbors(s) & sep.R
        if len(direct_l) == 2 and len(direct_r) == 1:
            (r_first,) = direct_r
            stop = lambda u: g.degree(u) >= 3 or u in sep.S
            end, interior = walk_chain(g, s, r_first, stop)
            if end is not None and end != s:
                p = frozenset(interior)
                new = Separation(
                    L=sep.L | p | {s},
                    S=(sep.S - {s}) | {end},
                    R=sep.R - (p | {end}),
                )
                if audit:
                    check_separation(g, new, "imbalanced separator drag")
                engine.fire("3is.imbal_drag")
                return ("sep", new)
        sides = _skeleton_sides(g, sep, s)
        in_r = sides["R"]
        if in_r:
            empties = [
                r
                for r in in_r
                if not any(e in sep.R for e in skeleton_neighbors(g, r))
            ]
            if empties and len(in_r) == 2:
                others = [r for r in in_r if r not in empties]
                pool = others if others else empties
                r_prime = max(
                    sorted(pool),
                    key=lambda v: (len(skeleton_neighbors(g, v)), -v),
                )
                return ("branch", r_prime, "3is.imbal_branch_r", sep)

    return ("branch", s, "3is.branch_s", sep)


def _spider_step(engine, s: int, g: Graph, sep: Separation, c) -> tuple:
    """Control flow for a balanced separator vertex with (2,2,2) neighbors."""
    audit = engine.audit
    direct_r = g.neighbors(s) & sep.R
    direct_l = g.neighbors(s) & sep.L
    sides = _skeleton_sides(g, sep, s)

    if len(direct_r) == 1 and len(sides["R"]) == 1:
        r = sides["R"][0]
        if _profile(g, r) != (2, 2, 2):
            (first,) = direct_r
            end, interior = walk_chain(g, s, first, lambda u: g.degree(u) >= 3)
            p = frozenset(interior)
            new = Separation(
                L=sep.L | p | {s}, S=(sep.S | {r}) - {s}, R=sep.R - (p | {r})
            )
            if audit:
                check_separation(g, new, "spider pull toward R")
            engine.fire("spider.pull_r")
            return ("sep", new)

    if len(direct_l) == 1 and len(sides["L"]) == 1:
        left = sides["L"][0]
        if _profile(g, left) != (2, 2, 2):
            (first,) = direct_l
            end, interior = walk_chain(g, s, first, lambda u: g.degree(u) >= 3)
            p = frozenset(interior)
            new = Separation(
                L=sep.L - (p | {left}), S=(sep.S | {left}) - {s}, R=sep.R | p | {s}
            )
            if audit:
                check_separation(g, new, "spider pull toward L")
            engine.fire("spider.pull_l")
            return ("sep", new)

    if len(sides["S"]) == 1 and len(sides["L"]) == 1:
        (l,) = sides["L"]
        partners = [v for v in sorted(skeleton_neighbors(g, l)) if v != s]
        cur = sep
        for s_i in partners:
            if s_i in cur.S:
                nbr_r = g.neighbors(s_i) & cur.R
                if len(nbr_r) == 1:
                    (r_i,) = nbr_r
                    cur = Separation(
                        L=cur.L | {s_i}, S=(cur.S | {r_i}) - {s_i}, R=cur.R - {r_i}
                    )
                    if audit:
                        check_separation(g, cur, "center-pair drag")
                    engine.fire("spider.center_drag")
        return ("branch", l, "spider.center_branch_l", cur)

    return ("branch", s, "spider.branch_s", sep)
