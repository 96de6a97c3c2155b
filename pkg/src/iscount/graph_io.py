"""Reading, writing and generating graph instances.

Accepts DIMACS edge format ("p edge n m" header, "e u v" lines, 1-based)
and a plain edge list ("n m" first line, then "u v" per line, 1-based).
Generators cover a few named families plus seeded random models.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field

from .errors import GenerationError, ParseError
from .graph import Graph


def _decode(text: bytes | str) -> list[str]:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    return text.replace("\r\n", "\n").replace("\r", "\n").split("\n")


def parse_dimacs(text: bytes | str) -> Graph:
    """Parse DIMACS edge format; vertices are renumbered to 0-based ids."""
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(_decode(text), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if header is not None:
                raise ParseError("duplicate problem header", lineno, "header")
            if len(parts) != 4 or parts[1] not in ("edge", "edges", "col"):
                raise ParseError(f"malformed header {line!r}", lineno, "header")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError(f"malformed header {line!r}", lineno, "header") from None
            if header[0] < 0 or header[1] < 0:
                raise ParseError("negative counts in header", lineno, "header")
        elif parts[0] == "e":
            if header is None:
                raise ParseError("edge before header", lineno, "header")
            if len(parts) != 3:
                raise ParseError(f"malformed edge line {line!r}", lineno, "edge")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(f"malformed edge line {line!r}", lineno, "edge") from None
            n = header[0]
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"vertex index out of range in {line!r}", lineno, "range")
            if u == v:
                raise ParseError(f"self-loop at vertex {u}", lineno, "self-loop")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ParseError(f"duplicate edge {key}", lineno, "duplicate")
            seen.add(key)
            edges.append((u - 1, v - 1))
        else:
            raise ParseError(f"unrecognized line {line!r}", lineno, "unknown")
    if header is None:
        raise ParseError("missing problem header", 1, "header")
    if len(edges) != header[1]:
        raise ParseError(
            f"edge-count mismatch: header says {header[1]}, found {len(edges)}",
            1,
            "count",
        )
    return Graph.from_edges(header[0], edges)


def parse_edge_list(text: bytes | str) -> Graph:
    """Parse the plain edge-list format: first line "n m", then "u v" lines."""
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(_decode(text), start=1):
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith("c "):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two integers, got {line!r}", lineno, "edge")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"expected two integers, got {line!r}", lineno, "edge") from None
        if header is None:
            header = (a, b)
            if a < 0 or b < 0:
                raise ParseError("negative counts in first line", lineno, "header")
            continue
        n = header[0]
        if not (1 <= a <= n and 1 <= b <= n):
            raise ParseError(f"vertex index out of range in {line!r}", lineno, "range")
        if a == b:
            raise ParseError(f"self-loop at vertex {a}", lineno, "self-loop")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise ParseError(f"duplicate edge {key}", lineno, "duplicate")
        seen.add(key)
        edges.append((a - 1, b - 1))
    if header is None:
        raise ParseError("empty input", 1, "header")
    if len(edges) != header[1]:
        raise ParseError(
            f"edge-count mismatch: header says {header[1]}, found {len(edges)}",
            1,
            "count",
        )
    return Graph.from_edges(header[0], edges)


def parse_graph(text: bytes | str) -> Graph:
    """Auto-detect DIMACS vs plain edge-list by the first meaningful line."""
    for raw in _decode(text):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("#"):
            continue
        if line.startswith("p"):
            return parse_dimacs(text)
        return parse_edge_list(text)
    raise ParseError("empty input", 1, "header")


def to_dimacs(g: Graph) -> str:
    """Serialize with vertices renumbered 1..n in sorted-id order."""
    order = {v: i + 1 for i, v in enumerate(g.vertex_list())}
    lines = [f"p edge {g.n} {g.m}"]
    for u, v in g.edges():
        lines.append(f"e {order[u]} {order[v]}")
    return "\n".join(lines) + "\n"


# -- generators ----------------------------------------------------------


@dataclass(frozen=True)
class GraphSpec:
    """Deterministic description of a test graph; seed fixes all randomness."""

    kind: str  # named | gnp | random-cubic | random-subcubic
    name: str = ""
    n: int = 0
    p: float = 0.0
    seed: int = 0
    args: tuple[int, ...] = field(default_factory=tuple)
    subdivisions: int = 0
    no333: bool = False


def petersen() -> Graph:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, edges)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GenerationError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def theta_graph(a: int, b: int, c: int) -> Graph:
    """Two hubs joined by three internally disjoint paths with a, b, c interior vertices."""
    if min(a, b, c) < 1:
        raise GenerationError("theta arms need at least one interior vertex each")
    edges = []
    nxt = 2
    for arm in (a, b, c):
        prev = 0
        for _ in range(arm):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return Graph.from_edges(nxt, edges)


def gnp(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_cubic(n: int, seed: int, max_tries: int = 10_000) -> Graph:
    """Pairing model: match 3 points per vertex, reject until simple."""
    if n % 2 != 0:
        raise GenerationError("random-cubic requires even n")
    if n < 4:
        raise GenerationError("random-cubic requires n >= 4")
    rng = random.Random(seed)
    points = [v for v in range(n) for _ in range(3)]
    for _ in range(max_tries):
        rng.shuffle(points)
        ok = True
        seen: set[tuple[int, int]] = set()
        edges = []
        for i in range(0, len(points), 2):
            u, v = points[i], points[i + 1]
            if u == v:
                ok = False
                break
            key = (min(u, v), max(u, v))
            if key in seen:
                ok = False
                break
            seen.add(key)
            edges.append(key)
        if ok:
            return Graph.from_edges(n, edges)
    raise GenerationError(f"no simple cubic pairing found after {max_tries} tries")


def subdivide_edges(g: Graph, edges: list[tuple[int, int]]) -> Graph:
    """Replace each listed edge by a path through one fresh degree-2 vertex."""
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    nxt = max(adj, default=-1) + 1
    for u, v in edges:
        if v not in adj[u]:
            raise GenerationError(f"cannot subdivide missing edge ({u},{v})")
        adj[u].discard(v)
        adj[v].discard(u)
        adj[nxt] = {u, v}
        adj[u].add(nxt)
        adj[v].add(nxt)
        nxt += 1
    return Graph.from_adjacency(adj)


def random_subcubic(
    n: int, seed: int, subdivisions: int = 0, no333: bool = False
) -> Graph:
    """Random cubic core with subdivided edges.

    With ``no333`` every degree-3 vertex gets at least one subdivided
    incident edge, so no vertex keeps three degree-3 neighbors.
    """
    g = random_cubic(n, seed)
    rng = random.Random(seed ^ 0x5BD1E995)
    chosen: list[tuple[int, int]] = []
    taken: set[tuple[int, int]] = set()
    if no333:
        covered: set[int] = set()
        for v in sorted(g.vertices):
            if v in covered:
                continue
            options = sorted((min(v, u), max(v, u)) for u in g.neighbors(v))
            options = [e for e in options if e not in taken]
            e = rng.choice(options)
            taken.add(e)
            chosen.append(e)
            covered.update(e)
    pool = [e for e in g.edges() if e not in taken]
    extra = min(subdivisions, len(pool))
    if extra:
        chosen.extend(rng.sample(pool, extra))
    return subdivide_edges(g, chosen)


_NAMED = {
    "petersen": lambda args: petersen(),
    "path": lambda args: path_graph(*args),
    "cycle": lambda args: cycle_graph(*args),
    "complete": lambda args: complete_graph(*args),
    "theta": lambda args: theta_graph(*args),
}


def generate(spec: GraphSpec) -> Graph:
    if spec.kind == "named":
        fn = _NAMED.get(spec.name)
        if fn is None:
            raise GenerationError(f"unknown named graph {spec.name!r}")
        try:
            return fn(spec.args)
        except TypeError:
            raise GenerationError(
                f"bad arguments {spec.args} for named graph {spec.name!r}"
            ) from None
    if spec.kind == "gnp":
        return gnp(spec.n, spec.p, spec.seed)
    if spec.kind == "random-cubic":
        return random_cubic(spec.n, spec.seed)
    if spec.kind == "random-subcubic":
        return random_subcubic(spec.n, spec.seed, spec.subdivisions, spec.no333)
    raise GenerationError(f"unknown spec kind {spec.kind!r}")


_SPEC_RE = re.compile(r"^([a-zA-Z-]+)(?:\((.*)\))?$")


def parse_spec(text: str) -> GraphSpec:
    """Parse CLI spec strings like ``petersen``, ``cycle(7)``,
    ``gnp(12,0.3,seed=5)``, ``random-cubic(20,seed=7)``,
    ``random-subcubic(14,seed=3,subdiv=4,no333)``."""
    m = _SPEC_RE.match(text.strip())
    if not m:
        raise GenerationError(f"cannot parse graph spec {text!r}")
    head, argstr = m.group(1), m.group(2) or ""
    pos: list[str] = []
    kw: dict[str, str] = {}
    flags: set[str] = set()
    for piece in filter(None, (p.strip() for p in argstr.split(","))):
        if "=" in piece:
            k, v = piece.split("=", 1)
            kw[k.strip()] = v.strip()
        elif piece in ("no333",):
            flags.add(piece)
        else:
            pos.append(piece)
    seed = int(kw.get("seed", "0"))
    if head in _NAMED:
        return GraphSpec(kind="named", name=head, args=tuple(int(a) for a in pos))
    if head == "gnp":
        return GraphSpec(kind="gnp", n=int(pos[0]), p=float(pos[1]), seed=seed)
    if head == "random-cubic":
        return GraphSpec(kind="random-cubic", n=int(pos[0]), seed=seed)
    if head == "random-subcubic":
        return GraphSpec(
            kind="random-subcubic",
            n=int(pos[0]),
            seed=seed,
            subdivisions=int(kw.get("subdiv", "0")),
            no333="no333" in flags,
        )
    raise GenerationError(f"unknown graph spec {head!r}")
