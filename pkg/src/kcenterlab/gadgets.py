"""Adversarial instance factory: set-cover gadget graphs and test-graph supply.

A base gadget encodes a bipartite cover instance with every edge and every
hub link stretched into an L-edge path. The recursive generator plants
nested copies whose junction paths relay coverage, yielding graphs whose
k-center radius is (2t+1)*l exactly when the source instance has a small
cover. Role tables record which vertex copies what.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import BudgetExceededError, GraphFormatError, InvalidCoverError
from .graphs import UNREACHABLE, Graph, VertexSet, multi_source_dist, num_components


@dataclass(frozen=True)
class SetCoverInstance:
    """Bipartite cover instance: pick few A-nodes adjacent to every B-node."""

    a_count: int
    b_count: int
    adjacency: tuple[tuple[int, ...], ...]  # per b: sorted adjacent a-ids

    def __post_init__(self):
        if self.a_count < 1 or self.b_count < 1:
            raise GraphFormatError("instance needs at least one node per side")
        if len(self.adjacency) != self.b_count:
            raise GraphFormatError("adjacency must list every b")
        for b, nbrs in enumerate(self.adjacency):
            if not nbrs:
                raise GraphFormatError(f"b={b} has no neighbors")
            if any(not 0 <= a < self.a_count for a in nbrs):
                raise GraphFormatError(f"b={b} lists an a-id out of range")
            if tuple(sorted(set(nbrs))) != nbrs:
                raise GraphFormatError(f"b={b} adjacency not sorted/unique")

    def edge_list(self) -> list[tuple[int, int]]:
        """(a, b) pairs in lexicographic order."""
        return sorted((a, b) for b, nbrs in enumerate(self.adjacency) for a in nbrs)

    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency)

    def is_cover(self, subset: Iterable[int]) -> bool:
        chosen = set(subset)
        return all(chosen.intersection(nbrs) for nbrs in self.adjacency)


def brute_force_min_cover(sc: SetCoverInstance, max_size: int) -> tuple[int, ...] | None:
    """Smallest cover of size <= max_size (lexicographically first), or None."""
    for size in range(1, min(max_size, sc.a_count) + 1):
        for combo in itertools.combinations(range(sc.a_count), size):
            if sc.is_cover(combo):
                return combo
    return None


@dataclass(frozen=True)
class OVInstance:
    """Binary vectors; a k-tuple is orthogonal iff some coordinate is 0 in all."""

    vectors: tuple[tuple[int, ...], ...]
    dim: int

    def __post_init__(self):
        if not self.vectors:
            raise GraphFormatError("need at least one vector")
        for vec in self.vectors:
            if len(vec) != self.dim:
                raise GraphFormatError("all vectors must share the dimension")
            if any(x not in (0, 1) for x in vec):
                raise GraphFormatError("vectors must be binary")


def ov_to_setcover(ov: OVInstance) -> SetCoverInstance:
    """A = vectors, B = coordinates, (a, i) adjacent iff a[i] = 0.

    A k-tuple of vectors is orthogonal iff it is a size-k cover.
    """
    adjacency = tuple(
        tuple(j for j, vec in enumerate(ov.vectors) if vec[i] == 0)
        for i in range(ov.dim)
    )
    return SetCoverInstance(len(ov.vectors), ov.dim, adjacency)


def power_setcover(sc: SetCoverInstance, g: int, budget: int = 10**6) -> SetCoverInstance:
    """A-side g-th power: tuples are adjacent to b iff some component is.

    The source has a size-k*g cover iff the power has a size-k cover.
    """
    if g < 1:
        raise ValueError("power must be >= 1")
    if sc.a_count**g > budget:
        raise BudgetExceededError(f"{sc.a_count}^{g} tuples exceed budget {budget}")
    if g == 1:
        return sc
    tuples = list(itertools.product(range(sc.a_count), repeat=g))
    adjacency = []
    for nbrs in sc.adjacency:
        hit = set(nbrs)
        adjacency.append(
            tuple(i for i, tup in enumerate(tuples) if any(a in hit for a in tup))
        )
    return SetCoverInstance(len(tuples), sc.b_count, tuple(adjacency))


# --------------------------------------------------------------------------
# gadget construction
# --------------------------------------------------------------------------

ROLE_KINDS = ("a_copy", "b_copy", "hub", "path", "tail")


@dataclass(frozen=True)
class Role:
    kind: str
    source: int | None = None  # a-id or b-id being copied, if any
    gadget: int | None = None


@dataclass
class _GadgetRefs:
    gadget_id: int
    a_ids: list[int]
    b_ids: list[int]
    hub: int
    edge_internals: dict[tuple[int, int], list[int]] = field(default_factory=dict)


class _Builder:
    def __init__(self, sc: SetCoverInstance):
        self.sc = sc
        self.roles: list[Role] = []
        self.edges: list[tuple[int, int]] = []
        self.gadget_count = 0

    def vertex(self, role: Role) -> int:
        self.roles.append(role)
        return len(self.roles) - 1

    def path(self, u: int, v: int, length: int, role: Role) -> list[int]:
        """Connect u, v by a ``length``-edge path of fresh internal nodes."""
        internals = [self.vertex(role) for _ in range(length - 1)]
        chain = [u, *internals, v]
        self.edges.extend(zip(chain, chain[1:]))
        return internals

    def base_gadget(self, L: int) -> _GadgetRefs:
        gid = self.gadget_count
        self.gadget_count += 1
        a_ids = [self.vertex(Role("a_copy", a, gid)) for a in range(self.sc.a_count)]
        b_ids = [self.vertex(Role("b_copy", b, gid)) for b in range(self.sc.b_count)]
        hub = self.vertex(Role("hub", None, gid))
        refs = _GadgetRefs(gid, a_ids, b_ids, hub)
        for a, b in self.sc.edge_list():
            refs.edge_internals[(a, b)] = self.path(
                a_ids[a], b_ids[b], L, Role("path", None, gid)
            )
        for a in range(self.sc.a_count):
            self.path(a_ids[a], hub, L, Role("path", None, gid))
        return refs

    def finish(self) -> tuple[Graph, list[Role]]:
        return Graph(len(self.roles), self.edges), self.roles


@dataclass(frozen=True)
class GadgetOutput:
    """Generated gadget graph plus its role table and predicted certificate."""

    graph: Graph
    roles: tuple[Role, ...]
    predicted_yes_radius: int
    center_budget: int
    construction: str  # "base" | "simple" | "recursive"
    source: SetCoverInstance

    def gadget_ids(self) -> list[int]:
        return sorted({r.gadget for r in self.roles if r.kind == "a_copy"})

    def a_copy(self, gadget: int, a: int) -> int:
        for v, role in enumerate(self.roles):
            if role.kind == "a_copy" and role.gadget == gadget and role.source == a:
                return v
        raise KeyError((gadget, a))

    def hub(self, gadget: int) -> int:
        for v, role in enumerate(self.roles):
            if role.kind == "hub" and role.gadget == gadget:
                return v
        raise KeyError(gadget)


def build_base_gadget(sc: SetCoverInstance, L: int) -> GadgetOutput:
    """Single gadget fragment: no tails, no recursion."""
    if L < 1:
        raise ValueError("L must be >= 1")
    builder = _Builder(sc)
    builder.base_gadget(L)
    graph, roles = builder.finish()
    return GadgetOutput(graph, tuple(roles), 2 * L, 0, "base", sc)


def _attach_tails(builder: _Builder, b_ids: Sequence[int], l: int) -> None:
    for b, bv in enumerate(b_ids):
        prev = bv
        for _ in range(l):
            nxt = builder.vertex(Role("tail", b, None))
            builder.edges.append((prev, nxt))
            prev = nxt


def gen_simple_lb(sc: SetCoverInstance, k: int, l: int) -> GadgetOutput:
    """One gadget at L = l with l-edge tails; yes-radius 2l, budget k."""
    if l < 1:
        raise ValueError("l must be >= 1")
    if k < 1:
        raise ValueError("k must be >= 1")
    builder = _Builder(sc)
    refs = builder.base_gadget(l)
    _attach_tails(builder, refs.b_ids, l)
    graph, roles = builder.finish()
    return GadgetOutput(graph, tuple(roles), 2 * l, k, "simple", sc)


def gen_recursive_lb(
    sc: SetCoverInstance, t: int, l: int, k: int, max_vertices: int = 2_000_000
) -> GadgetOutput:
    """Nested-gadget instance: yes-radius (2t+1)l with f(t)*(k+1) centers.

    Each level-p gadget uses path length (2t+1-p)l; every junction node at
    distance (2t+1-p-2qp)l from the A side relays to a fresh level-(2q+1)p
    gadget through a 2qpl-edge path. t=1 and t=2 reproduce the single- and
    two-gadget constructions.
    """
    if t < 1 or l < 1:
        raise ValueError("t and l must be >= 1")
    if k < 1:
        raise ValueError("k must be >= 1")
    f, _, _ = count_gadgets(t)
    approx_size = f * l * (2 * t + 1) * (sc.edge_count() + sc.a_count + sc.b_count + 1)
    if approx_size > max_vertices:
        raise BudgetExceededError(f"~{approx_size} vertices exceed cap {max_vertices}")
    builder = _Builder(sc)
    edge_pairs = sc.edge_list()

    def recurse(p: int) -> _GadgetRefs:
        refs = builder.base_gadget((2 * t + 1 - p) * l)
        for q in range(1, (2 * t - p) // (2 * p) + 1):
            sub = recurse((2 * q + 1) * p)
            for a, b in edge_pairs:
                jidx = (2 * t + 1 - p - 2 * q * p) * l  # distance from the A side
                junction = refs.edge_internals[(a, b)][jidx - 1]
                builder.path(junction, sub.b_ids[b], 2 * q * p * l, Role("path"))
        return refs

    top = recurse(1)
    _attach_tails(builder, top.b_ids, l)
    graph, roles = builder.finish()
    assert builder.gadget_count == f, "gadget count disagrees with the recurrence"
    return GadgetOutput(
        graph, tuple(roles), (2 * t + 1) * l, f * (k + 1), "recursive", sc
    )


def yes_case_centers(gout: GadgetOutput, cover: Sequence[int]) -> VertexSet:
    """Certificate centers derived from a cover of the source instance.

    Recursive builds take the cover copies plus the hub of every gadget;
    the simple (and base) builds need the cover copies only.
    """
    cov = list(dict.fromkeys(cover))
    if not gout.source.is_cover(cov):
        missing = [
            b
            for b, nbrs in enumerate(gout.source.adjacency)
            if not set(cov).intersection(nbrs)
        ]
        raise InvalidCoverError(f"cover misses b nodes {missing}")
    a_map: dict[tuple[int, int], int] = {}
    hubs: dict[int, int] = {}
    for v, role in enumerate(gout.roles):
        if role.kind == "a_copy":
            a_map[(role.gadget, role.source)] = v
        elif role.kind == "hub":
            hubs[role.gadget] = v
    centers: list[int] = []
    for gid in sorted(hubs):
        centers.extend(a_map[(gid, a)] for a in cov)
        if gout.construction == "recursive":
            centers.append(hubs[gid])
    return VertexSet.from_iterable(gout.graph.n, centers)


# --------------------------------------------------------------------------
# gadget-count recurrences
# --------------------------------------------------------------------------


def count_gadgets(t: int) -> tuple[int, list[int], list[int]]:
    """(f, g_table[0..2t], h_table[0..2t]); f = g(2t) = h(1).

    h(p) counts gadgets created by a level-p recursion; g(T) counts odd-ratio
    growth sequences 1 = p_1 | p_2 | ... | p_s <= T.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    top = 2 * t

    g_table = [0] * (top + 1)
    for T in range(1, top + 1):
        total = 1
        q = 3
        while q <= T:
            total += g_table[T // q]
            q += 2
        g_table[T] = total

    h_table = [0] * (top + 1)
    for p in range(top, 0, -1):
        if 3 * p > top:
            h_table[p] = 1
        else:
            h_table[p] = 1 + sum(
                h_table[(2 * q + 1) * p] for q in range(1, (top - p) // (2 * p) + 1)
            )

    f = g_table[top]
    assert f == h_table[1], "count recurrences disagree"
    return f, g_table, h_table


# --------------------------------------------------------------------------
# plain test-instance generators
# --------------------------------------------------------------------------


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def grid_graph(w: int, h: int) -> Graph:
    if w < 1 or h < 1:
        raise ValueError("grid needs positive dimensions")
    edges = []
    for y in range(h):
        for x in range(w):
            v = y * w + x
            if x + 1 < w:
                edges.append((v, v + 1))
            if y + 1 < h:
                edges.append((v, v + w))
    return Graph(w * h, edges)


def star_graph(leaves: int) -> Graph:
    if leaves < 1:
        raise ValueError("star needs >= 1 leaf")
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def erdos_renyi(n: int, p: float, seed: int = 0, max_retries: int = 100) -> Graph:
    """Seeded G(n, p); retries until connected, else keeps the largest component."""
    if n < 1 or not 0 <= p <= 1:
        raise ValueError("need n >= 1 and p in [0, 1]")
    rng = random.Random(seed)
    last: Graph | None = None
    for _ in range(max_retries):
        edges = [
            (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
        ]
        g = Graph(n, edges)
        last = g
        if num_components(g) == 1:
            return g
    assert last is not None
    return largest_component(last)


def largest_component(g: Graph) -> Graph:
    best: list[int] = []
    seen = [False] * g.n
    for s in range(g.n):
        if seen[s]:
            continue
        dist = multi_source_dist(g, [s])
        comp = [v for v in range(g.n) if dist[v] < UNREACHABLE]
        for v in comp:
            seen[v] = True
        if len(comp) > len(best):
            best = comp
    relabel = {v: i for i, v in enumerate(best)}
    edges = [
        (relabel[u], relabel[v], w)
        for u, v, w in g.edges()
        if u in relabel and v in relabel
    ]
    return Graph(
        len(best),
        [(u, v) for u, v, _ in edges],
        [w for _, _, w in edges] if g.weighted else None,
        weight_bound=g.weight_bound if g.weighted else None,
    )


def with_random_weights(g: Graph, bound: int, seed: int = 0) -> Graph:
    """Re-issue the graph with seeded integer weights in [1, bound]."""
    if bound < 1:
        raise ValueError("weight bound must be >= 1")
    rng = random.Random(seed)
    plain = [(u, v) for u, v, _ in g.edges()]
    weights = [rng.randint(1, bound) for _ in plain]
    return Graph(g.n, plain, weights, weight_bound=bound)


_GENERATORS = {
    "cycle": lambda params, seed: cycle_graph(int(params["n"])),
    "path": lambda params, seed: path_graph(int(params["n"])),
    "grid": lambda params, seed: grid_graph(int(params["w"]), int(params["h"])),
    "star": lambda params, seed: star_graph(int(params["n"])),
    "erdos_renyi": lambda params, seed: erdos_renyi(
        int(params["n"]), float(params["p"]), seed
    ),
}


def gen_random_graph(kind: str, seed: int = 0, **params) -> Graph:
    """Dispatch on generator kind; deterministic for a fixed (kind, params, seed)."""
    if kind not in _GENERATORS:
        raise ValueError(f"unknown kind {kind!r}; choose from {sorted(_GENERATORS)}")
    return _GENERATORS[kind](params, seed)


# --------------------------------------------------------------------------
# text formats
# --------------------------------------------------------------------------


def parse_setcover(text: str) -> SetCoverInstance:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise GraphFormatError("set-cover header must be 'a_count b_count'")
    a_count, b_count = int(rows[0][0]), int(rows[0][1])
    if len(rows) - 1 != b_count:
        raise GraphFormatError(f"expected {b_count} adjacency lines")
    adjacency = tuple(tuple(sorted(int(x) for x in row)) for row in rows[1:])
    return SetCoverInstance(a_count, b_count, adjacency)


def write_setcover(sc: SetCoverInstance) -> str:
    lines = [f"{sc.a_count} {sc.b_count}"]
    lines.extend(" ".join(map(str, nbrs)) for nbrs in sc.adjacency)
    return "\n".join(lines) + "\n"


def parse_ov(text: str) -> OVInstance:
    rows = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    head = rows[0].split()
    if len(head) != 2:
        raise GraphFormatError("vector header must be 'count d'")
    count, dim = int(head[0]), int(head[1])
    if len(rows) - 1 != count:
        raise GraphFormatError(f"expected {count} vector lines")
    vectors = []
    for row in rows[1:]:
        if len(row) != dim or any(ch not in "01" for ch in row):
            raise GraphFormatError(f"bad bitstring {row!r}")
        vectors.append(tuple(int(ch) for ch in row))
    return OVInstance(tuple(vectors), dim)


def write_ov(ov: OVInstance) -> str:
    lines = [f"{len(ov.vectors)} {ov.dim}"]
    lines.extend("".join(map(str, vec)) for vec in ov.vectors)
    return "\n".join(lines) + "\n"


def write_roles(gout: GadgetOutput) -> str:
    lines = []
    for v, role in enumerate(gout.roles):
        src = "-" if role.source is None else str(role.source)
        gid = "-" if role.gadget is None else str(role.gadget)
        lines.append(f"{v} {role.kind} {src} {gid}")
    return "\n".join(lines) + "\n"


def parse_roles(text: str) -> tuple[Role, ...]:
    roles = []
    for ln in text.splitlines():
        if not ln.strip() or ln.startswith("#"):
            continue
        v, kind, src, gid = ln.split()
        if kind not in ROLE_KINDS:
            raise GraphFormatError(f"unknown role kind {kind!r}")
        if int(v) != len(roles):
            raise GraphFormatError("role lines must be dense and in vertex order")
        roles.append(
            Role(kind, None if src == "-" else int(src), None if gid == "-" else int(gid))
        )
    return tuple(roles)


def write_manifest(gout: GadgetOutput, **extra) -> str:
    fields = {
        "yes_radius": gout.predicted_yes_radius,
        "center_budget": gout.center_budget,
        "construction": gout.construction,
        **extra,
    }
    return " ".join(f"{key}={val}" for key, val in fields.items()) + "\n"


def parse_manifest(text: str) -> dict[str, str]:
    line = text.strip().splitlines()[0]
    out = {}
    for token in line.split():
        key, _, val = token.partition("=")
        out[key] = val
    return out
