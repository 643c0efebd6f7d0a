"""Graph representation, distance computation and vertex-set primitives.

Undirected graphs with optional bounded positive integer edge weights, in
compressed adjacency form. Distances are exact BFS / Dijkstra values stored
in int64 numpy rows; disconnected pairs get the ``UNREACHABLE`` sentinel,
which orders above every finite distance.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import EmptyRegionError, GraphFormatError

# Sentinel for "no path". Large enough to dominate every finite distance,
# small enough that sentinel + small weight never wraps int64.
UNREACHABLE: int = 1 << 62


class VertexSet:
    """Immutable vertex subset backed by a bitmask with cached cardinality."""

    __slots__ = ("n", "_bits", "_card")

    def __init__(self, n: int, bits: int = 0):
        if bits < 0 or bits >> n:
            raise ValueError("bitmask has bits outside [0, n)")
        self.n = n
        self._bits = bits
        self._card = bits.bit_count()

    @classmethod
    def from_iterable(cls, n: int, members: Iterable[int]) -> "VertexSet":
        bits = 0
        for v in members:
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} out of range [0, {n})")
            bits |= 1 << v
        return cls(n, bits)

    @classmethod
    def from_bool(cls, mask: np.ndarray) -> "VertexSet":
        packed = np.packbits(mask.astype(bool), bitorder="little").tobytes()
        return cls(len(mask), int.from_bytes(packed, "little"))

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls(n, (1 << n) - 1)

    @classmethod
    def empty(cls, n: int) -> "VertexSet":
        return cls(n, 0)

    def to_bool(self) -> np.ndarray:
        nbytes = (self.n + 7) // 8
        raw = np.frombuffer(self._bits.to_bytes(nbytes, "little"), dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little")[: self.n].astype(bool)

    @property
    def bits(self) -> int:
        return self._bits

    def __len__(self) -> int:
        return self._card

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.n and (self._bits >> v) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        # ascending vertex id
        bits = self._bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def members(self) -> list[int]:
        return list(self)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, VertexSet)
            and other.n == self.n
            and other._bits == self._bits
        )

    def __hash__(self) -> int:
        return hash((self.n, self._bits))

    def __repr__(self) -> str:
        return f"VertexSet({self.n}, {{{', '.join(map(str, self))}}})"


@dataclass(frozen=True)
class DistRow:
    """Distances from one source vertex to every vertex (UNREACHABLE = no path)."""

    source: int
    dist: np.ndarray


class Graph:
    """Immutable undirected graph; adjacency lists sorted by neighbor id.

    ``weight_bound`` (M) is 1 for unweighted graphs. Weights, when present,
    must lie in [1, M]. No self-loops, no parallel edges.
    """

    __slots__ = ("n", "m", "weight_bound", "_adj", "_wadj", "_edges", "_apsp")

    def __init__(
        self,
        n: int,
        edges: Sequence[tuple[int, int]],
        weights: Sequence[int] | None = None,
        weight_bound: int | None = None,
    ):
        if n < 1:
            raise GraphFormatError("graph needs at least one vertex")
        if weights is not None and len(weights) != len(edges):
            raise GraphFormatError("weights length must match edge count")
        seen: set[tuple[int, int]] = set()
        adj: list[list[int]] = [[] for _ in range(n)]
        wadj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        max_w = 1
        norm_edges: list[tuple[int, int, int]] = []
        for idx, (u, v) in enumerate(edges):
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u},{v}) out of range")
            if u == v:
                raise GraphFormatError(f"self-loop at {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphFormatError(f"duplicate edge ({u},{v})")
            seen.add(key)
            w = 1 if weights is None else int(weights[idx])
            if w < 1:
                raise GraphFormatError(f"non-positive weight {w} on edge ({u},{v})")
            max_w = max(max_w, w)
            norm_edges.append((key[0], key[1], w))
            adj[u].append(v)
            adj[v].append(u)
            wadj[u].append((v, w))
            wadj[v].append((u, w))
        if weight_bound is None:
            weight_bound = max_w
        if max_w > weight_bound:
            raise GraphFormatError(f"weight {max_w} exceeds declared bound {weight_bound}")
        self.n = n
        self.m = len(norm_edges)
        self.weight_bound = int(weight_bound)
        self._adj = [sorted(a) for a in adj]
        self._wadj = [sorted(a) for a in wadj]
        self._edges = sorted(norm_edges)
        self._apsp: list[np.ndarray] | None = None

    @property
    def weighted(self) -> bool:
        return self.weight_bound > 1

    def neighbors(self, u: int) -> list[int]:
        return self._adj[u]

    def edges(self) -> list[tuple[int, int, int]]:
        """Sorted (u, v, w) with u < v."""
        return list(self._edges)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, M={self.weight_bound})"


def _check_source(g: Graph, source: int) -> None:
    if not 0 <= source < g.n:
        raise ValueError(f"source {source} out of range [0, {g.n})")


def _bfs_order(g: Graph, sources: Iterable[int]) -> tuple[np.ndarray, list[int]]:
    """Unweighted multi-source BFS; returns (dist row, pop order)."""
    dist = np.full(g.n, UNREACHABLE, dtype=np.int64)
    order: list[int] = []
    queue: deque[int] = deque()
    for s in sources:
        if dist[s] != 0:
            dist[s] = 0
            queue.append(s)
    adj = g._adj
    while queue:
        u = queue.popleft()
        order.append(u)
        du = dist[u]
        for v in adj[u]:
            if dist[v] == UNREACHABLE:
                dist[v] = du + 1
                queue.append(v)
    return dist, order


def _dijkstra_order(g: Graph, sources: Iterable[int]) -> tuple[np.ndarray, list[int]]:
    """Multi-source Dijkstra; pop order is by (distance, vertex id)."""
    dist = np.full(g.n, UNREACHABLE, dtype=np.int64)
    order: list[int] = []
    heap: list[tuple[int, int]] = []
    for s in sources:
        if dist[s] != 0:
            dist[s] = 0
            heapq.heappush(heap, (0, s))
    done = np.zeros(g.n, dtype=bool)
    wadj = g._wadj
    while heap:
        du, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        order.append(u)
        for v, w in wadj[u]:
            nd = du + w
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist, order


def bfs(g: Graph, source: int) -> DistRow:
    """Unweighted single-source shortest paths."""
    _check_source(g, source)
    if g.weighted:
        raise ValueError("bfs requires an unweighted graph (M = 1); use dijkstra")
    dist, _ = _bfs_order(g, [source])
    return DistRow(source, dist)

def dijkstra(g: Graph, source: int) -> DistRow:
    """Weighted single-source shortest paths (weights >= 1)."""
    _check_source(g, source)
    dist, _ = _dijkstra_order(g, [source])
    return DistRow(source, dist)


def sssp(g: Graph, source: int) -> DistRow:
    """BFS or Dijkstra depending on whether the graph is weighted."""
    return dijkstra(g, source) if g.weighted else bfs(g, source)


def all_pairs(g: Graph) -> list[DistRow]:
    """One distance row per vertex (n single-source runs, cached on the graph)."""
    if g._apsp is None:
        runner = _dijkstra_order if g.weighted else _bfs_order
        g._apsp = [runner(g, [s])[0] for s in range(g.n)]
    return [DistRow(s, row) for s, row in enumerate(g._apsp)]


def dist_matrix(g: Graph) -> np.ndarray:
    """All-pairs distances as an (n, n) int64 matrix (row u = distances from u)."""
    all_pairs(g)
    assert g._apsp is not None
    return np.vstack(g._apsp)


def farthest_from_set(dist_to_set: np.ndarray, restrict: VertexSet) -> int:
    """Vertex of ``restrict`` maximizing its distance entry; ties -> smallest id.

    UNREACHABLE entries count as +infinity. Raises EmptyRegionError when
    ``restrict`` is empty (caller treats the region as fully covered).
    """
    if len(restrict) == 0:
        raise EmptyRegionError("restrict set is empty")
    masked = np.where(restrict.to_bool(), dist_to_set, -1)
    return int(np.argmax(masked))


def closest_p_nodes(g: Graph, w: int, p: int) -> VertexSet:
    """The min(p, #reachable) vertices nearest to ``w`` (including ``w``).

    Ties are broken by traversal pop order, so the set is downward closed
    under distance from ``w``.
    """
    _check_source(g, w)
    if p < 1:
        raise ValueError("p must be >= 1")
    runner = _dijkstra_order if g.weighted else _bfs_order
    _, order = runner(g, [w])
    return VertexSet.from_iterable(g.n, order[:p])


def multi_source_dist(g: Graph, sources: VertexSet | Iterable[int]) -> np.ndarray:
    """d(v, sources) for every v, in a single traversal."""
    srcs = list(sources)
    if not srcs:
        raise ValueError("sources must be non-empty")
    for s in srcs:
        _check_source(g, s)
    runner = _dijkstra_order if g.weighted else _bfs_order
    dist, _ = runner(g, srcs)
    return dist


def num_components(g: Graph) -> int:
    seen = np.zeros(g.n, dtype=bool)
    count = 0
    for s in range(g.n):
        if not seen[s]:
            count += 1
            dist, _ = _bfs_order(g, [s])
            seen |= dist < UNREACHABLE
    return count


def eccentricity(g: Graph, v: int) -> int:
    """Max distance from v; UNREACHABLE if the graph is disconnected."""
    return int(sssp(g, v).dist.max())


# --- text format: first line "n m [M]", then m lines "u v [w]" -------------

def write_graph(g: Graph) -> str:
    lines = []
    if g.weighted:
        lines.append(f"{g.n} {g.m} {g.weight_bound}")
        lines.extend(f"{u} {v} {w}" for u, v, w in g._edges)
    else:
        lines.append(f"{g.n} {g.m}")
        lines.extend(f"{u} {v}" for u, v, _ in g._edges)
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not rows:
        raise GraphFormatError("empty graph file")
    head = rows[0]
    if len(head) not in (2, 3):
        raise GraphFormatError("header must be 'n m [M]'")
    try:
        n, m = int(head[0]), int(head[1])
        bound = int(head[2]) if len(head) == 3 else 1
    except ValueError as exc:
        raise GraphFormatError(f"bad header: {head}") from exc
    if len(rows) - 1 != m:
        raise GraphFormatError(f"expected {m} edge lines, got {len(rows) - 1}")
    edges: list[tuple[int, int]] = []
    weights: list[int] = []
    for row in rows[1:]:
        if len(row) == 2:
            u, v = int(row[0]), int(row[1])
            w = 1
        elif len(row) == 3:
            u, v, w = int(row[0]), int(row[1]), int(row[2])
        else:
            raise GraphFormatError(f"bad edge line: {' '.join(row)}")
        edges.append((u, v))
        weights.append(w)
    return Graph(n, edges, weights if bound > 1 else None, weight_bound=bound)


def load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def save_graph(g: Graph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_graph(g))
